#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "flowsig/image.hpp"
#include "flowsig/zernike.hpp"

namespace flowsig {

inline constexpr int kFeatureCount = 28;

// [0] roi width, [1] roi height, [2] polygon count, [3..27] Zernike
// magnitudes in canonical index order.
using FeatureVector = std::array<double, kFeatureCount>;

enum class ClassLabel { V, X, Parallel, Other };

std::string_view to_string(ClassLabel label);
ClassLabel label_from_string(std::string_view text);  // throws ParseError

struct LabeledSample {
    std::string id;  // source frame basename, unique within a table
    ClassLabel label = ClassLabel::Other;
    FeatureVector features{};

    bool operator==(const LabeledSample&) const = default;
};

// Per-feature z-score parameters fitted over a training table.
struct Normalization {
    std::array<double, kFeatureCount> means{};
    std::array<double, kFeatureCount> stddevs{};

    bool operator==(const Normalization&) const = default;
};

FeatureVector featurize(const BinaryRoi& roi);

// Population mean/stddev per feature; near-zero variance falls back to
// stddev 1 so constant features stay inert. Throws EmptyTableError.
Normalization fit_normalization(const std::vector<LabeledSample>& samples);

FeatureVector apply_normalization(const Normalization& norm, const FeatureVector& fv);

// CSV schema: id,label,width,height,polygon_count,z0_0,...,z8_8 -- header
// mandatory, LF line endings, reals at 17 significant digits.
extern const std::string kFeatureCsvHeader;

void write_feature_csv(const std::vector<LabeledSample>& samples,
                       const std::filesystem::path& path);
std::string feature_csv_text(const std::vector<LabeledSample>& samples);
std::vector<LabeledSample> read_feature_csv(const std::filesystem::path& path);
std::vector<LabeledSample> parse_feature_csv(const std::string& text,
                                             const std::string& source_name);

// 17-significant-digit rendering used by every persisted real.
std::string format_real(double value);

}  // namespace flowsig
