#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "flowsig/features.hpp"
#include "flowsig/imaging.hpp"

namespace flowsig {

// The two independent classification problems, one per Doppler color.
enum class Problem { BlueSignatures, RedParallel };

std::string_view to_string(Problem problem);
Problem problem_from_string(std::string_view text);  // throws ParseError

// Valid labels for a problem, in reporting order.
const std::vector<ClassLabel>& problem_labels(Problem problem);
bool label_valid_for(Problem problem, ClassLabel label);
ColorChannel problem_channel(Problem problem);

inline constexpr int kModelFormatVersion = 1;

// 1-NN memorizer: the raw training table plus the normalization fitted on it.
struct Model {
    Problem problem = Problem::BlueSignatures;
    std::vector<LabeledSample> samples;
    Normalization normalization;
    int version = kModelFormatVersion;

    bool operator==(const Model&) const = default;
};

struct Prediction {
    ClassLabel label = ClassLabel::Other;
    double distance = 0.0;     // +inf sentinel when no foreground was found
    std::string neighbor_id;   // empty for the no-foreground policy result
};

struct ConfusionMatrix {
    std::vector<ClassLabel> labels;   // row = truth, column = prediction
    std::vector<std::vector<long>> counts;

    long total() const;
    long trace() const;
    double accuracy() const;
    double recall(ClassLabel label) const;
    double precision(ClassLabel label) const;
    std::string to_text() const;
};

// Validates labels/ids and fits the normalization; no optimization loop.
Model train(std::vector<LabeledSample> samples, Problem problem);

// Nearest training sample under Euclidean distance on z-scored features;
// ties broken by lexicographically smallest sample id.
Prediction classify(const Model& model, const FeatureVector& fv);

// Whole-frame pipeline for the model's channel. Frames without usable
// foreground are Other by policy (distance +inf, empty neighbor).
Prediction classify_frame(const Model& model, const RgbFrame& frame,
                          const SegmentationConfig& cfg);

ConfusionMatrix evaluate(const Model& model, const std::vector<LabeledSample>& truth);

// JSON model files: {version, problem, normalization, samples}, reals at
// 17 significant digits.
void save_model(const Model& model, const std::filesystem::path& path);
std::string model_json_text(const Model& model);
Model load_model(const std::filesystem::path& path);
Model parse_model_json(const std::string& text, const std::string& source_name);

}  // namespace flowsig
