#include "flowsig/features.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "flowsig/errors.hpp"
#include "flowsig/image_io.hpp"

namespace flowsig {

const std::string kFeatureCsvHeader =
    "id,label,width,height,polygon_count,"
    "z0_0,z1_1,z2_0,z2_2,z3_1,z3_3,z4_0,z4_2,z4_4,z5_1,z5_3,z5_5,"
    "z6_0,z6_2,z6_4,z6_6,z7_1,z7_3,z7_5,z7_7,z8_0,z8_2,z8_4,z8_6,z8_8";

std::string_view to_string(ClassLabel label) {
    switch (label) {
        case ClassLabel::V: return "V";
        case ClassLabel::X: return "X";
        case ClassLabel::Parallel: return "Parallel";
        case ClassLabel::Other: return "Other";
    }
    return "Other";
}

ClassLabel label_from_string(std::string_view text) {
    if (text == "V") return ClassLabel::V;
    if (text == "X") return ClassLabel::X;
    if (text == "Parallel") return ClassLabel::Parallel;
    if (text == "Other") return ClassLabel::Other;
    throw ParseError("unknown label '" + std::string(text) + "'");
}

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

FeatureVector featurize(const BinaryRoi& roi) {
    FeatureVector fv{};
    fv[0] = roi.width;
    fv[1] = roi.height;
    fv[2] = roi.polygon_count;
    const ZernikeFeatures z = zernike_feature_set(roi);
    for (int k = 0; k < kZernikeFeatureCount; ++k) fv[3 + k] = z[static_cast<std::size_t>(k)];
    return fv;
}

Normalization fit_normalization(const std::vector<LabeledSample>& samples) {
    if (samples.empty()) throw EmptyTableError("cannot fit normalization on an empty table");

    Normalization norm;
    const double n = static_cast<double>(samples.size());
    for (int f = 0; f < kFeatureCount; ++f) {
        double mean = 0.0;
        for (const LabeledSample& s : samples) mean += s.features[f];
        mean /= n;
        double var = 0.0;
        for (const LabeledSample& s : samples) {
            const double d = s.features[f] - mean;
            var += d * d;
        }
        var /= n;  // population variance: the table is the whole population
        double sd = std::sqrt(var);
        if (sd < 1e-12) sd = 1.0;
        norm.means[f] = mean;
        norm.stddevs[f] = sd;
    }
    return norm;
}

FeatureVector apply_normalization(const Normalization& norm, const FeatureVector& fv) {
    FeatureVector out;
    for (int f = 0; f < kFeatureCount; ++f) {
        out[f] = (fv[f] - norm.means[f]) / norm.stddevs[f];
    }
    return out;
}

namespace {

void check_id(const std::string& id) {
    if (id.empty()) throw ParseError("sample id must be nonempty");
    if (id.find_first_of(",\n\r") != std::string::npos) {
        throw ParseError("sample id '" + id + "' contains a CSV delimiter");
    }
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

double parse_real(const std::string& cell, int line_no, const std::string& source) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0') {
        throw ParseError(source + ": line " + std::to_string(line_no) +
                         ": bad numeric value '" + cell + "'");
    }
    return v;
}

}  // namespace

std::string feature_csv_text(const std::vector<LabeledSample>& samples) {
    std::string out = kFeatureCsvHeader;
    out += '\n';
    for (const LabeledSample& s : samples) {
        check_id(s.id);
        out += s.id;
        out += ',';
        out += to_string(s.label);
        for (int f = 0; f < kFeatureCount; ++f) {
            out += ',';
            out += format_real(s.features[f]);
        }
        out += '\n';
    }
    return out;
}

void write_feature_csv(const std::vector<LabeledSample>& samples,
                       const std::filesystem::path& path) {
    write_file_atomic(path, feature_csv_text(samples));
}

std::vector<LabeledSample> parse_feature_csv(const std::string& text,
                                             const std::string& source_name) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(source_name + ": empty file, header row is mandatory");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kFeatureCsvHeader) {
        throw ParseError(source_name + ": line 1: header does not match the feature schema");
    }

    std::vector<LabeledSample> samples;
    std::set<std::string> seen_ids;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_row(line);
        if (cells.size() != 2 + kFeatureCount) {
            throw ParseError(source_name + ": line " + std::to_string(line_no) + ": expected " +
                             std::to_string(2 + kFeatureCount) + " columns, got " +
                             std::to_string(cells.size()));
        }
        LabeledSample s;
        s.id = cells[0];
        if (s.id.empty()) {
            throw ParseError(source_name + ": line " + std::to_string(line_no) + ": empty id");
        }
        if (!seen_ids.insert(s.id).second) {
            throw ParseError(source_name + ": line " + std::to_string(line_no) +
                             ": duplicate id '" + s.id + "'");
        }
        try {
            s.label = label_from_string(cells[1]);
        } catch (const ParseError&) {
            throw ParseError(source_name + ": line " + std::to_string(line_no) +
                             ": unknown label '" + cells[1] + "'");
        }
        for (int f = 0; f < kFeatureCount; ++f) {
            s.features[f] = parse_real(cells[2 + static_cast<std::size_t>(f)], line_no, source_name);
        }
        samples.push_back(std::move(s));
    }
    return samples;
}

std::vector<LabeledSample> read_feature_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open feature CSV " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure on " + path.string());
    return parse_feature_csv(buf.str(), path.filename().string());
}

}  // namespace flowsig
