#include "flowsig/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "flowsig/errors.hpp"
#include "flowsig/image_io.hpp"

namespace flowsig {

std::string_view to_string(Problem problem) {
    return problem == Problem::BlueSignatures ? "blue" : "red";
}

Problem problem_from_string(std::string_view text) {
    if (text == "blue") return Problem::BlueSignatures;
    if (text == "red") return Problem::RedParallel;
    throw ParseError("unknown problem '" + std::string(text) + "' (expected blue or red)");
}

const std::vector<ClassLabel>& problem_labels(Problem problem) {
    static const std::vector<ClassLabel> blue{ClassLabel::V, ClassLabel::X, ClassLabel::Other};
    static const std::vector<ClassLabel> red{ClassLabel::Parallel, ClassLabel::Other};
    return problem == Problem::BlueSignatures ? blue : red;
}

bool label_valid_for(Problem problem, ClassLabel label) {
    const auto& labels = problem_labels(problem);
    return std::find(labels.begin(), labels.end(), label) != labels.end();
}

ColorChannel problem_channel(Problem problem) {
    return problem == Problem::BlueSignatures ? ColorChannel::Blue : ColorChannel::Red;
}

Model train(std::vector<LabeledSample> samples, Problem problem) {
    if (samples.empty()) throw EmptyTableError("training table is empty");
    std::set<std::string> ids;
    for (const LabeledSample& s : samples) {
        if (!label_valid_for(problem, s.label)) {
            throw InvalidLabelError("sample '" + s.id + "' has label " +
                                    std::string(to_string(s.label)) +
                                    ", invalid for problem " + std::string(to_string(problem)));
        }
        if (!ids.insert(s.id).second) {
            throw InvalidLabelError("duplicate sample id '" + s.id + "'");
        }
    }
    Model model;
    model.problem = problem;
    model.normalization = fit_normalization(samples);
    model.samples = std::move(samples);
    return model;
}

Prediction classify(const Model& model, const FeatureVector& fv) {
    const FeatureVector q = apply_normalization(model.normalization, fv);
    double best_d2 = std::numeric_limits<double>::infinity();
    const LabeledSample* best = nullptr;
    for (const LabeledSample& s : model.samples) {
        const FeatureVector t = apply_normalization(model.normalization, s.features);
        double d2 = 0.0;
        for (int f = 0; f < kFeatureCount; ++f) {
            const double d = q[f] - t[f];
            d2 += d * d;
        }
        if (d2 < best_d2 || (d2 == best_d2 && best && s.id < best->id)) {
            best_d2 = d2;
            best = &s;
        }
    }
    return Prediction{best->label, std::sqrt(best_d2), best->id};
}

Prediction classify_frame(const Model& model, const RgbFrame& frame,
                          const SegmentationConfig& cfg) {
    const auto roi = segment_frame(frame, problem_channel(model.problem), cfg);
    if (!roi) {
        // No colored signature present: Other by policy.
        return Prediction{ClassLabel::Other, std::numeric_limits<double>::infinity(), ""};
    }
    return classify(model, featurize(*roi));
}

long ConfusionMatrix::total() const {
    long t = 0;
    for (const auto& row : counts)
        for (long c : row) t += c;
    return t;
}

long ConfusionMatrix::trace() const {
    long t = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
    return t;
}

double ConfusionMatrix::accuracy() const {
    const long t = total();
    return t > 0 ? static_cast<double>(trace()) / static_cast<double>(t) : 0.0;
}

namespace {

std::size_t label_index(const std::vector<ClassLabel>& labels, ClassLabel label) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw InvalidLabelError("label not in confusion matrix");
    return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

double ConfusionMatrix::recall(ClassLabel label) const {
    const std::size_t i = label_index(labels, label);
    long row = 0;
    for (long c : counts[i]) row += c;
    return row > 0 ? static_cast<double>(counts[i][i]) / static_cast<double>(row) : 0.0;
}

double ConfusionMatrix::precision(ClassLabel label) const {
    const std::size_t j = label_index(labels, label);
    long col = 0;
    for (const auto& row : counts) col += row[j];
    return col > 0 ? static_cast<double>(counts[j][j]) / static_cast<double>(col) : 0.0;
}

std::string ConfusionMatrix::to_text() const {
    std::ostringstream out;
    out << "confusion matrix (rows = truth, columns = predicted)\n";
    out << "          ";
    for (ClassLabel l : labels) {
        out << ' ' << std::string(9 - std::min<std::size_t>(9, to_string(l).size()), ' ')
            << to_string(l);
    }
    out << '\n';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const std::string name(to_string(labels[i]));
        out << name << std::string(10 - std::min<std::size_t>(10, name.size()), ' ');
        for (std::size_t j = 0; j < labels.size(); ++j) {
            std::string cell = std::to_string(counts[i][j]);
            out << ' ' << std::string(9 - std::min<std::size_t>(9, cell.size()), ' ') << cell;
        }
        out << '\n';
    }
    char buf[64];
    for (ClassLabel l : labels) {
        std::snprintf(buf, sizeof(buf), "%-9s recall %.4f  precision %.4f\n",
                      std::string(to_string(l)).c_str(), recall(l), precision(l));
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "accuracy %.4f (%ld/%ld)\n", accuracy(), trace(), total());
    out << buf;
    return out.str();
}

ConfusionMatrix evaluate(const Model& model, const std::vector<LabeledSample>& truth) {
    if (truth.empty()) throw EmptyTableError("evaluation table is empty");
    ConfusionMatrix cm;
    cm.labels = problem_labels(model.problem);
    cm.counts.assign(cm.labels.size(), std::vector<long>(cm.labels.size(), 0));
    for (const LabeledSample& s : truth) {
        if (!label_valid_for(model.problem, s.label)) {
            throw InvalidLabelError("truth sample '" + s.id + "' has label " +
                                    std::string(to_string(s.label)) +
                                    ", invalid for problem " +
                                    std::string(to_string(model.problem)));
        }
        const Prediction p = classify(model, s.features);
        cm.counts[label_index(cm.labels, s.label)][label_index(cm.labels, p.label)] += 1;
    }
    return cm;
}

namespace {

void append_real_array(std::string& out, const double* values, std::size_t count) {
    out += '[';
    for (std::size_t i = 0; i < count; ++i) {
        // Strict JSON cannot carry inf/nan.
        if (!std::isfinite(values[i])) {
            throw ParseError("non-finite value cannot be serialized to a model file");
        }
        if (i) out += ", ";
        out += format_real(values[i]);
    }
    out += ']';
}

}  // namespace

std::string model_json_text(const Model& model) {
    std::string out;
    out += "{\n";
    out += "  \"version\": " + std::to_string(model.version) + ",\n";
    out += "  \"problem\": \"" + std::string(to_string(model.problem)) + "\",\n";
    out += "  \"normalization\": {\n    \"means\": ";
    append_real_array(out, model.normalization.means.data(), kFeatureCount);
    out += ",\n    \"stddevs\": ";
    append_real_array(out, model.normalization.stddevs.data(), kFeatureCount);
    out += "\n  },\n";
    out += "  \"samples\": [\n";
    for (std::size_t i = 0; i < model.samples.size(); ++i) {
        const LabeledSample& s = model.samples[i];
        out += "    {\"id\": \"" + s.id + "\", \"label\": \"" +
               std::string(to_string(s.label)) + "\", \"features\": ";
        append_real_array(out, s.features.data(), kFeatureCount);
        out += i + 1 < model.samples.size() ? "},\n" : "}\n";
    }
    out += "  ]\n";
    out += "}\n";
    return out;
}

void save_model(const Model& model, const std::filesystem::path& path) {
    for (const LabeledSample& s : model.samples) {
        if (s.id.find_first_of("\"\\\n\r") != std::string::npos) {
            throw ParseError("sample id '" + s.id + "' contains characters unsupported in model files");
        }
    }
    write_file_atomic(path, model_json_text(model));
}

Model parse_model_json(const std::string& text, const std::string& source_name) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source_name + ": " + e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("version")) {
            throw ParseError(source_name + ": missing version field");
        }
        const int version = doc.at("version").get<int>();
        if (version != kModelFormatVersion) {
            throw VersionMismatchError(source_name + ": model format version " +
                                       std::to_string(version) + " unsupported (expected " +
                                       std::to_string(kModelFormatVersion) + ")");
        }
        Model model;
        model.version = version;
        model.problem = problem_from_string(doc.at("problem").get<std::string>());
        const auto& norm = doc.at("normalization");
        const auto means = norm.at("means").get<std::vector<double>>();
        const auto stddevs = norm.at("stddevs").get<std::vector<double>>();
        if (means.size() != kFeatureCount || stddevs.size() != kFeatureCount) {
            throw ParseError(source_name + ": normalization arrays must have " +
                             std::to_string(kFeatureCount) + " entries");
        }
        std::copy(means.begin(), means.end(), model.normalization.means.begin());
        std::copy(stddevs.begin(), stddevs.end(), model.normalization.stddevs.begin());
        for (const auto& js : doc.at("samples")) {
            LabeledSample s;
            s.id = js.at("id").get<std::string>();
            s.label = label_from_string(js.at("label").get<std::string>());
            const auto features = js.at("features").get<std::vector<double>>();
            if (features.size() != kFeatureCount) {
                throw ParseError(source_name + ": sample '" + s.id + "' must have " +
                                 std::to_string(kFeatureCount) + " features");
            }
            std::copy(features.begin(), features.end(), s.features.begin());
            if (!label_valid_for(model.problem, s.label)) {
                throw InvalidLabelError(source_name + ": sample '" + s.id +
                                        "' has label invalid for problem " +
                                        std::string(to_string(model.problem)));
            }
            model.samples.push_back(std::move(s));
        }
        if (model.samples.empty()) {
            throw EmptyTableError(source_name + ": model has no samples");
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source_name + ": " + e.what());
    }
}

Model load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure on " + path.string());
    return parse_model_json(buf.str(), path.filename().string());
}

}  // namespace flowsig
