#include "flowsig/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "flowsig/errors.hpp"
#include "flowsig/image_io.hpp"
#include "flowsig/synthgen.hpp"

namespace flowsig {

namespace {

bool has_extension(const std::filesystem::path& p, std::initializer_list<const char*> exts) {
    std::string e = p.extension().string();
    std::transform(e.begin(), e.end(), e.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const char* want : exts) {
        if (e == want) return true;
    }
    return false;
}

// Directory entries with one of the given extensions, in lexicographic
// filename order so batch output is deterministic.
std::vector<std::filesystem::path> list_inputs(const std::filesystem::path& dir,
                                               std::initializer_list<const char*> exts) {
    std::error_code ec;
    std::filesystem::directory_iterator it(dir, ec);
    if (ec) throw IoError("cannot read directory " + dir.string() + ": " + ec.message());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : it) {
        if (entry.is_regular_file() && has_extension(entry.path(), exts)) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
        return a.filename().string() < b.filename().string();
    });
    return files;
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

void require_path(const std::filesystem::path& p, const char* what) {
    if (p.empty()) throw ParseError(std::string("missing ") + what + " path");
}

// Labels sidecar: header "id,label", one row per frame basename.
std::map<std::string, ClassLabel> read_labels_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open labels CSV " + path.string());
    const std::string name = path.filename().string();
    std::string line;
    if (!std::getline(in, line)) throw ParseError(name + ": empty labels file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "id,label") {
        throw ParseError(name + ": line 1: expected header 'id,label'");
    }
    std::map<std::string, ClassLabel> labels;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw ParseError(name + ": line " + std::to_string(line_no) +
                             ": expected exactly 2 columns");
        }
        const std::string id = line.substr(0, comma);
        ClassLabel label;
        try {
            label = label_from_string(line.substr(comma + 1));
        } catch (const ParseError&) {
            throw ParseError(name + ": line " + std::to_string(line_no) + ": unknown label '" +
                             line.substr(comma + 1) + "'");
        }
        if (!labels.emplace(id, label).second) {
            throw ParseError(name + ": line " + std::to_string(line_no) + ": duplicate id '" +
                             id + "'");
        }
    }
    return labels;
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& config_path) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw IoError("cannot open config file " + config_path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(config_path.filename().string() + ": " + e.what());
    }

    RunConfig cfg;
    try {
        if (doc.contains("problem")) {
            cfg.problem = problem_from_string(doc.at("problem").get<std::string>());
        }
        if (doc.contains("segmentation")) {
            const auto& seg = doc.at("segmentation");
            auto read_range = [&](const char* key, HueRange& range) {
                if (!seg.contains(key)) return;
                const auto v = seg.at(key).get<std::vector<double>>();
                if (v.size() != 2) throw ParseError(std::string(key) + " must be [lo, hi]");
                range = HueRange{v[0], v[1]};
            };
            read_range("blue_hue", cfg.segmentation.blue_hue);
            read_range("red_hue", cfg.segmentation.red_hue);
            if (seg.contains("sat_min")) cfg.segmentation.sat_min = seg.at("sat_min").get<double>();
            if (seg.contains("val_min")) cfg.segmentation.val_min = seg.at("val_min").get<double>();
            if (seg.contains("open_radius"))
                cfg.segmentation.open_radius = seg.at("open_radius").get<int>();
            if (seg.contains("min_component_area"))
                cfg.segmentation.min_component_area = seg.at("min_component_area").get<int>();
        }
        if (doc.contains("input")) cfg.input = doc.at("input").get<std::string>();
        if (doc.contains("output")) cfg.output = doc.at("output").get<std::string>();
        if (doc.contains("model")) cfg.model = doc.at("model").get<std::string>();
        if (doc.contains("labels")) cfg.labels = doc.at("labels").get<std::string>();
        if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("counts")) {
            for (const auto& [key, value] : doc.at("counts").items()) {
                cfg.synth_counts[label_from_string(key)] = value.get<int>();
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(config_path.filename().string() + ": " + e.what());
    }
    return cfg;
}

void cmd_extract(const RunConfig& cfg) {
    require_path(cfg.input, "input");
    require_path(cfg.output, "output");
    ensure_directory(cfg.output);

    const auto frames = list_inputs(cfg.input, {".png", ".ppm", ".pgm"});
    const ColorChannel channel = problem_channel(cfg.problem);
    std::string manifest = "id,roi\n";
    for (const auto& path : frames) {
        const std::string id = path.stem().string();
        const RgbFrame frame = read_frame(path);
        const auto roi = segment_frame(frame, channel, cfg.segmentation);
        if (roi) {
            const std::string roi_name = id + ".pgm";
            write_roi_pgm(*roi, cfg.output / roi_name);
            manifest += id + "," + roi_name + "\n";
        } else {
            manifest += id + ",no_foreground\n";
        }
    }
    write_file_atomic(cfg.output / "manifest.csv", manifest);
}

void cmd_featurize(const RunConfig& cfg) {
    require_path(cfg.input, "input");
    require_path(cfg.output, "output");
    require_path(cfg.labels, "labels");

    const auto labels = read_labels_csv(cfg.labels);
    auto rois = list_inputs(cfg.input, {".pgm"});
    std::sort(rois.begin(), rois.end(), [](const auto& a, const auto& b) {
        return a.stem().string() < b.stem().string();
    });

    std::vector<LabeledSample> samples;
    for (const auto& path : rois) {
        const std::string id = path.stem().string();
        const auto it = labels.find(id);
        if (it == labels.end()) {
            throw InvalidLabelError("no label for ROI '" + id + "'");
        }
        const BinaryRoi roi = read_roi_pgm(path);
        samples.push_back(LabeledSample{id, it->second, featurize(roi)});
    }
    write_feature_csv(samples, cfg.output);
}

void cmd_train(const RunConfig& cfg) {
    require_path(cfg.input, "input");
    require_path(cfg.output, "output");
    const Model model = train(read_feature_csv(cfg.input), cfg.problem);
    save_model(model, cfg.output);
}

void cmd_classify(const RunConfig& cfg) {
    require_path(cfg.input, "input");
    require_path(cfg.output, "output");
    require_path(cfg.model, "model");

    const Model model = load_model(cfg.model);
    const auto frames = list_inputs(cfg.input, {".png", ".ppm", ".pgm"});
    std::string report = "id,predicted,distance,neighbor_id\n";
    for (const auto& path : frames) {
        const std::string id = path.stem().string();
        const RgbFrame frame = read_frame(path);
        const Prediction p = classify_frame(model, frame, cfg.segmentation);
        report += id + "," + std::string(to_string(p.label)) + "," + format_real(p.distance) +
                  "," + p.neighbor_id + "\n";
    }
    write_file_atomic(cfg.output, report);
}

void cmd_evaluate(const RunConfig& cfg, std::string* summary_out) {
    require_path(cfg.input, "input");
    require_path(cfg.model, "model");

    const Model model = load_model(cfg.model);
    const std::vector<LabeledSample> truth = read_feature_csv(cfg.input);
    const ConfusionMatrix cm = evaluate(model, truth);

    if (!cfg.output.empty()) {
        std::string report = "id,truth,predicted,distance,neighbor_id\n";
        for (const LabeledSample& s : truth) {
            const Prediction p = classify(model, s.features);
            report += s.id + "," + std::string(to_string(s.label)) + "," +
                      std::string(to_string(p.label)) + "," + format_real(p.distance) + "," +
                      p.neighbor_id + "\n";
        }
        write_file_atomic(cfg.output, report);
    }

    const std::string summary = cm.to_text();
    if (summary_out) {
        *summary_out = summary;
    } else {
        std::cout << summary;
    }
}

void cmd_synth(const RunConfig& cfg) {
    require_path(cfg.output, "output");
    if (cfg.synth_counts.empty()) {
        throw ParseError("synth requires per-class counts (--counts)");
    }
    ensure_directory(cfg.output);

    auto corpus = generate_corpus(cfg.synth_counts, cfg.problem, cfg.seed);
    // Rows ordered by id, matching the featurize contract.
    std::sort(corpus.begin(), corpus.end(),
              [](const SynthSample& a, const SynthSample& b) { return a.sample.id < b.sample.id; });
    std::string labels = "id,label\n";
    std::vector<LabeledSample> samples;
    for (const SynthSample& s : corpus) {
        write_roi_pgm(s.roi, cfg.output / (s.sample.id + ".pgm"));
        labels += s.sample.id + "," + std::string(to_string(s.sample.label)) + "\n";
        samples.push_back(s.sample);
    }
    write_file_atomic(cfg.output / "labels.csv", labels);
    write_feature_csv(samples, cfg.output / "features.csv");
}

}  // namespace flowsig
