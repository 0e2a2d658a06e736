#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "flowsig/classifier.hpp"
#include "flowsig/imaging.hpp"

namespace flowsig {

// Resolved options for one batch command. A JSON config file mirrors this
// structure; command-line flags override config-file values.
struct RunConfig {
    SegmentationConfig segmentation;
    Problem problem = Problem::BlueSignatures;
    std::filesystem::path input;   // frame/ROI directory or CSV, per command
    std::filesystem::path output;  // file or directory, per command
    std::filesystem::path model;
    std::filesystem::path labels;
    std::uint64_t seed = 0;
    std::map<ClassLabel, int> synth_counts;
};

// Applies config-file values underneath already-parsed flag values; returns
// the merged config. Throws ParseError / IoError.
RunConfig load_run_config(const std::filesystem::path& config_path);

// Command entry points. They throw flowsig errors; the CLI front end maps
// kinds to exit codes (io -> 2, data errors -> 3).
void cmd_extract(const RunConfig& cfg);
void cmd_featurize(const RunConfig& cfg);
void cmd_train(const RunConfig& cfg);
void cmd_classify(const RunConfig& cfg);
void cmd_evaluate(const RunConfig& cfg, std::string* summary_out = nullptr);
void cmd_synth(const RunConfig& cfg);

}  // namespace flowsig
