#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "flowsig/cli.hpp"
#include "flowsig/errors.hpp"

namespace {

// Exit codes: 0 success, 2 IO failure, 3 data error.
int exit_code_for(const flowsig::Error& e) {
    return e.kind() == "io" ? 2 : 3;
}

std::map<flowsig::ClassLabel, int> parse_counts(const std::string& text) {
    std::map<flowsig::ClassLabel, int> counts;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        const std::string item = text.substr(start, end - start);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw flowsig::ParseError("bad counts item '" + item + "' (expected LABEL=N)");
        }
        const flowsig::ClassLabel label = flowsig::label_from_string(item.substr(0, eq));
        int n;
        try {
            n = std::stoi(item.substr(eq + 1));
        } catch (...) {
            throw flowsig::ParseError("bad count in '" + item + "'");
        }
        counts[label] = n;
        if (end == text.size()) break;
        start = end + 1;
    }
    return counts;
}

struct Flags {
    std::string problem;
    std::string config;
    std::string input;
    std::string output;
    std::string model;
    std::string labels;
    std::uint64_t seed = 0;
    int min_area = 0;
    int open_radius = 0;
    std::string counts;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--problem", f.problem, "classification problem: blue or red");
    cmd->add_option("--config", f.config, "JSON config file; flags override its values");
    cmd->add_option("--input", f.input, "input directory or CSV file");
    cmd->add_option("--output", f.output, "output file or directory");
    cmd->add_option("--model", f.model, "model JSON file");
    cmd->add_option("--labels", f.labels, "labels CSV (id,label)");
    cmd->add_option("--seed", f.seed, "master seed for synthetic generation");
    cmd->add_option("--min-area", f.min_area, "minimum component area in pixels");
    cmd->add_option("--open-radius", f.open_radius, "morphological opening radius");
    cmd->add_option("--counts", f.counts, "per-class sample counts, e.g. V=20,X=12,Other=21");
}

flowsig::RunConfig resolve(const CLI::App* cmd, const Flags& f) {
    flowsig::RunConfig cfg;
    if (cmd->count("--config")) cfg = flowsig::load_run_config(f.config);
    if (cmd->count("--problem")) cfg.problem = flowsig::problem_from_string(f.problem);
    if (cmd->count("--input")) cfg.input = f.input;
    if (cmd->count("--output")) cfg.output = f.output;
    if (cmd->count("--model")) cfg.model = f.model;
    if (cmd->count("--labels")) cfg.labels = f.labels;
    if (cmd->count("--seed")) cfg.seed = f.seed;
    if (cmd->count("--min-area")) cfg.segmentation.min_component_area = f.min_area;
    if (cmd->count("--open-radius")) cfg.segmentation.open_radius = f.open_radius;
    if (cmd->count("--counts")) cfg.synth_counts = parse_counts(f.counts);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flowsig: color-Doppler flow-signature frame classification"};
    app.require_subcommand(1);

    Flags flags;
    CLI::App* extract = app.add_subcommand("extract", "segment frames into binary ROI files");
    CLI::App* featurize = app.add_subcommand("featurize", "build a feature CSV from ROI files");
    CLI::App* train = app.add_subcommand("train", "fit a 1-NN model from a feature CSV");
    CLI::App* classify = app.add_subcommand("classify", "classify a directory of frames");
    CLI::App* evaluate = app.add_subcommand("evaluate", "score a model against a truth CSV");
    CLI::App* synth = app.add_subcommand("synth", "emit a seeded synthetic ROI corpus");
    for (CLI::App* cmd : {extract, featurize, train, classify, evaluate, synth}) {
        add_common_flags(cmd, flags);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "ERROR:usage:" << e.what() << "\n";
        return 3;
    }

    try {
        if (extract->parsed()) {
            flowsig::cmd_extract(resolve(extract, flags));
        } else if (featurize->parsed()) {
            flowsig::cmd_featurize(resolve(featurize, flags));
        } else if (train->parsed()) {
            flowsig::cmd_train(resolve(train, flags));
        } else if (classify->parsed()) {
            flowsig::cmd_classify(resolve(classify, flags));
        } else if (evaluate->parsed()) {
            flowsig::cmd_evaluate(resolve(evaluate, flags));
        } else if (synth->parsed()) {
            flowsig::cmd_synth(resolve(synth, flags));
        }
    } catch (const flowsig::Error& e) {
        std::cerr << "ERROR:" << e.kind() << ":" << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "ERROR:internal:" << e.what() << "\n";
        return 3;
    }
    return 0;
}
