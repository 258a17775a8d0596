#include "openlimit/commands.hpp"
#include "openlimit/config.hpp"
#include "openlimit/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct Options {
    std::string config;
    std::string preset;
    std::string out;
    std::vector<int> n;
    long long seed = -1;
    std::vector<std::string> set;
};

std::string join_ints(const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

int run(const std::string& command, const Options& o) {
    using namespace openlimit;
    if (o.config.empty() == o.preset.empty()) throw ConfigError("exactly one of --config and --preset is required");
    std::vector<std::string> overrides = o.set;
    if (!o.n.empty()) overrides.push_back("matrix.n=" + join_ints(o.n));
    if (o.seed >= 0) overrides.push_back("seed=" + std::to_string(o.seed));
    ExperimentConfig cfg = load_config(o.config.empty() ? preset_path(o.preset) : std::filesystem::path(o.config), overrides);
    if (!o.out.empty()) {
        cfg.output_dir = o.out;
    } else if (const char* env = std::getenv("OPENLIMIT_OUTPUT_DIR"); env && *env) {
        cfg.output_dir = env;
    }
    run_command(command, cfg, std::cerr);
    std::cout << cfg.output_dir.string() << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Limiting spectra of banded Toeplitz matrices"};
    app.require_subcommand(1);
    Options opts;
    std::string chosen;
    for (const std::string& name : openlimit::command_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", opts.config, "experiment JSON file");
        sub->add_option("--preset", opts.preset, "name of a bundled preset");
        sub->add_option("--out", opts.out, "output directory (overrides OPENLIMIT_OUTPUT_DIR and the config)");
        sub->add_option("--n", opts.n, "matrix sizes")->delimiter(',');
        sub->add_option("--seed", opts.seed, "random seed")->check(CLI::NonNegativeNumber);
        sub->add_option("--set", opts.set, "override a config key, e.g. --set dos.bins=200");
        sub->callback([&chosen, name] { chosen = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? openlimit::kExitOk : openlimit::kExitConfig;
    }
    try {
        return run(chosen, opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return openlimit::exit_code_for(e);
    }
}
