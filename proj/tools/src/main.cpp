#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "itolab/errors.hpp"
#include "runners.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"itolab: stochastic-process experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir;
    unsigned workers = 0;

    for (const auto& name : itolab::cli::experiment_names()) {
        auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "seed; overrides config.seed");
        sub->add_option("--out", out_dir, "output directory; overrides config.output_dir");
        sub->add_option("--workers", workers, "worker threads, 0 = all cores");
    }
    auto* defaults = app.add_subcommand("defaults", "print the resolved default config");
    std::string defaults_for;
    defaults->add_option("experiment", defaults_for, "experiment name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (defaults->parsed()) {
            std::printf("%s\n", itolab::cli::default_config(defaults_for).dump(2).c_str());
            return 0;
        }
        auto* sub = app.get_subcommands().front();
        itolab::cli::RunOptions options;
        options.workers = workers;
        if (sub->count("--seed")) options.seed = seed;
        if (sub->count("--out")) options.out_dir = out_dir;
        const nlohmann::json config = config_path.empty() ? nlohmann::json::object()
                                                          : itolab::cli::load_config(config_path);
        const auto result = itolab::cli::run_experiment(sub->get_name(), config, options);
        std::printf("%s: %s (%s)\n", sub->get_name().c_str(), result.pass ? "pass" : "FAIL",
                    result.out_dir.c_str());
        return result.pass ? 0 : kExitFail;
    } catch (const itolab::cli::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    } catch (const itolab::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
}
