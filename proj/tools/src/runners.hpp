#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace itolab::cli {

struct RunOptions {
    std::optional<std::uint64_t> seed;     // overrides config.seed
    std::optional<std::string> out_dir;    // overrides config.output_dir
    unsigned workers = 0;                  // never changes outputs
};

struct RunResult {
    bool pass = true;
    nlohmann::json metrics = nlohmann::json::object();
    std::vector<std::string> files;  // written, relative to the output directory
    std::string out_dir;
};

const std::vector<std::string>& experiment_names();

// Validates the config, runs the experiment and writes its outputs plus
// meta.json. Throws ConfigError for bad input or unwritable output.
RunResult run_experiment(const std::string& name, const nlohmann::json& config,
                         const RunOptions& options);

// Resolved config (all defaults filled) for an otherwise empty config.
nlohmann::json default_config(const std::string& name);

}  // namespace itolab::cli
