#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace itolab::cli {

// Bad config, bad flag or unwritable output. Message names the field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Typed access to one JSON config object.
///
/// Every getter records the value it returns (the default when the key is
/// absent) in resolved(), which is what meta.json echoes. finish() rejects
/// keys no getter asked for.
class ConfigReader {
public:
    explicit ConfigReader(nlohmann::json config);

    std::int64_t integer(const std::string& key, std::int64_t fallback, std::int64_t min,
                         std::int64_t max = INT64_MAX);
    std::uint64_t seed(const std::string& key, std::uint64_t fallback);
    double real(const std::string& key, double fallback, bool positive = false);
    std::string string(const std::string& key, const std::string& fallback);
    std::vector<double> reals(const std::string& key, const std::vector<double>& fallback);
    std::vector<std::int64_t> integers(const std::string& key,
                                       const std::vector<std::int64_t>& fallback, std::int64_t min);
    std::vector<std::string> strings(const std::string& key,
                                     const std::vector<std::string>& fallback);
    std::vector<std::vector<std::string>> string_rows(
        const std::string& key, const std::vector<std::vector<std::string>>& fallback);

    // Overrides a value after reading (CLI flags).
    void set(const std::string& key, nlohmann::json value) { resolved_[key] = std::move(value); }

    void finish() const;
    const nlohmann::json& resolved() const noexcept { return resolved_; }

private:
    const nlohmann::json* lookup(const std::string& key);
    [[noreturn]] void fail(const std::string& key, const std::string& what) const;

    nlohmann::json config_;
    nlohmann::json resolved_ = nlohmann::json::object();
    std::set<std::string> used_;
};

nlohmann::json load_config(const std::string& path);

}  // namespace itolab::cli
