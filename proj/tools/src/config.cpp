#include "config.hpp"

#include <cmath>
#include <fstream>

namespace itolab::cli {

using nlohmann::json;

ConfigReader::ConfigReader(json config) : config_(std::move(config)) {
    if (config_.is_null()) {
        config_ = json::object();
    }
    if (!config_.is_object()) {
        throw ConfigError("config: top level must be a JSON object");
    }
}

const json* ConfigReader::lookup(const std::string& key) {
    used_.insert(key);
    const auto it = config_.find(key);
    return it == config_.end() ? nullptr : &*it;
}

void ConfigReader::fail(const std::string& key, const std::string& what) const {
    throw ConfigError("config." + key + ": " + what);
}

std::int64_t ConfigReader::integer(const std::string& key, std::int64_t fallback, std::int64_t min,
                                   std::int64_t max) {
    std::int64_t v = fallback;
    if (const json* j = lookup(key)) {
        if (!j->is_number_integer()) fail(key, "expected an integer");
        v = j->get<std::int64_t>();
    }
    if (v < min || v > max) {
        fail(key, "must be in [" + std::to_string(min) + ", " + std::to_string(max) + "], got " +
                      std::to_string(v));
    }
    resolved_[key] = v;
    return v;
}

std::uint64_t ConfigReader::seed(const std::string& key, std::uint64_t fallback) {
    std::uint64_t v = fallback;
    if (const json* j = lookup(key)) {
        if (!j->is_number_unsigned() && !(j->is_number_integer() && j->get<std::int64_t>() >= 0)) {
            fail(key, "expected a non-negative integer");
        }
        v = j->get<std::uint64_t>();
    }
    resolved_[key] = v;
    return v;
}

double ConfigReader::real(const std::string& key, double fallback, bool positive) {
    double v = fallback;
    if (const json* j = lookup(key)) {
        if (!j->is_number()) fail(key, "expected a number");
        v = j->get<double>();
    }
    if (!std::isfinite(v)) fail(key, "must be finite");
    if (positive && !(v > 0.0)) fail(key, "must be positive");
    resolved_[key] = v;
    return v;
}

std::string ConfigReader::string(const std::string& key, const std::string& fallback) {
    std::string v = fallback;
    if (const json* j = lookup(key)) {
        if (!j->is_string()) fail(key, "expected a string");
        v = j->get<std::string>();
    }
    resolved_[key] = v;
    return v;
}

std::vector<double> ConfigReader::reals(const std::string& key, const std::vector<double>& fallback) {
    std::vector<double> v = fallback;
    if (const json* j = lookup(key)) {
        if (!j->is_array()) fail(key, "expected an array of numbers");
        v.clear();
        for (const auto& e : *j) {
            if (!e.is_number()) fail(key, "expected an array of numbers");
            v.push_back(e.get<double>());
            if (!std::isfinite(v.back())) fail(key, "entries must be finite");
        }
    }
    resolved_[key] = v;
    return v;
}

std::vector<std::int64_t> ConfigReader::integers(const std::string& key,
                                                 const std::vector<std::int64_t>& fallback,
                                                 std::int64_t min) {
    std::vector<std::int64_t> v = fallback;
    if (const json* j = lookup(key)) {
        if (!j->is_array()) fail(key, "expected an array of integers");
        v.clear();
        for (const auto& e : *j) {
            if (!e.is_number_integer()) fail(key, "expected an array of integers");
            v.push_back(e.get<std::int64_t>());
        }
    }
    for (auto e : v) {
        if (e < min) fail(key, "entries must be >= " + std::to_string(min));
    }
    resolved_[key] = v;
    return v;
}

std::vector<std::string> ConfigReader::strings(const std::string& key,
                                               const std::vector<std::string>& fallback) {
    std::vector<std::string> v = fallback;
    if (const json* j = lookup(key)) {
        if (!j->is_array()) fail(key, "expected an array of strings");
        v.clear();
        for (const auto& e : *j) {
            if (!e.is_string()) fail(key, "expected an array of strings");
            v.push_back(e.get<std::string>());
        }
    }
    resolved_[key] = v;
    return v;
}

std::vector<std::vector<std::string>> ConfigReader::string_rows(
    const std::string& key, const std::vector<std::vector<std::string>>& fallback) {
    auto v = fallback;
    if (const json* j = lookup(key)) {
        if (!j->is_array()) fail(key, "expected an array of string arrays");
        v.clear();
        for (const auto& row : *j) {
            if (!row.is_array()) fail(key, "expected an array of string arrays");
            auto& out = v.emplace_back();
            for (const auto& e : row) {
                if (!e.is_string()) fail(key, "expected an array of string arrays");
                out.push_back(e.get<std::string>());
            }
        }
    }
    resolved_[key] = v;
    return v;
}

void ConfigReader::finish() const {
    for (const auto& [key, value] : config_.items()) {
        if (!used_.count(key)) {
            throw ConfigError("config." + key + ": unknown key");
        }
    }
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace itolab::cli
