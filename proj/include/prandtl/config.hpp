#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace prandtl {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Validated flat key-value configuration for one scenario run. Keys use
/// section prefixes (grid.*, profile.*, ic.*, run.*, norm.*); every key of
/// the scenario schema is materialized, defaults included.
struct RunConfig {
    std::string scenario;
    std::map<std::string, std::string> values;

    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
    long get_int(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::vector<long> get_int_list(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;
};

/// Parse `key = value` lines ('#' comments) against the scenario schema.
/// Unknown keys, type mismatches, and out-of-range values are rejected with
/// the key name and line number. Environment variables PRANDTL_SECTION_KEY
/// override file values (first underscore maps to the section dot).
RunConfig parse_config(const std::string& scenario, const std::string& path);

std::vector<std::string> known_scenarios();

}  // namespace prandtl
