#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace prandtl {

struct CsvColumn {
    std::string name;
    std::vector<double> values;
};

/// Single header row, '.' decimal separator, scientific notation with enough
/// digits to round-trip the binary double.
void emit_csv(const std::string& path, const std::vector<CsvColumn>& columns);

std::string format_double(double v);

struct RunManifest {
    std::string scenario;
    std::map<std::string, std::string> config_echo;
    std::string version = "1.0.0";
    std::string started_at, finished_at;
    nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
    std::vector<std::string> files;  // every artifact the run wrote
    bool pass = true;
    std::string error;

    nlohmann::ordered_json to_json() const;
};

void emit_json(const RunManifest& manifest, const std::string& path);

std::string utc_timestamp();

}  // namespace prandtl
