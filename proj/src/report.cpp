#include "prandtl/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace prandtl {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void emit_csv(const std::string& path, const std::vector<CsvColumn>& columns) {
    if (columns.empty()) throw std::invalid_argument("emit_csv: no columns");
    const std::size_t rows = columns.front().values.size();
    for (const auto& col : columns)
        if (col.values.size() != rows)
            throw std::invalid_argument("emit_csv: column length mismatch in " + col.name);

    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_csv: cannot write " + path);
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << (c ? "," : "") << columns[c].name;
    out << "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << format_double(columns[c].values[r]);
        out << "\n";
    }
    if (!out) throw std::runtime_error("emit_csv: write failure on " + path);
}

nlohmann::ordered_json RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["scenario"] = scenario;
    j["version"] = version;
    j["started_at"] = started_at;
    j["finished_at"] = finished_at;
    j["config"] = config_echo;
    j["metrics"] = metrics;
    j["files"] = files;
    j["pass"] = pass;
    if (!error.empty()) j["error"] = error;
    return j;
}

void emit_json(const RunManifest& manifest, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_json: cannot write " + path);
    out << manifest.to_json().dump(2) << "\n";
    if (!out) throw std::runtime_error("emit_json: write failure on " + path);
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace prandtl
