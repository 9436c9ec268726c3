#include "prandtl/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace prandtl {

namespace {

enum class Kind { Double, Int, Bool, String, IntList, DoubleList, Enum };

struct SchemaEntry {
    std::string key;
    std::string fallback;
    Kind kind;
    double lo;
    double hi;
    bool lo_strict;   // value must be > lo instead of >= lo
    bool hi_strict;   // value must be < hi instead of <= hi
    std::vector<std::string> allowed;  // for Kind::Enum

    SchemaEntry(std::string key, std::string fallback, Kind kind = Kind::Double,
                double lo = -1e300, double hi = 1e300, bool lo_strict = false,
                bool hi_strict = false, std::vector<std::string> allowed = {})
        : key(std::move(key)), fallback(std::move(fallback)), kind(kind), lo(lo), hi(hi),
          lo_strict(lo_strict), hi_strict(hi_strict), allowed(std::move(allowed)) {}
};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

void append_grid(std::vector<SchemaEntry>& s) {
    s.push_back({"grid.y_max", "20", Kind::Double, 0, 1e300, true});
    s.push_back({"grid.n", "256", Kind::Int, 16, 1e9});
    s.push_back({"grid.grading", "uniform", Kind::Enum, 0, 0, false, false, {"uniform", "tanh"}});
}

void append_profile(std::vector<SchemaEntry>& s) {
    s.push_back({"profile.kind", "erf", Kind::Enum, 0, 0, false, false, {"erf", "gd", "table"}});
    s.push_back({"profile.u", "1", Kind::Double, 0, 1e300, true});
    s.push_back({"profile.t0", "1", Kind::Double, 0, 1e300, true});
    s.push_back({"profile.c", "4", Kind::Double, 0, 1e300, true});
    s.push_back({"profile.table", "", Kind::String});
}

void append_crocco_ic(std::vector<SchemaEntry>& s, const std::string& section) {
    s.push_back({section + ".kind", "exp", Kind::Enum, 0, 0, false, false, {"exp", "blended", "bump"}});
    s.push_back({section + ".theta", "1", Kind::Double, 0, 1e300, true});
    s.push_back({section + ".b", "0", Kind::Double, 0, 1e300});
    s.push_back({section + ".xmod", "0", Kind::Double, 0, 1, false, true});
}

std::vector<SchemaEntry> schema_for(const std::string& scenario) {
    std::vector<SchemaEntry> s;
    s.push_back({"run.seed", "0", Kind::Int, 0, 1e18});
    if (scenario == "shear") {
        append_grid(s);
        append_profile(s);
        s.push_back({"run.t_target", "1", Kind::Double, 0, 1e300});
        s.push_back({"run.dt", "1e-3", Kind::Double, 0, 1e300, true});
    } else if (scenario == "linear") {
        append_grid(s);
        append_profile(s);
        s.push_back({"run.k", "8", Kind::Int, -1e9, 1e9});
        s.push_back({"run.t0", "0", Kind::Double, 0, 1e300});
        s.push_back({"run.t1", "1", Kind::Double, 0, 1e300});
        s.push_back({"run.dt_max", "1e-3", Kind::Double, 0, 1e300, true});
        s.push_back({"run.cfl", "0.2", Kind::Double, 0, 10, true});
        s.push_back({"run.store_every", "10", Kind::Int, 1, 1e9});
    } else if (scenario == "growth-scan") {
        append_grid(s);
        append_profile(s);
        s.push_back({"run.ks", "8,16,32,64", Kind::IntList});
        s.push_back({"run.horizon", "2", Kind::Double, 0, 1e300, true});
        s.push_back({"run.dt_max", "1e-3", Kind::Double, 0, 1e300, true});
        s.push_back({"run.cfl", "0.2", Kind::Double, 0, 10, true});
        s.push_back({"run.discard", "0.2", Kind::Double, 0, 1, false, true});
        s.push_back({"run.store_every", "10", Kind::Int, 1, 1e9});
    } else if (scenario == "amplify") {
        append_grid(s);
        append_profile(s);
        s.push_back({"run.ks", "8,16,32,64", Kind::IntList});
        s.push_back({"run.shifts", "0", Kind::DoubleList});
        s.push_back({"run.horizon", "0.25", Kind::Double, 0, 1e300, true});
        s.push_back({"run.dt_max", "5e-4", Kind::Double, 0, 1e300, true});
        s.push_back({"run.cfl", "0.1", Kind::Double, 0, 10, true});
        s.push_back({"run.shear_dt", "1e-2", Kind::Double, 0, 1e300, true});
        s.push_back({"norm.alpha", "0.25", Kind::Double, 0, 1e300});
        s.push_back({"norm.m", "2", Kind::Int, 0, 3});
    } else if (scenario == "crocco" || scenario == "stability") {
        append_grid(s);
        s.push_back({"grid.n_eta", "256", Kind::Int, 16, 1e9});
        s.push_back({"grid.n_x", "8", Kind::Int, 4, 1e9});
        append_crocco_ic(s, "ic");
        s.push_back({"outer.u", "1", Kind::Double, 0, 1e300, true});
        s.push_back({"run.t_target", "0.5", Kind::Double, 0, 1e300, true});
        s.push_back({"run.dt", "5e-4", Kind::Double, 0, 1e300, true});
        s.push_back({"run.store_every", "10", Kind::Int, 1, 1e9});
        if (scenario == "stability") {
            append_crocco_ic(s, "ic2");
            s.push_back({"norm.beta", "2.5", Kind::Double, 0, 3, false, true});
            s.push_back({"norm.k_w", "8", Kind::Double, 0, 1e300});
        }
    } else {
        throw ConfigError("unknown scenario '" + scenario + "'");
    }
    return s;
}

void validate_number(const SchemaEntry& entry, double v, int line) {
    const std::string where = line > 0 ? " (line " + std::to_string(line) + ")" : "";
    if (!std::isfinite(v)) throw ConfigError(entry.key + " must be finite" + where);
    if (entry.lo_strict ? !(v > entry.lo) : !(v >= entry.lo))
        throw ConfigError(entry.key + " must be " + (entry.lo_strict ? "> " : ">= ") +
                          std::to_string(entry.lo) + where);
    if (entry.hi_strict ? !(v < entry.hi) : !(v <= entry.hi))
        throw ConfigError(entry.key + " must be " + (entry.hi_strict ? "< " : "<= ") +
                          std::to_string(entry.hi) + where);
}

double parse_double(const SchemaEntry& entry, const std::string& raw, int line) {
    const std::string where = line > 0 ? " (line " + std::to_string(line) + ")" : "";
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(raw, &pos);
    } catch (const std::exception&) {
        throw ConfigError(entry.key + ": '" + raw + "' is not a number" + where);
    }
    if (pos != raw.size())
        throw ConfigError(entry.key + ": '" + raw + "' is not a number" + where);
    return v;
}

void validate_entry(const SchemaEntry& entry, const std::string& raw, int line) {
    const std::string where = line > 0 ? " (line " + std::to_string(line) + ")" : "";
    switch (entry.kind) {
        case Kind::Double:
            validate_number(entry, parse_double(entry, raw, line), line);
            break;
        case Kind::Int: {
            const double v = parse_double(entry, raw, line);
            if (v != std::floor(v))
                throw ConfigError(entry.key + ": '" + raw + "' is not an integer" + where);
            validate_number(entry, v, line);
            break;
        }
        case Kind::Bool:
            if (raw != "true" && raw != "false")
                throw ConfigError(entry.key + ": expected true or false" + where);
            break;
        case Kind::String:
            break;
        case Kind::IntList:
        case Kind::DoubleList: {
            std::stringstream ss(raw);
            std::string item;
            bool any = false;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (item.empty()) continue;
                const double v = parse_double(entry, item, line);
                if (entry.kind == Kind::IntList && v != std::floor(v))
                    throw ConfigError(entry.key + ": '" + item + "' is not an integer" + where);
                any = true;
            }
            if (!any) throw ConfigError(entry.key + ": empty list" + where);
            break;
        }
        case Kind::Enum: {
            if (std::find(entry.allowed.begin(), entry.allowed.end(), raw) == entry.allowed.end()) {
                std::string opts;
                for (const auto& o : entry.allowed) opts += (opts.empty() ? "" : ", ") + o;
                throw ConfigError(entry.key + ": '" + raw + "' not one of {" + opts + "}" + where);
            }
            break;
        }
    }
}

}  // namespace

const std::string& RunConfig::get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ConfigError("missing key '" + key + "'");
    return it->second;
}

double RunConfig::get_double(const std::string& key) const {
    return std::stod(get(key));
}

long RunConfig::get_int(const std::string& key) const {
    return std::lround(std::stod(get(key)));
}

bool RunConfig::get_bool(const std::string& key) const { return get(key) == "true"; }

std::vector<long> RunConfig::get_int_list(const std::string& key) const {
    std::vector<long> out;
    for (double v : get_double_list(key)) out.push_back(std::lround(v));
    return out;
}

std::vector<double> RunConfig::get_double_list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(get(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

RunConfig parse_config(const std::string& scenario, const std::string& path) {
    const std::vector<SchemaEntry> schema = schema_for(scenario);

    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);

    std::map<std::string, std::pair<std::string, int>> raw;  // key -> (value, line)
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value' at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (raw.count(key))
            throw ConfigError("duplicate key '" + key + "' at line " + std::to_string(lineno));
        raw[key] = {value, lineno};
    }

    for (const auto& [key, entry] : raw) {
        const bool known = std::any_of(schema.begin(), schema.end(),
                                       [&](const SchemaEntry& e) { return e.key == key; });
        if (!known)
            throw ConfigError("unknown key '" + key + "' at line " + std::to_string(entry.second));
    }

    RunConfig config;
    config.scenario = scenario;
    for (const SchemaEntry& entry : schema) {
        std::string value = entry.fallback;
        int line = 0;
        auto it = raw.find(entry.key);
        if (it != raw.end()) {
            value = it->second.first;
            line = it->second.second;
        }
        // environment override PRANDTL_SECTION_KEY
        std::string env_name = "PRANDTL_" + entry.key;
        for (auto& ch : env_name)
            ch = (ch == '.') ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (const char* env = std::getenv(env_name.c_str())) {
            value = env;
            line = 0;
        }
        validate_entry(entry, value, line);
        config.values[entry.key] = value;
    }
    return config;
}

std::vector<std::string> known_scenarios() {
    return {"shear", "linear", "growth-scan", "amplify", "crocco", "stability"};
}

}  // namespace prandtl
