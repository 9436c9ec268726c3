#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "prandtl/config.hpp"
#include "prandtl/report.hpp"
#include "prandtl/scenarios.hpp"

using namespace prandtl;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "prandtl_test_reports";
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const std::string& name, const std::string& body) {
    const fs::path path = scratch_dir() / name;
    std::ofstream out(path);
    out << body;
    return path;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("format_double round-trips the binary value") {
    for (double v : {std::sqrt(M_PI), 1.0 / 3.0, -2.5e-17, 0.0, 1e300}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("emit_csv layout") {
    const fs::path path = scratch_dir() / "two_by_three.csv";
    emit_csv(path.string(), {{"a", {1.0, 2.0, 3.0}}, {"b", {4.0, 5.0, 6.0}}});
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "a,b");
    int rows = 0;
    while (std::getline(in, line)) {
        CHECK(line.find(',') != std::string::npos);
        ++rows;
    }
    CHECK(rows == 3);

    const fs::path empty = scratch_dir() / "empty.csv";
    emit_csv(empty.string(), {{"only", {}}});
    CHECK(read_file(empty) == "only\n");

    CHECK_THROWS(emit_csv((scratch_dir() / "bad.csv").string(),
                          {{"a", {1.0}}, {"b", {1.0, 2.0}}}));
    CHECK_THROWS(emit_csv("/nonexistent-dir/out.csv", {{"a", {1.0}}}));
}

TEST_CASE("parse_config materializes defaults") {
    const fs::path path = write_config("minimal_shear.cfg", "# nothing but a comment\n");
    const RunConfig config = parse_config("shear", path.string());
    CHECK(config.get("grid.grading") == "uniform");
    CHECK(config.get_double("grid.y_max") == 20.0);
    CHECK(config.get_int("grid.n") == 256);
    CHECK(config.get("profile.kind") == "erf");
    CHECK(config.get_double("run.dt") == doctest::Approx(1e-3));
    CHECK(config.values.count("run.t_target") == 1);
}

TEST_CASE("parse_config rejects bad input with key names and line numbers") {
    const fs::path unknown = write_config("unknown.cfg", "grid.n = 64\nbogus.key = 1\n");
    CHECK_THROWS_WITH_AS(parse_config("shear", unknown.string()),
                         doctest::Contains("bogus.key"), ConfigError);
    try {
        parse_config("shear", unknown.string());
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    const fs::path dup = write_config("dup.cfg", "grid.n = 64\ngrid.n = 128\n");
    CHECK_THROWS_WITH_AS(parse_config("shear", dup.string()),
                         doctest::Contains("duplicate key 'grid.n'"), ConfigError);

    const fs::path neg_dt = write_config("neg_dt.cfg", "run.dt = -1\n");
    CHECK_THROWS_WITH_AS(parse_config("shear", neg_dt.string()),
                         doctest::Contains("run.dt"), ConfigError);

    const fs::path bad_beta = write_config("bad_beta.cfg", "norm.beta = 3.5\n");
    CHECK_THROWS_WITH_AS(parse_config("stability", bad_beta.string()),
                         doctest::Contains("norm.beta"), ConfigError);

    const fs::path not_num = write_config("not_num.cfg", "grid.n = sixteen\n");
    CHECK_THROWS_AS(parse_config("shear", not_num.string()), ConfigError);

    CHECK_THROWS_AS(parse_config("shear", "/nonexistent/conf"), ConfigError);
    CHECK_THROWS_AS(parse_config("nope", write_config("empty.cfg", "").string()), ConfigError);
}

TEST_CASE("environment variables override file values") {
    const fs::path path = write_config("env.cfg", "grid.n = 64\n");
    setenv("PRANDTL_GRID_N", "128", 1);
    const RunConfig config = parse_config("shear", path.string());
    unsetenv("PRANDTL_GRID_N");
    CHECK(config.get_int("grid.n") == 128);

    setenv("PRANDTL_RUN_DT", "-1", 1);
    CHECK_THROWS_AS(parse_config("shear", path.string()), ConfigError);
    unsetenv("PRANDTL_RUN_DT");
}

TEST_CASE("run_scenario writes artifacts and captures failures") {
    const fs::path cfg = write_config("shear_run.cfg",
                                      "grid.n = 64\nrun.t_target = 0.1\nrun.dt = 1e-2\n");
    const RunConfig config = parse_config("shear", cfg.string());
    const fs::path out_dir = scratch_dir() / "shear_run";
    fs::remove_all(out_dir);

    const RunManifest manifest = run_scenario(config, out_dir.string());
    CHECK(manifest.pass);
    CHECK(manifest.error.empty());
    CHECK(fs::exists(out_dir / "profile.csv"));
    CHECK(fs::exists(out_dir / "manifest.json"));
    CHECK(manifest.metrics.contains("admissibility_C"));

    const auto parsed = nlohmann::ordered_json::parse(read_file(out_dir / "manifest.json"));
    CHECK(parsed["scenario"] == "shear");
    CHECK(parsed["pass"] == true);
    bool lists_manifest = false, lists_profile = false;
    for (const auto& f : parsed["files"]) {
        if (f == "manifest.json") lists_manifest = true;
        if (f == "profile.csv") lists_profile = true;
    }
    CHECK(lists_manifest);
    CHECK(lists_profile);

    // deterministic reruns: identical bytes
    const fs::path out_dir2 = scratch_dir() / "shear_run2";
    fs::remove_all(out_dir2);
    run_scenario(config, out_dir2.string());
    CHECK(read_file(out_dir / "profile.csv") == read_file(out_dir2 / "profile.csv"));

    // table profile without a table path: error captured in the manifest
    const fs::path bad_cfg = write_config("bad_table.cfg", "profile.kind = table\n");
    const RunConfig bad = parse_config("shear", bad_cfg.string());
    const fs::path bad_dir = scratch_dir() / "bad_table";
    fs::remove_all(bad_dir);
    const RunManifest failed = run_scenario(bad, bad_dir.string());
    CHECK_FALSE(failed.pass);
    CHECK(failed.error.find("profile.table") != std::string::npos);
    CHECK(fs::exists(bad_dir / "manifest.json"));
}

TEST_CASE("csv-only format skips the manifest file") {
    const fs::path cfg = write_config("csv_only.cfg", "grid.n = 64\nrun.dt = 1e-2\n");
    const RunConfig config = parse_config("shear", cfg.string());
    const fs::path out_dir = scratch_dir() / "csv_only";
    fs::remove_all(out_dir);
    run_scenario(config, out_dir.string(), OutputFormat::Csv);
    CHECK(fs::exists(out_dir / "profile.csv"));
    CHECK_FALSE(fs::exists(out_dir / "manifest.json"));
}

TEST_CASE("known_scenarios covers the dispatch table") {
    const auto names = known_scenarios();
    CHECK(names.size() == 6);
    for (const auto& name : names) CHECK_NOTHROW(parse_config(
        name, write_config("blank_" + name + ".cfg", "").string()));
}
