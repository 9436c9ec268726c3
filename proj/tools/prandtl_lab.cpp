#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "prandtl/config.hpp"
#include "prandtl/scenarios.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Prandtl boundary-layer laboratory"};

    std::string scenario, config_path, out_dir, format_str = "both";
    app.add_option("scenario", scenario, "one of: shear, linear, growth-scan, amplify, crocco, stability")
        ->required();
    app.add_option("--config", config_path, "key = value configuration file")->required();
    app.add_option("--out", out_dir, "output directory")->required();
    app.add_option("--format", format_str, "csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}));

    CLI11_PARSE(app, argc, argv);

    prandtl::OutputFormat format = prandtl::OutputFormat::Both;
    if (format_str == "csv") format = prandtl::OutputFormat::Csv;
    if (format_str == "json") format = prandtl::OutputFormat::Json;

    try {
        const prandtl::RunConfig config = prandtl::parse_config(scenario, config_path);
        const prandtl::RunManifest manifest = prandtl::run_scenario(config, out_dir, format);
        if (!manifest.pass) {
            std::fprintf(stderr, "FAIL: %s\n",
                         manifest.error.empty() ? "scenario reported failure"
                                                : manifest.error.c_str());
            return 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
