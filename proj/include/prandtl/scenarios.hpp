#pragma once

#include <string>

#include "prandtl/config.hpp"
#include "prandtl/report.hpp"

namespace prandtl {

enum class OutputFormat { Csv, Json, Both };

/// Dispatch one validated config to its module, archive results under
/// out_dir, and return the manifest. Module errors are captured into the
/// manifest (pass = false) rather than thrown.
RunManifest run_scenario(const RunConfig& config, const std::string& out_dir,
                         OutputFormat format = OutputFormat::Both);

}  // namespace prandtl
