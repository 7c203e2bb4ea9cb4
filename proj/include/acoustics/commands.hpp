#pragma once

#include <string>

#include <json.hpp>

#include "acoustics/config.hpp"
#include "acoustics/study.hpp"

namespace acoustics {

/// Subcommand drivers behind the CLI. Each writes its artifacts under
/// out_dir (created if needed) plus a summary.json, fills `summary`, and
/// returns the process exit code: 0 pass, 1 contract failure.
int cmd_simulate(const RunConfig& c, const std::string& out_dir, nlohmann::json& summary);
int cmd_limit_study(const RunConfig& c, const std::string& out_dir, nlohmann::json& summary);
int cmd_hierarchy(const RunConfig& c, const std::string& out_dir, nlohmann::json& summary);
int cmd_constants(const RunConfig& c, const std::string& out_dir, unsigned seed,
                  nlohmann::json& summary);
int cmd_mms(const RunConfig& c, const std::string& out_dir, nlohmann::json& summary);
int cmd_check_consistency(const RunConfig& c, const std::string& out_dir,
                          nlohmann::json& summary);

}  // namespace acoustics
