#pragma once

// Scenario files are YAML. See docs/scenario_format.md for the schema.

#include <filesystem>
#include <stdexcept>
#include <string>

#include "hotlane/domain.hpp"

namespace hotlane::io {

/// Malformed file: unreadable, bad YAML, missing or unknown keys, wrong types.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ScenarioConfig parse_scenario(const std::string& yaml_text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Emits every numeric field in shortest round-trip form, so
/// parse_scenario(format_scenario(cfg)) reproduces cfg exactly.
std::string format_scenario(const ScenarioConfig& cfg);
void save_scenario(const ScenarioConfig& cfg, const std::filesystem::path& path);

}  // namespace hotlane::io
