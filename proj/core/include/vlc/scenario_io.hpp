#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "vlc/scenario.hpp"

namespace vlc {

// Scenario files are JSON documents whose sections mirror ScenarioConfig:
// "room", "fixtures" (array), "receiver", "modulation_bandwidth", "noise".
// Missing keys take the defaults of the corresponding struct. All values
// are SI (m, W, A, Hz, K) except angles, which are in degrees.

nlohmann::json to_json(const ScenarioConfig& config);
ScenarioConfig scenario_from_json(const nlohmann::json& doc);

/// Throws ConfigError when the file is missing or malformed.
ScenarioConfig load_scenario(const std::filesystem::path& path);
void save_scenario(const ScenarioConfig& config, const std::filesystem::path& path);

}  // namespace vlc
