#pragma once

#include <string>

#include "skyplanner/harness.hpp"

namespace skyplanner {

/// Parses a JSON config with optional blocks "scene", "channel", "power" and
/// "experiment". Missing keys keep their defaults; unknown keys are rejected.
/// dB quantities are converted to linear ratios here.
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Full config document, including every default.
std::string config_to_json(const ExperimentConfig& config);

}  // namespace skyplanner
