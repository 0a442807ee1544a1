#pragma once

#include <string>

#include "arae/control.hpp"
#include "arae/emg.hpp"
#include "arae/scenario.hpp"

namespace arae {

/// Everything the tools need: controller parameters plus the EMG chain.
struct ToolkitConfig {
    ControllerConfig controller;
    FilterConfig filters;
};

/// Built-in defaults (the reference geometry and anthropometrics).
ToolkitConfig default_config();

/// Loads a JSON config with sections `robot`, `human`, `calibration_shoulder`,
/// `calibration_pelvis`, `torso`, `control`, `filters`. Missing sections and
/// fields keep their defaults; unknown keys are rejected. Throws
/// ParseError/ConfigError.
ToolkitConfig load_config(const std::string& path);

/// JSON form of a config (the schema `load_config` accepts).
std::string config_to_json(const ToolkitConfig& cfg);

/// Loads a synthetic scenario description (see README for the schema).
SyntheticScenario load_scenario(const std::string& path);

std::string scenario_to_json(const SyntheticScenario& scenario);

}  // namespace arae
