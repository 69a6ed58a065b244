#pragma once

#include <string>
#include <vector>

#include "bracekin/sim.hpp"

namespace bracekin {

/// Full scenario: robot, contact constraint, task path, resolution settings
/// and simulation settings, loaded from one YAML document (the robot may
/// live in a separate file referenced by path).
struct ScenarioConfig {
  BracedRobot robot;
  ConstraintSpec constraint;
  TaskPath path;
  ResolutionConfig resolution;
  SimulationOptions simulation;
};

/// Loads a robot description file. Validation failures raise ConfigError
/// with the offending line.
BracedRobot load_robot(const std::string& file);

/// Loads a scenario config file; a scalar `robot:` entry is resolved
/// relative to the config file's directory.
ScenarioConfig load_scenario(const std::string& file);

/// Re-loads `file` with the scalar at dotted `key_path` (e.g.
/// "resolution.alpha" or "path.radius") replaced by `value`.
ScenarioConfig load_scenario_with_override(const std::string& file,
                                           const std::string& key_path,
                                           const std::string& value);

std::string strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);
std::string variant_name(WrenchTransformVariant v);
WrenchTransformVariant variant_from_name(const std::string& name);

}  // namespace bracekin
