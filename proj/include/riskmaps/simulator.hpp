#pragma once

#include "riskmaps/config.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace riskmaps {

// Scripted open-loop acceleration of a non-ego vehicle: accel applies on
// [t_begin, t_end); outside all phases the vehicle coasts.
struct ScriptPhase {
  double t_begin = 0.0;
  double t_end = 0.0;
  double accel = 0.0;
};

double script_accel(const std::vector<ScriptPhase>& script, double t);

struct VehicleSpec {
  int path_index = 0;
  double path_position = 0.0;
  double velocity = 0.0;
  double length = 4.0;
  double width = 2.0;
  std::vector<ScriptPhase> script;  // ignored for the ego (it is planned)
};

// A complete closed-loop scenario.
struct ScenarioSpec {
  std::string name;
  std::string description;
  std::string risk_class;  // "high" or "medium"
  std::vector<PathGeometry> paths;
  std::vector<VehicleSpec> vehicles;
  int ego_index = 0;
  double ego_v_desired = 10.0;
  double ground_truth_alpha = 0.5;  // default; campaigns override per driver
  double duration = 10.0;           // [s]
  double step = 0.1;                // [s]
  // Whether each driver type would want a warning in this scenario.
  std::map<std::string, bool> wants_warning;
};

// Throws std::invalid_argument on structural problems (non-positive duration
// or step, bad path indices, ego index out of range).
void validate(const ScenarioSpec& spec);

bool wants_warning_for(const ScenarioSpec& spec, const std::string& driver);

struct StepRecord {
  double t = 0.0;
  std::vector<VehicleState> vehicles;  // world snapshot at t, ego included
  double ego_acceleration = 0.0;       // planned first-step accel applied at t
  EstimationSample estimation;
  WarningRecord warning;
};

struct SimulationTrace {
  std::string scenario;
  double ground_truth_alpha = 0.5;
  double warn_alpha = 0.5;  // risk factor driving the personalized warning
  std::vector<StepRecord> steps;  // duration/step + 1 entries
};

// Scene snapshot of the current world state, as the planner sees it. Other
// vehicles carry constant-velocity predictions.
SceneSnapshot make_snapshot(const ScenarioSpec& spec,
                            const std::vector<VehicleState>& vehicles,
                            double t);

// Closed-loop run: at every step the ego re-plans with the ground-truth risk
// factor and applies the first step; estimation and both warning systems are
// evaluated on the pre-step snapshot. Scripted vehicles follow their scripts.
// Fully deterministic.
SimulationTrace run_scenario(const ScenarioSpec& spec, const EngineConfig& cfg,
                             double ground_truth_alpha, bool wants_warning,
                             std::optional<double> warn_alpha = std::nullopt);

// The four frozen benchmark scenarios: car following and intersection
// crossing, each in a high-risk and a medium-risk variant. Calibrated
// together with `calibrated_config()`.
std::vector<ScenarioSpec> builtin_scenarios();

// Lookup by name; nullopt when unknown.
std::optional<ScenarioSpec> find_builtin_scenario(const std::string& name);

}  // namespace riskmaps
