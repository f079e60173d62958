#pragma once

#include "riskmaps/risk.hpp"

#include <string>
#include <vector>

namespace riskmaps {

// Sampling behavior planner over a fixed grid of constant-acceleration
// candidates.
struct PlannerConfig {
  std::vector<double> accel_grid{-8.0, -6.0, -4.0, -3.0, -2.0, -1.0,
                                 -0.5, 0.0,  0.5,  1.0,  2.0,  3.0};
  std::vector<double> duration_grid{1.0, 2.0, 3.0, 4.0};
  double k_u = 0.02;  // utility gain (progress toward desired speed)
  double k_o = 5e-4;  // comfort gain on squared acceleration
  double k_j = 1e-4;  // comfort gain per acceleration switch
};

// Everything the planner sees at one instant.
struct SceneSnapshot {
  VehicleState ego;
  const PathGeometry* ego_path = nullptr;
  std::vector<OtherVehicle> others;
  double v_desired = 10.0;  // ego's desired speed [m/s]
};

struct CostBreakdown {
  double risk = 0.0;     // integrated survival-discounted collision risk
  double utility = 0.0;  // progress reward (subtracted)
  double comfort = 0.0;  // acceleration magnitude and switch penalty
  double total = 0.0;    // risk - utility + comfort
};

struct CandidateResult {
  AccelerationProfile profile;
  CostBreakdown cost;
};

struct PlanResult {
  AccelerationProfile best_profile;
  CostBreakdown best_cost;
  double first_step_acceleration = 0.0;
  std::vector<CandidateResult> all_candidates;
};

// Candidate profiles: one constant-acceleration phase per (accel, duration)
// grid pair, each implicitly followed by constant velocity. Zero acceleration
// collapses to the empty profile; braking that would cross v = 0 is truncated
// at the stopping time. The list is deduplicated, generation order kept.
std::vector<AccelerationProfile> generate_profiles(const VehicleState& state,
                                                   const PlannerConfig& cfg);

// Cost of one candidate: total = risk - utility + comfort, where utility is
// k_u * min(mean_velocity / v_desired, 1) over the horizon and comfort is
// k_o * mean squared acceleration + k_j * number of acceleration switches.
CostBreakdown evaluate_cost(const SceneSnapshot& snapshot,
                            const AccelerationProfile& profile, double alpha,
                            const PlannerConfig& cfg,
                            const RiskConfig& risk_cfg);

// Exhaustive minimization over the candidate list. Ties prefer the smaller
// |acceleration|, then the longer phase duration, then braking.
PlanResult plan(const SceneSnapshot& snapshot, double alpha,
                const PlannerConfig& cfg, const RiskConfig& risk_cfg);

// Risk-over-velocity visualization grid.
struct RiskMapConfig {
  double v_max = 20.0;
  int velocity_steps = 21;
};

struct RiskMapGrid {
  std::vector<double> time_axis;      // lookahead [s]
  std::vector<double> velocity_axis;  // [m/s]
  Eigen::MatrixXd risk_values;        // rows: velocity, cols: time
  struct Overlay {
    std::string label;
    std::vector<double> velocity;  // one entry per time axis sample
  };
  std::vector<Overlay> overlays;
};

// Instantaneous risk density per (lookahead, velocity) cell: the cell at
// (s, v) evaluates the state the ego reaches at time s under the constant
// acceleration that attains velocity v at exactly time s, against all other
// vehicles' constant-velocity predictions. Includes a constant-velocity
// overlay trajectory.
RiskMapGrid render_risk_map(const SceneSnapshot& snapshot, double alpha,
                            const RiskConfig& risk_cfg,
                            const RiskMapConfig& map_cfg = {});

}  // namespace riskmaps
