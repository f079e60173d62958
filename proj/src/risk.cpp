#include "riskmaps/risk.hpp"

namespace riskmaps {

namespace {

// Ego trajectory sampled on the integration grid: world position, heading,
// and footprint covariance per step.
struct SampledTrajectory {
  std::vector<Vec2> position;
  std::vector<Mat2> covariance;
};

SampledTrajectory sample_trajectory(const VehicleState& state,
                                    const PathGeometry& path,
                                    const AccelerationProfile& profile,
                                    double alpha, double cap_multiplier,
                                    const RiskConfig& cfg) {
  const int n = cfg.steps();
  SampledTrajectory out;
  out.position.reserve(n);
  out.covariance.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) * cfg.dt;
    const auto [p, v] =
        advance_along_profile(state.path_position, state.velocity, profile, s);
    (void)v;
    out.position.push_back(path.position_at(p));
    out.covariance.push_back(uncertainty_at(alpha, state.velocity, s,
                                            cfg.uncertainty,
                                            path.direction_at(p),
                                            cap_multiplier));
  }
  return out;
}

}  // namespace

std::vector<double> integrated_risk_per_other(
    const VehicleState& ego, const PathGeometry& ego_path,
    const AccelerationProfile& ego_profile,
    const std::vector<OtherVehicle>& others, double alpha,
    const RiskConfig& cfg) {
  const int n = cfg.steps();
  const SampledTrajectory ego_traj =
      sample_trajectory(ego, ego_path, ego_profile, alpha,
                        cfg.uncertainty.ego_multiplier, cfg);
  std::vector<double> survival(n);
  for (int k = 0; k < n; ++k) {
    survival[k] =
        survival_weight(static_cast<double>(k) * cfg.dt, cfg.survival);
  }
  std::vector<double> result;
  result.reserve(others.size());
  for (const auto& other : others) {
    const SampledTrajectory other_traj =
        sample_trajectory(other.state, *other.path, other.profile, alpha,
                          cfg.uncertainty.other_multiplier, cfg);
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const double r = overlap_density(
          (other_traj.position[k] - ego_traj.position[k]).eval(),
          (ego_traj.covariance[k] + other_traj.covariance[k]).eval());
      acc += survival[k] * r;
    }
    result.push_back(acc * cfg.dt);
  }
  return result;
}

double integrated_risk(const VehicleState& ego, const PathGeometry& ego_path,
                       const AccelerationProfile& ego_profile,
                       const std::vector<OtherVehicle>& others, double alpha,
                       const RiskConfig& cfg) {
  double total = 0.0;
  for (double r :
       integrated_risk_per_other(ego, ego_path, ego_profile, others, alpha, cfg)) {
    total += r;
  }
  return total;
}

}  // namespace riskmaps
