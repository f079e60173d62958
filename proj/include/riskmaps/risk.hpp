#pragma once

#include "riskmaps/gaussian.hpp"
#include "riskmaps/scene.hpp"
#include "riskmaps/uncertainty.hpp"

#include <vector>

namespace riskmaps {

// Exponential survival discount: weight exp(-s/tau) at lookahead s.
struct SurvivalParams {
  double tau = 2.0;  // [s]
};

inline double survival_weight(double s, const SurvivalParams& p) {
  return std::exp(-s / p.tau);
}

// Shared configuration of the risk integral.
struct RiskConfig {
  double horizon = 10.0;  // lookahead [s]
  double dt = 0.1;        // integration step [s]
  UncertaintyParams uncertainty;
  SurvivalParams survival;

  int steps() const { return static_cast<int>(std::llround(horizon / dt)); }
};

// Another vehicle together with its path and predicted behavior. An empty
// profile predicts constant velocity.
struct OtherVehicle {
  VehicleState state;
  const PathGeometry* path = nullptr;
  AccelerationProfile profile;
};

// Risk of the ego following `ego_profile` against each other vehicle:
// survival-discounted left-Riemann sum of the instantaneous overlap risk over
// the horizon. Uncertainty is evaluated per vehicle with its own velocity and
// cap multiplier. Returns one integral per other vehicle, in input order.
std::vector<double> integrated_risk_per_other(
    const VehicleState& ego, const PathGeometry& ego_path,
    const AccelerationProfile& ego_profile,
    const std::vector<OtherVehicle>& others, double alpha,
    const RiskConfig& cfg);

// Total integrated risk: sum of the per-vehicle integrals.
double integrated_risk(const VehicleState& ego, const PathGeometry& ego_path,
                       const AccelerationProfile& ego_profile,
                       const std::vector<OtherVehicle>& others, double alpha,
                       const RiskConfig& cfg);

}  // namespace riskmaps
