#pragma once

#include "riskmaps/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace riskmaps {

// Longitudinal state of a vehicle on a path.
struct VehicleState {
  double path_position = 0.0;  // arc length along the vehicle's path [m]
  double velocity = 0.0;       // [m/s], never negative
  double acceleration = 0.0;   // last applied acceleration [m/s^2]
  double timestamp = 0.0;      // [s]
  double length = 4.0;         // vehicle body length [m]
  double width = 2.0;          // vehicle body width [m]
};

// A bounded sequence of constant-acceleration phases followed by constant
// velocity. An empty profile is pure constant velocity.
struct AccelerationProfile {
  struct Phase {
    double accel = 0.0;     // [m/s^2]
    double duration = 0.0;  // [s], > 0
  };
  std::vector<Phase> phases;

  double first_step_acceleration() const {
    return phases.empty() ? 0.0 : phases.front().accel;
  }
};

inline bool operator==(const AccelerationProfile::Phase& a,
                       const AccelerationProfile::Phase& b) {
  return a.accel == b.accel && a.duration == b.duration;
}

inline bool operator==(const AccelerationProfile& a,
                       const AccelerationProfile& b) {
  return a.phases == b.phases;
}

// Closed-form advance of (position, velocity) along a profile for s seconds.
// Braking stops and holds: when a phase would cross v = 0 the motion is
// truncated at the stopping instant and the vehicle rests for the remainder
// of that phase. Time past the last phase coasts at the final velocity.
inline std::pair<double, double> advance_along_profile(
    double position, double velocity, const AccelerationProfile& profile,
    double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw std::out_of_range("prediction time must be finite and >= 0");
  }
  double remaining = s;
  for (const auto& phase : profile.phases) {
    if (remaining <= 0.0) break;
    const double dt = std::min(remaining, phase.duration);
    if (phase.accel < 0.0 && velocity + phase.accel * dt < 0.0) {
      const double t_stop = velocity / (-phase.accel);
      position += velocity * t_stop + 0.5 * phase.accel * t_stop * t_stop;
      velocity = 0.0;
    } else {
      position += velocity * dt + 0.5 * phase.accel * dt * dt;
      velocity += phase.accel * dt;
    }
    remaining -= dt;
  }
  if (remaining > 0.0) position += velocity * remaining;
  return {position, velocity};
}

// State s seconds ahead under the given profile. Identity at s = 0.
inline VehicleState predict_state(const VehicleState& state,
                                  const AccelerationProfile& profile,
                                  double s) {
  auto [p, v] = advance_along_profile(state.path_position, state.velocity,
                                      profile, s);
  VehicleState out = state;
  out.path_position = p;
  out.velocity = v;
  out.timestamp = state.timestamp + s;
  // Acceleration in effect at time s: zero when coasting past the phases or
  // when braking has already brought the vehicle to rest.
  double accel = 0.0;
  double elapsed = 0.0;
  for (const auto& phase : profile.phases) {
    if (s < elapsed + phase.duration) {
      accel = phase.accel;
      break;
    }
    elapsed += phase.duration;
  }
  if (v <= 0.0 && accel < 0.0) accel = 0.0;
  out.acceleration = accel;
  return out;
}

// World position of a vehicle via its path.
inline Vec2 world_position(const VehicleState& state,
                           const PathGeometry& path) {
  return path.position_at(state.path_position);
}

/// Bumper-to-bumper gap: center distance minus half lengths, floored at zero.
inline double gap_between(const VehicleState& a, const PathGeometry& path_a,
                          const VehicleState& b, const PathGeometry& path_b) {
  const double center_dist =
      (world_position(a, path_a) - world_position(b, path_b)).norm();
  return std::max(0.0, center_dist - 0.5 * a.length - 0.5 * b.length);
}

}  // namespace riskmaps
