#pragma once

#include "riskmaps/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace riskmaps {

// Position-uncertainty growth model. The longitudinal standard deviation
// grows linearly with prediction time and vehicle speed and is capped by the
// risk factor alpha: a cautious driver (alpha near 1) lets uncertainty grow
// to the full cap, a confident driver (alpha near 0.04) clips it early.
struct UncertaintyParams {
  double sigma_min = 0.5;         // base longitudinal sigma [m]
  double growth_rate = 0.05;      // sigma growth per meter of lookahead [1/s]
  double sigma_max_scale = 10.0;  // cap is alpha * sigma_max_scale [m]
  double lateral_sigma = 0.5;     // fixed lateral sigma [m]
  double ego_multiplier = 1.0;    // cap multiplier applied to the ego
  double other_multiplier = 1.0;  // cap multiplier applied to other vehicles
};

// Longitudinal sigma after s seconds for a vehicle moving at `velocity`.
inline double longitudinal_sigma(double alpha, double velocity, double s,
                                 const UncertaintyParams& p,
                                 double cap_multiplier = 1.0) {
  return std::min(p.sigma_min + p.growth_rate * velocity * s,
                  alpha * p.sigma_max_scale * cap_multiplier);
}

// Covariance at lookahead s: diag(sigma_lon^2, sigma_lat^2) rotated into the
// frame given by the unit heading direction.
inline Mat2 uncertainty_at(double alpha, double velocity, double s,
                           const UncertaintyParams& p, const Vec2& heading_dir,
                           double cap_multiplier = 1.0) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw std::out_of_range("lookahead must be finite and >= 0");
  }
  const double sl = longitudinal_sigma(alpha, velocity, s, p, cap_multiplier);
  const double c = heading_dir.x();
  const double n = heading_dir.y();
  const double lon2 = sl * sl;
  const double lat2 = p.lateral_sigma * p.lateral_sigma;
  Mat2 out;
  out << c * c * lon2 + n * n * lat2, c * n * (lon2 - lat2),
      c * n * (lon2 - lat2), n * n * lon2 + c * c * lat2;
  return out;
}

// Convenience overload taking the heading angle in radians.
inline Mat2 uncertainty_at(double alpha, double velocity, double s,
                           const UncertaintyParams& p, double heading) {
  return uncertainty_at(alpha, velocity, s, p,
                        Vec2(std::cos(heading), std::sin(heading)));
}

}  // namespace riskmaps
