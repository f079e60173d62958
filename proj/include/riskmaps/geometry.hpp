#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>
#include <vector>

namespace riskmaps {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// Piecewise-linear path parameterized by arc length. Waypoints must be
// strictly advancing (no duplicate consecutive points).
class PathGeometry {
 public:
  explicit PathGeometry(std::vector<Vec2> waypoints);

  double length() const { return cumulative_.back(); }

  // World position at arc length s in [0, length()].
  Vec2 position_at(double s) const;

  // Unit tangent of the segment containing s.
  Vec2 direction_at(double s) const;

  const std::vector<Vec2>& waypoints() const { return waypoints_; }

 private:
  // Index of the segment containing s, after range validation.
  std::size_t segment_index(double s) const;

  std::vector<Vec2> waypoints_;
  std::vector<double> cumulative_;
  std::vector<Vec2> tangents_;
};

inline PathGeometry straight_path(const Vec2& a, const Vec2& b) {
  return PathGeometry({a, b});
}

}  // namespace riskmaps
