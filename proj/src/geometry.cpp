#include "riskmaps/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace riskmaps {

PathGeometry::PathGeometry(std::vector<Vec2> waypoints)
    : waypoints_(std::move(waypoints)) {
  if (waypoints_.size() < 2) {
    throw std::invalid_argument("path needs at least two waypoints");
  }
  cumulative_.reserve(waypoints_.size());
  tangents_.reserve(waypoints_.size() - 1);
  cumulative_.push_back(0.0);
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    const Vec2 seg = waypoints_[i] - waypoints_[i - 1];
    const double len = seg.norm();
    if (!(len > 0.0)) {
      throw std::invalid_argument("path waypoints must strictly advance");
    }
    tangents_.push_back(seg / len);
    cumulative_.push_back(cumulative_.back() + len);
  }
}

std::size_t PathGeometry::segment_index(double s) const {
  if (!std::isfinite(s) || s < 0.0 || s > length()) {
    throw std::out_of_range("arc length outside path");
  }
  // First waypoint with cumulative arc length > s; s == length() maps to the
  // last segment.
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t idx = static_cast<std::size_t>(it - cumulative_.begin());
  if (idx == 0) idx = 1;
  if (idx >= cumulative_.size()) idx = cumulative_.size() - 1;
  return idx - 1;
}

Vec2 PathGeometry::position_at(double s) const {
  const std::size_t i = segment_index(s);
  return waypoints_[i] + (s - cumulative_[i]) * tangents_[i];
}

Vec2 PathGeometry::direction_at(double s) const {
  return tangents_[segment_index(s)];
}

}  // namespace riskmaps
