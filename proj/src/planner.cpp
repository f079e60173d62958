#include "riskmaps/planner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace riskmaps {

std::vector<AccelerationProfile> generate_profiles(const VehicleState& state,
                                                   const PlannerConfig& cfg) {
  if (cfg.accel_grid.empty() || cfg.duration_grid.empty()) {
    throw std::invalid_argument("planner grids must be non-empty");
  }
  std::vector<AccelerationProfile> out;
  for (double a : cfg.accel_grid) {
    for (double d : cfg.duration_grid) {
      AccelerationProfile profile;
      if (a == 0.0) {
        // constant velocity; empty profile
      } else if (a < 0.0 && state.velocity + a * d < 0.0) {
        const double t_stop = state.velocity / (-a);
        if (t_stop > 0.0) profile.phases.push_back({a, t_stop});
      } else {
        profile.phases.push_back({a, d});
      }
      if (std::find(out.begin(), out.end(), profile) == out.end()) {
        out.push_back(std::move(profile));
      }
    }
  }
  return out;
}

CostBreakdown evaluate_cost(const SceneSnapshot& snapshot,
                            const AccelerationProfile& profile, double alpha,
                            const PlannerConfig& cfg,
                            const RiskConfig& risk_cfg) {
  CostBreakdown cost;
  cost.risk = integrated_risk(snapshot.ego, *snapshot.ego_path, profile,
                              snapshot.others, alpha, risk_cfg);

  const double horizon = risk_cfg.horizon;
  const auto [end_pos, end_vel] = advance_along_profile(
      snapshot.ego.path_position, snapshot.ego.velocity, profile, horizon);
  (void)end_vel;
  const double mean_velocity = (end_pos - snapshot.ego.path_position) / horizon;
  cost.utility = cfg.k_u * std::min(mean_velocity / snapshot.v_desired, 1.0);

  // Effective acceleration segments over the horizon: grid phases split at a
  // braking stop, then terminal constant velocity.
  std::vector<std::pair<double, double>> segments;
  double v = snapshot.ego.velocity;
  double elapsed = 0.0;
  for (const auto& phase : profile.phases) {
    if (phase.accel < 0.0 && v + phase.accel * phase.duration < 0.0) {
      const double t_stop = v / (-phase.accel);
      if (t_stop > 0.0) segments.emplace_back(phase.accel, t_stop);
      segments.emplace_back(0.0, phase.duration - t_stop);
      v = 0.0;
    } else {
      segments.emplace_back(phase.accel, phase.duration);
      v += phase.accel * phase.duration;
    }
    elapsed += phase.duration;
  }
  if (elapsed < horizon) segments.emplace_back(0.0, horizon - elapsed);

  double sq_accel = 0.0;
  for (const auto& [a, d] : segments) sq_accel += a * a * d;
  int switches = 0;
  double prev = 0.0;
  bool have_prev = false;
  for (const auto& [a, d] : segments) {
    if (d <= 1e-12) continue;
    if (have_prev && a != prev) ++switches;
    prev = a;
    have_prev = true;
  }
  cost.comfort = cfg.k_o * (sq_accel / horizon) + cfg.k_j * switches;
  cost.total = cost.risk - cost.utility + cost.comfort;
  return cost;
}

PlanResult plan(const SceneSnapshot& snapshot, double alpha,
                const PlannerConfig& cfg, const RiskConfig& risk_cfg) {
  PlanResult result;
  std::array<double, 5> best_key{};
  bool have_best = false;
  for (const auto& profile : generate_profiles(snapshot.ego, cfg)) {
    const CostBreakdown cost =
        evaluate_cost(snapshot, profile, alpha, cfg, risk_cfg);
    const double a0 = profile.first_step_acceleration();
    double duration = 0.0;
    for (const auto& phase : profile.phases) duration += phase.duration;
    const std::array<double, 5> key{cost.total, std::fabs(a0), -duration, a0,
                                    duration};
    if (!have_best || key < best_key) {
      best_key = key;
      have_best = true;
      result.best_profile = profile;
      result.best_cost = cost;
      result.first_step_acceleration = a0;
    }
    result.all_candidates.push_back({profile, cost});
  }
  return result;
}

RiskMapGrid render_risk_map(const SceneSnapshot& snapshot, double alpha,
                            const RiskConfig& risk_cfg,
                            const RiskMapConfig& map_cfg) {
  RiskMapGrid grid;
  const int nt = risk_cfg.steps();
  for (int k = 1; k <= nt; ++k) {
    grid.time_axis.push_back(static_cast<double>(k) * risk_cfg.dt);
  }
  const int nv = map_cfg.velocity_steps;
  for (int i = 0; i < nv; ++i) {
    grid.velocity_axis.push_back(map_cfg.v_max * static_cast<double>(i) /
                                 static_cast<double>(nv - 1));
  }
  grid.risk_values = Eigen::MatrixXd::Zero(nv, static_cast<int>(grid.time_axis.size()));

  const auto& up = risk_cfg.uncertainty;
  const double v0 = snapshot.ego.velocity;
  const double p0 = snapshot.ego.path_position;
  const auto clamped = [](const PathGeometry& path, double s) {
    return std::clamp(s, 0.0, path.length());
  };
  for (std::size_t j = 0; j < grid.time_axis.size(); ++j) {
    const double s = grid.time_axis[j];
    for (int i = 0; i < nv; ++i) {
      const double v = grid.velocity_axis[i];
      // Constant acceleration reaching v at time s covers s*(v0+v)/2 meters.
      const double ego_s = clamped(*snapshot.ego_path, p0 + s * (v0 + v) / 2.0);
      GaussianFootprint ego_fp{
          snapshot.ego_path->position_at(ego_s),
          uncertainty_at(alpha, v0, s, up, snapshot.ego_path->direction_at(ego_s),
                         up.ego_multiplier)};
      double cell = 0.0;
      for (const auto& other : snapshot.others) {
        const auto [op, ov] = advance_along_profile(
            other.state.path_position, other.state.velocity, other.profile, s);
        (void)ov;
        const double other_s = clamped(*other.path, op);
        GaussianFootprint other_fp{
            other.path->position_at(other_s),
            uncertainty_at(alpha, other.state.velocity, s, up,
                           other.path->direction_at(other_s),
                           up.other_multiplier)};
        cell += instantaneous_risk(ego_fp, other_fp);
      }
      grid.risk_values(i, static_cast<int>(j)) = cell;
    }
  }

  RiskMapGrid::Overlay const_v{"constant-velocity", {}};
  const_v.velocity.assign(grid.time_axis.size(), v0);
  grid.overlays.push_back(std::move(const_v));
  return grid;
}

}  // namespace riskmaps
