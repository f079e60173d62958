#pragma once

#include "riskmaps/planner.hpp"

#include <optional>
#include <span>

namespace riskmaps {

// Canonical risk-factor anchors: confident, normal, defensive.
inline constexpr double kAlphaConfident = 0.04;
inline constexpr double kAlphaNormal = 0.5;
inline constexpr double kAlphaDefensive = 1.0;

struct EstimatorConfig {
  enum class Interpolation { linear, sigmoid };
  double eps_plan = 0.05;       // anchor-plan separation below which the
                                // driver action carries no information [m/s^2]
  double sigmoid_k = 6.0;       // sigmoid steepness
  double gate_threshold = 1e-6; // per-vehicle interaction gate on risk
  Interpolation interpolation = Interpolation::sigmoid;
};

// Risk factor from the observed acceleration, linear between the anchor
// plans: u = (a - a_conf) / (a_def - a_conf), alpha = 0.04 + 0.96 u, clamped
// to [0.04, 1]. Returns nothing when the anchor plans are closer than
// eps_plan (the observation is uninformative).
std::optional<double> interpolate_linear(double a_driver, double a_def,
                                         double a_conf, double eps_plan);

// Sigmoid variant: u is squashed through a logistic rescaled to fix the
// endpoints, so it agrees with the linear rule at u in {0, 1/2, 1}.
std::optional<double> interpolate_sigmoid(double a_driver, double a_def,
                                          double a_conf, double eps_plan,
                                          double k);

struct EstimationSample {
  double timestamp = 0.0;
  double a_def = 0.0;     // defensive anchor plan, first-step acceleration
  double a_conf = 0.0;    // confident anchor plan, first-step acceleration
  double a_driver = 0.0;  // observed driver acceleration
  double alpha_hat = 0.5;
  bool interacting = false;
};

// One estimation step on a scene snapshot: plans both anchors, gates on
// interaction (any other vehicle's integrated risk at the defensive factor,
// under a constant-velocity ego prediction, above gate_threshold), and
// interpolates. Non-interacting or uninformative samples fall back to the
// normal factor 0.5.
EstimationSample estimate_step(const SceneSnapshot& snapshot, double a_driver,
                               const EstimatorConfig& cfg,
                               const PlannerConfig& planner_cfg,
                               const RiskConfig& risk_cfg);

struct EstimationSummary {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
  double diff_to_ground_truth = 0.0;
  std::size_t n_samples = 0;
};

// Mean and population std of alpha_hat over all samples (non-interacting
// fallbacks included), plus |mean - ground truth|.
EstimationSummary summarize(std::span<const EstimationSample> samples,
                            double ground_truth_alpha);

}  // namespace riskmaps
