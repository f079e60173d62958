#include "riskmaps/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace riskmaps {

namespace {

double clamp_alpha(double alpha) {
  return std::min(std::max(alpha, kAlphaConfident), kAlphaDefensive);
}

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

std::optional<double> interpolate_linear(double a_driver, double a_def,
                                         double a_conf, double eps_plan) {
  if (std::fabs(a_def - a_conf) <= eps_plan) return std::nullopt;
  const double u = (a_driver - a_conf) / (a_def - a_conf);
  return clamp_alpha(kAlphaConfident + (kAlphaDefensive - kAlphaConfident) * u);
}

std::optional<double> interpolate_sigmoid(double a_driver, double a_def,
                                          double a_conf, double eps_plan,
                                          double k) {
  if (std::fabs(a_def - a_conf) <= eps_plan) return std::nullopt;
  const double u = (a_driver - a_conf) / (a_def - a_conf);
  const double lo = logistic(-k / 2.0);
  const double hi = logistic(k / 2.0);
  const double squashed = (logistic(k * (u - 0.5)) - lo) / (hi - lo);
  return clamp_alpha(kAlphaConfident +
                     (kAlphaDefensive - kAlphaConfident) * squashed);
}

EstimationSample estimate_step(const SceneSnapshot& snapshot, double a_driver,
                               const EstimatorConfig& cfg,
                               const PlannerConfig& planner_cfg,
                               const RiskConfig& risk_cfg) {
  EstimationSample sample;
  sample.timestamp = snapshot.ego.timestamp;
  sample.a_driver = a_driver;
  sample.a_def =
      plan(snapshot, kAlphaDefensive, planner_cfg, risk_cfg).first_step_acceleration;
  sample.a_conf =
      plan(snapshot, kAlphaConfident, planner_cfg, risk_cfg).first_step_acceleration;

  const AccelerationProfile const_velocity;
  const std::vector<double> per_vehicle =
      integrated_risk_per_other(snapshot.ego, *snapshot.ego_path,
                                const_velocity, snapshot.others,
                                kAlphaDefensive, risk_cfg);
  sample.interacting =
      std::any_of(per_vehicle.begin(), per_vehicle.end(),
                  [&](double r) { return r > cfg.gate_threshold; });

  std::optional<double> alpha;
  if (sample.interacting) {
    alpha = cfg.interpolation == EstimatorConfig::Interpolation::sigmoid
                ? interpolate_sigmoid(a_driver, sample.a_def, sample.a_conf,
                                      cfg.eps_plan, cfg.sigmoid_k)
                : interpolate_linear(a_driver, sample.a_def, sample.a_conf,
                                     cfg.eps_plan);
  }
  sample.alpha_hat = alpha.value_or(kAlphaNormal);
  return sample;
}

EstimationSummary summarize(std::span<const EstimationSample> samples,
                            double ground_truth_alpha) {
  EstimationSummary out;
  out.n_samples = samples.size();
  if (samples.empty()) {
    throw std::invalid_argument("cannot summarize zero estimation samples");
  }
  double sum = 0.0;
  for (const auto& s : samples) sum += s.alpha_hat;
  out.mean = sum / static_cast<double>(samples.size());
  double sq = 0.0;
  for (const auto& s : samples) {
    const double d = s.alpha_hat - out.mean;
    sq += d * d;
  }
  out.stddev = std::sqrt(sq / static_cast<double>(samples.size()));
  out.diff_to_ground_truth = std::fabs(out.mean - ground_truth_alpha);
  return out;
}

}  // namespace riskmaps
