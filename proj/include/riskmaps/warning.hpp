#pragma once

#include "riskmaps/planner.hpp"

#include <span>
#include <vector>

namespace riskmaps {

// Piecewise-linear warning weight over the risk factor. Clamped to the first
// and last anchor outside their range.
struct WeightFunction {
  std::vector<std::pair<double, double>> anchors{
      {0.04, 0.01}, {0.5, 1.0}, {1.0, 4.0}};
};

double weight_for(double alpha, const WeightFunction& weight);

struct WarningConfig {
  double threshold = 1e-3;
  WeightFunction weight;
};

// Personalized warning signal on a snapshot: W = weight(alpha) * R(alpha),
// where R is the integrated risk of a constant-velocity ego prediction
// against all other vehicles. The baseline system is the same signal at the
// normal factor 0.5 (unit weight).
double warning_signal(const SceneSnapshot& snapshot, double alpha,
                      const WarningConfig& cfg, const RiskConfig& risk_cfg);

enum class Outcome { true_positive, true_negative, false_positive, false_negative };

// Classification of one warning decision against the driver's wish.
constexpr Outcome classify(bool warned, bool wants_warning) {
  if (warned) return wants_warning ? Outcome::true_positive : Outcome::false_positive;
  return wants_warning ? Outcome::false_negative : Outcome::true_negative;
}

struct WarningRecord {
  double timestamp = 0.0;
  double personalized_signal = 0.0;
  double baseline_signal = 0.0;
  bool personalized_warn = false;
  bool baseline_warn = false;
  bool driver_wants_warning = false;
  Outcome personalized_outcome = Outcome::true_negative;
  Outcome baseline_outcome = Outcome::true_negative;
};

// Builds a record by thresholding both signals and classifying each system.
WarningRecord make_warning_record(double timestamp, double personalized,
                                  double baseline, bool wants_warning,
                                  const WarningConfig& cfg);

struct RunErrorReport {
  int personalized_false_negatives = 0;
  int personalized_false_positives = 0;
  int baseline_false_negatives = 0;
  int baseline_false_positives = 0;
  bool personalized_warned = false;  // warned at least once
  bool baseline_warned = false;
  double first_personalized_warning = -1.0;  // [s], -1 when silent
  double first_baseline_warning = -1.0;
};

// Per-step error counts and run-level warned-at-least-once flags for one
// aligned stream carrying both systems.
RunErrorReport compare_runs(std::span<const WarningRecord> records);

// Two-stream variant: takes the personalized signal from `personalized` and
// the baseline signal from `baseline`. The streams must be step-aligned.
RunErrorReport compare_runs(std::span<const WarningRecord> personalized,
                            std::span<const WarningRecord> baseline);

}  // namespace riskmaps
