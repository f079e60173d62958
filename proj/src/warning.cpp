#include "riskmaps/warning.hpp"

#include <stdexcept>

namespace riskmaps {

double weight_for(double alpha, const WeightFunction& weight) {
  const auto& anchors = weight.anchors;
  if (anchors.size() < 2) {
    throw std::invalid_argument("weight function needs at least two anchors");
  }
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    if (!(anchors[i].first > anchors[i - 1].first)) {
      throw std::invalid_argument("weight anchors must strictly increase");
    }
  }
  if (alpha <= anchors.front().first) return anchors.front().second;
  if (alpha >= anchors.back().first) return anchors.back().second;
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    const auto& [x0, y0] = anchors[i - 1];
    const auto& [x1, y1] = anchors[i];
    if (alpha <= x1) return y0 + (y1 - y0) * (alpha - x0) / (x1 - x0);
  }
  return anchors.back().second;  // unreachable
}

double warning_signal(const SceneSnapshot& snapshot, double alpha,
                      const WarningConfig& cfg, const RiskConfig& risk_cfg) {
  const AccelerationProfile const_velocity;
  const double risk = integrated_risk(snapshot.ego, *snapshot.ego_path,
                                      const_velocity, snapshot.others, alpha,
                                      risk_cfg);
  return weight_for(alpha, cfg.weight) * risk;
}

WarningRecord make_warning_record(double timestamp, double personalized,
                                  double baseline, bool wants_warning,
                                  const WarningConfig& cfg) {
  WarningRecord rec;
  rec.timestamp = timestamp;
  rec.personalized_signal = personalized;
  rec.baseline_signal = baseline;
  rec.personalized_warn = personalized > cfg.threshold;
  rec.baseline_warn = baseline > cfg.threshold;
  rec.driver_wants_warning = wants_warning;
  rec.personalized_outcome = classify(rec.personalized_warn, wants_warning);
  rec.baseline_outcome = classify(rec.baseline_warn, wants_warning);
  return rec;
}

RunErrorReport compare_runs(std::span<const WarningRecord> records) {
  RunErrorReport report;
  for (const auto& rec : records) {
    if (rec.personalized_outcome == Outcome::false_negative) {
      ++report.personalized_false_negatives;
    }
    if (rec.personalized_outcome == Outcome::false_positive) {
      ++report.personalized_false_positives;
    }
    if (rec.baseline_outcome == Outcome::false_negative) {
      ++report.baseline_false_negatives;
    }
    if (rec.baseline_outcome == Outcome::false_positive) {
      ++report.baseline_false_positives;
    }
    if (rec.personalized_warn && !report.personalized_warned) {
      report.personalized_warned = true;
      report.first_personalized_warning = rec.timestamp;
    }
    if (rec.baseline_warn && !report.baseline_warned) {
      report.baseline_warned = true;
      report.first_baseline_warning = rec.timestamp;
    }
  }
  return report;
}

RunErrorReport compare_runs(std::span<const WarningRecord> personalized,
                            std::span<const WarningRecord> baseline) {
  if (personalized.size() != baseline.size()) {
    throw std::invalid_argument("warning streams are not step-aligned");
  }
  std::vector<WarningRecord> merged;
  merged.reserve(personalized.size());
  for (std::size_t i = 0; i < personalized.size(); ++i) {
    if (personalized[i].timestamp != baseline[i].timestamp) {
      throw std::invalid_argument("warning streams are not step-aligned");
    }
    WarningRecord rec = personalized[i];
    rec.baseline_signal = baseline[i].baseline_signal;
    rec.baseline_warn = baseline[i].baseline_warn;
    rec.baseline_outcome = classify(rec.baseline_warn, rec.driver_wants_warning);
    merged.push_back(rec);
  }
  return compare_runs(std::span<const WarningRecord>(merged));
}

}  // namespace riskmaps
