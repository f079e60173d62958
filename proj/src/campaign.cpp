#include "riskmaps/campaign.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace riskmaps {

std::vector<DriverType> standard_driver_types() {
  return {{"defensive", kAlphaDefensive},
          {"normal", kAlphaNormal},
          {"confident", kAlphaConfident}};
}

CampaignReport run_campaign(const std::vector<ScenarioSpec>& scenarios,
                            const std::vector<DriverType>& drivers,
                            const EngineConfig& cfg, unsigned threads) {
  CampaignReport report;
  const std::size_t n_runs = scenarios.size() * drivers.size();
  report.runs.resize(n_runs);

  // Fixed slot per (scenario, driver) pair; workers pull the next undone
  // index, so the result is independent of scheduling.
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= n_runs) return;
      const ScenarioSpec& scenario = scenarios[idx / drivers.size()];
      const DriverType& driver = drivers[idx % drivers.size()];
      RunResult& slot = report.runs[idx];
      slot.scenario = scenario.name;
      slot.driver = driver.name;
      slot.ground_truth_alpha = driver.alpha;
      slot.trace = run_scenario(scenario, cfg, driver.alpha,
                                wants_warning_for(scenario, driver.name));
      std::vector<EstimationSample> samples;
      std::vector<WarningRecord> warnings;
      samples.reserve(slot.trace.steps.size());
      warnings.reserve(slot.trace.steps.size());
      for (const auto& step : slot.trace.steps) {
        samples.push_back(step.estimation);
        warnings.push_back(step.warning);
      }
      slot.estimation = summarize(samples, driver.alpha);
      slot.errors = compare_runs(warnings);
    }
  };

  unsigned n_workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
  if (n_workers == 0) n_workers = 1;
  n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(n_runs));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Reduce in driver order from the fixed slots.
  for (const auto& driver : drivers) {
    DriverAggregate agg;
    agg.driver = driver.name;
    agg.ground_truth_alpha = driver.alpha;
    std::vector<double> means;
    for (const auto& run : report.runs) {
      if (run.driver == driver.name) means.push_back(run.estimation.mean);
    }
    agg.n_runs = means.size();
    if (!means.empty()) {
      double sum = 0.0;
      for (double m : means) sum += m;
      agg.mean = sum / static_cast<double>(means.size());
      double sq = 0.0;
      for (double m : means) {
        const double d = m - agg.mean;
        sq += d * d;
      }
      agg.stddev = std::sqrt(sq / static_cast<double>(means.size()));
      agg.diff_to_ground_truth = std::fabs(agg.mean - driver.alpha);
    }
    report.aggregates.push_back(std::move(agg));
  }
  return report;
}

}  // namespace riskmaps
