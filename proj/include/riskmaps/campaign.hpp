#pragma once

#include "riskmaps/simulator.hpp"

namespace riskmaps {

struct DriverType {
  std::string name;
  double alpha = 0.5;
};

// The three canonical driver types.
std::vector<DriverType> standard_driver_types();

// One (scenario, driver) cell of a campaign.
struct RunResult {
  std::string scenario;
  std::string driver;
  double ground_truth_alpha = 0.5;
  SimulationTrace trace;
  EstimationSummary estimation;
  RunErrorReport errors;
};

// Per-driver aggregate across scenarios: mean and population std of the
// per-run estimate means.
struct DriverAggregate {
  std::string driver;
  double ground_truth_alpha = 0.5;
  double mean = 0.0;
  double stddev = 0.0;
  double diff_to_ground_truth = 0.0;
  std::size_t n_runs = 0;
};

struct CampaignReport {
  std::vector<RunResult> runs;  // every scenario x driver exactly once
  std::vector<DriverAggregate> aggregates;  // one per driver type
};

// Runs every scenario against every driver type. Runs are independent and
// execute on `threads` workers (0 picks the hardware concurrency); results
// land in preassigned slots, so the report does not depend on scheduling or
// on the reduction order.
CampaignReport run_campaign(const std::vector<ScenarioSpec>& scenarios,
                            const std::vector<DriverType>& drivers,
                            const EngineConfig& cfg, unsigned threads = 0);

}  // namespace riskmaps
