#pragma once

#include "riskmaps/campaign.hpp"

#include <string>
#include <vector>

namespace riskmaps {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Evaluates the full acceptance checklist against the built-in scenarios and
// the given (normally calibrated) configuration. Deterministic: all sampling
// uses fixed seeds.
std::vector<CriterionResult> run_acceptance(const EngineConfig& cfg);

bool all_passed(const std::vector<CriterionResult>& results);

// One line per criterion: "PASS  1 overlap-risk oracle: ... (0.8s)".
std::string format_criteria(const std::vector<CriterionResult>& results);

}  // namespace riskmaps
