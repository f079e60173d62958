#pragma once

#include "riskmaps/estimator.hpp"
#include "riskmaps/warning.hpp"

#include <filesystem>

namespace riskmaps {

// Everything tunable in one place. Default-constructed values are the
// documented contract defaults of each module; `calibrated_config()` returns
// the frozen calibration used by the built-in scenario campaign.
struct EngineConfig {
  RiskConfig risk;
  PlannerConfig planner;
  EstimatorConfig estimator;
  WarningConfig warning;
  RiskMapConfig riskmap;
};

// Frozen campaign calibration: faster uncertainty growth and lighter
// utility/comfort gains than the contract defaults.
EngineConfig calibrated_config();

// JSON round trip. Loading accepts partial documents: absent keys keep their
// defaults. Malformed documents or unreadable paths raise std::runtime_error.
EngineConfig load_engine_config(const std::filesystem::path& file);
void save_engine_config(const EngineConfig& cfg,
                        const std::filesystem::path& file);

std::string engine_config_to_json(const EngineConfig& cfg);
EngineConfig engine_config_from_json(const std::string& text);

}  // namespace riskmaps
