#pragma once

#include "riskmaps/campaign.hpp"

#include <filesystem>
#include <string>

namespace riskmaps {

// Scenario config round trip. Numbers survive losslessly (shortest
// round-trip decimal representation). See docs/formats.md.
std::string scenario_to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_from_json(const std::string& text);
ScenarioSpec load_scenario(const std::filesystem::path& file);
void save_scenario(const ScenarioSpec& spec, const std::filesystem::path& file);

// Per-run CSV exports (see docs/formats.md for the exact columns).
void write_estimation_csv(const SimulationTrace& trace,
                          const std::filesystem::path& file);
void write_warning_csv(const SimulationTrace& trace,
                       const std::filesystem::path& file);
void write_states_csv(const SimulationTrace& trace,
                      const std::filesystem::path& file);

// Risk map grid as CSV (velocity rows x time columns) and JSON (axes,
// values, overlay trajectories).
void write_riskmap_csv(const RiskMapGrid& grid,
                       const std::filesystem::path& file);
void write_riskmap_json(const RiskMapGrid& grid,
                        const std::filesystem::path& file);

// Campaign outputs: the estimation table over driver types, the per-run
// warning-error table, and every run's sample CSVs. The only timestamp in
// the output tree lives in manifest.json.
void write_campaign_outputs(const CampaignReport& report,
                            const EngineConfig& cfg,
                            const std::filesystem::path& directory);

// Formats the aggregate table as printed by the CLI.
std::string format_estimation_table(const CampaignReport& report);

// Lossless double formatting used by every exporter.
std::string format_double(double value);

}  // namespace riskmaps
