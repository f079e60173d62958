#include "riskmaps/io.hpp"
#include "riskmaps/verification.hpp"

#include <CLI11.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

namespace fs = std::filesystem;
using namespace riskmaps;

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;   // assertion / acceptance failure
constexpr int kExitUsage = 2;     // usage or configuration error

// Raised during argument/config resolution; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("RISKMAPS_OUT"); env && *env) return env;
  return "out";
}

// Console-friendly numbers (exports use the lossless format_double).
std::string format_brief(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

EngineConfig resolve_config(const std::string& config_flag) {
  if (config_flag.empty()) return calibrated_config();
  try {
    return load_engine_config(config_flag);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

ScenarioSpec resolve_scenario(const std::string& name_or_path) {
  if (auto builtin = find_builtin_scenario(name_or_path)) return *builtin;
  if (fs::exists(name_or_path)) {
    try {
      return load_scenario(name_or_path);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  throw UsageError("unknown scenario: " + name_or_path +
                   " (not a built-in name or readable file)");
}

std::vector<ScenarioSpec> resolve_scenarios(const std::string& selector) {
  if (selector.empty() || selector == "all") return builtin_scenarios();
  return {resolve_scenario(selector)};
}

DriverType resolve_driver(const std::string& selector) {
  for (const auto& driver : standard_driver_types()) {
    if (driver.name == selector) return driver;
  }
  if (selector.rfind("alpha=", 0) == 0) {
    double alpha = 0.0;
    try {
      alpha = std::stod(selector.substr(6));
    } catch (const std::exception&) {
      throw UsageError("cannot parse risk factor in: " + selector);
    }
    if (!(alpha > 0.0) || !(alpha <= 1.0)) {
      throw UsageError("risk factor must lie in (0, 1]");
    }
    // filesystem-friendly name; raw factors carry no wants-warning label
    return {"alpha-" + selector.substr(6), alpha};
  }
  throw UsageError("unknown driver: " + selector +
                   " (use defensive|normal|confident|alpha=<float>)");
}

std::vector<DriverType> resolve_drivers(const std::string& selector) {
  if (selector.empty() || selector == "all") return standard_driver_types();
  return {resolve_driver(selector)};
}

void apply_interp(EngineConfig& cfg, const std::string& interp) {
  if (interp.empty()) return;
  if (interp == "linear") {
    cfg.estimator.interpolation = EstimatorConfig::Interpolation::linear;
  } else if (interp == "sigmoid") {
    cfg.estimator.interpolation = EstimatorConfig::Interpolation::sigmoid;
  } else {
    throw UsageError("unknown interpolation: " + interp);
  }
}

int cmd_estimate(const std::string& config_flag, const std::string& scenario_flag,
                 const std::string& driver_flag, const std::string& interp_flag,
                 const std::string& out_flag) {
  EngineConfig cfg = resolve_config(config_flag);
  apply_interp(cfg, interp_flag);
  const std::vector<ScenarioSpec> scenarios = resolve_scenarios(scenario_flag);
  const std::vector<DriverType> drivers = resolve_drivers(driver_flag);

  const CampaignReport report = run_campaign(scenarios, drivers, cfg);
  std::cout << format_estimation_table(report);
  const fs::path dir = output_dir(out_flag) / fs::path("estimate");
  write_campaign_outputs(report, cfg, dir);
  std::cout << "wrote " << report.runs.size() << " runs to " << dir.string()
            << "\n";
  return kExitSuccess;
}

int cmd_warn(const std::string& config_flag, const std::string& scenario_flag,
             const std::string& driver_flag, const std::string& out_flag) {
  const EngineConfig cfg = resolve_config(config_flag);
  const ScenarioSpec spec = resolve_scenario(scenario_flag);
  const DriverType driver = resolve_driver(driver_flag);
  const bool wants = wants_warning_for(spec, driver.name);

  const SimulationTrace trace = run_scenario(spec, cfg, driver.alpha, wants);
  std::vector<WarningRecord> records;
  for (const auto& step : trace.steps) records.push_back(step.warning);
  const RunErrorReport errors = compare_runs(records);

  const fs::path dir = output_dir(out_flag) / fs::path("warn");
  const std::string stem = spec.name + "_" + driver.name;
  write_warning_csv(trace, dir / (stem + "_warnings.csv"));
  {
    nlohmann::json j;
    j["scenario"] = spec.name;
    j["driver"] = driver.name;
    j["driver_wants_warning"] = wants;
    j["personalized"] = {{"false_negatives", errors.personalized_false_negatives},
                         {"false_positives", errors.personalized_false_positives},
                         {"warned", errors.personalized_warned},
                         {"first_warning", errors.first_personalized_warning}};
    j["baseline"] = {{"false_negatives", errors.baseline_false_negatives},
                     {"false_positives", errors.baseline_false_positives},
                     {"warned", errors.baseline_warned},
                     {"first_warning", errors.first_baseline_warning}};
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / (stem + "_error_report.json"));
    out << j.dump(2) << '\n';
  }

  // Run-level verdict: did the system warn at least once vs. the wish.
  const auto verdict = [&](bool warned) {
    switch (classify(warned, wants)) {
      case Outcome::true_positive: return "warned correctly (TP)";
      case Outcome::false_positive: return "nuisance warning (FP)";
      case Outcome::false_negative: return "missed warning (FN)";
      case Outcome::true_negative: return "correctly silent (TN)";
    }
    return "?";
  };
  std::cout << spec.name << " / " << driver.name
            << (wants ? " (wants a warning)\n" : " (wants no warning)\n");
  std::cout << "personalized: " << verdict(errors.personalized_warned);
  if (errors.personalized_warned) {
    std::cout << ", first at " << format_brief(errors.first_personalized_warning)
              << " s";
  }
  std::cout << "\nbaseline:     " << verdict(errors.baseline_warned);
  if (errors.baseline_warned) {
    std::cout << ", first at " << format_brief(errors.first_baseline_warning)
              << " s";
  }
  std::cout << "\nwrote " << (dir / (stem + "_warnings.csv")).string() << "\n";
  return kExitSuccess;
}

int cmd_riskmap(const std::string& config_flag, const std::string& scenario_flag,
                const std::string& driver_flag, double time_flag,
                const std::string& out_flag) {
  const EngineConfig cfg = resolve_config(config_flag);
  const ScenarioSpec spec = resolve_scenario(scenario_flag);
  const DriverType driver = resolve_driver(driver_flag);
  if (time_flag < 0.0 || time_flag > spec.duration) {
    throw UsageError("time " + format_brief(time_flag) +
                     " outside scenario duration [0, " +
                     format_brief(spec.duration) + "]");
  }
  const SimulationTrace trace = run_scenario(spec, cfg, driver.alpha,
                                             wants_warning_for(spec, driver.name));
  const auto k = static_cast<std::size_t>(std::llround(time_flag / spec.step));
  const SceneSnapshot snap =
      make_snapshot(spec, trace.steps.at(k).vehicles, trace.steps.at(k).t);
  const RiskMapGrid grid = render_risk_map(snap, driver.alpha, cfg.risk, cfg.riskmap);

  const fs::path dir = output_dir(out_flag) / fs::path("riskmap");
  std::ostringstream stamp;
  stamp << spec.name << "_" << driver.name << "_t" << trace.steps.at(k).t;
  write_riskmap_csv(grid, dir / (stamp.str() + ".csv"));
  write_riskmap_json(grid, dir / (stamp.str() + ".json"));

  int above = 0;
  double peak = 0.0;
  for (int i = 0; i < grid.risk_values.rows(); ++i) {
    for (int j = 0; j < grid.risk_values.cols(); ++j) {
      if (grid.risk_values(i, j) > 1e-4) ++above;
      peak = std::max(peak, grid.risk_values(i, j));
    }
  }
  std::cout << spec.name << " at t=" << format_brief(trace.steps.at(k).t)
            << " s, alpha=" << format_brief(driver.alpha) << ": "
            << grid.velocity_axis.size() << "x" << grid.time_axis.size()
            << " grid, " << above << " cells above 1e-4, peak "
            << format_brief(peak) << "\n";
  std::cout << "wrote " << (dir / (stamp.str() + ".csv")).string() << " and .json\n";
  return kExitSuccess;
}

int cmd_reproduce(const std::string& out_flag) {
  const EngineConfig cfg = calibrated_config();
  const std::vector<CriterionResult> results = run_acceptance(cfg);
  std::cout << format_criteria(results);

  const fs::path dir = output_dir(out_flag) / fs::path("reproduce");
  const CampaignReport report =
      run_campaign(builtin_scenarios(), standard_driver_types(), cfg);
  write_campaign_outputs(report, cfg, dir);
  {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : results) {
      j.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"detail", r.detail},
                   {"seconds", r.seconds}});
    }
    std::ofstream out(dir / "criteria.json");
    out << j.dump(2) << '\n';
  }
  std::cout << "wrote report to " << dir.string() << "\n";

  if (!all_passed(results)) {
    std::cout << "failed criteria:";
    for (const auto& r : results) {
      if (!r.pass) std::cout << " " << r.id;
    }
    std::cout << "\n";
    return kExitFailure;
  }
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Personalized driver-risk warning toolkit"};
  app.require_subcommand(1);

  std::string config_flag, scenario_flag, driver_flag, interp_flag, out_flag;
  double time_flag = 0.0;

  auto* estimate = app.add_subcommand(
      "estimate", "Run the risk-factor estimation campaign and print the table");
  estimate->add_option("--config", config_flag, "engine config JSON");
  estimate->add_option("--scenario", scenario_flag,
                       "built-in name, scenario file, or 'all'");
  estimate->add_option("--driver", driver_flag,
                       "defensive|normal|confident|alpha=<float>|all");
  estimate->add_option("--interp", interp_flag, "linear|sigmoid");
  estimate->add_option("--out", out_flag, "output directory");

  auto* warn = app.add_subcommand(
      "warn", "Simulate one run with personalized and baseline warnings");
  warn->add_option("--config", config_flag, "engine config JSON");
  warn->add_option("--scenario", scenario_flag, "built-in name or scenario file")
      ->required();
  warn->add_option("--driver", driver_flag,
                   "defensive|normal|confident|alpha=<float>")
      ->required();
  warn->add_option("--out", out_flag, "output directory");

  auto* riskmap = app.add_subcommand(
      "riskmap", "Render the risk-over-velocity grid at a simulation time");
  riskmap->add_option("--config", config_flag, "engine config JSON");
  riskmap->add_option("--scenario", scenario_flag, "built-in name or scenario file")
      ->required();
  riskmap->add_option("--driver", driver_flag,
                      "defensive|normal|confident|alpha=<float>")
      ->required();
  riskmap->add_option("--time", time_flag, "simulation time [s]")->required();
  riskmap->add_option("--out", out_flag, "output directory");

  auto* reproduce = app.add_subcommand(
      "reproduce", "Re-run the frozen acceptance campaigns and write a report");
  reproduce->add_option("--out", out_flag, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (estimate->parsed()) {
      return cmd_estimate(config_flag, scenario_flag, driver_flag, interp_flag,
                          out_flag);
    }
    if (warn->parsed()) {
      return cmd_warn(config_flag, scenario_flag, driver_flag, out_flag);
    }
    if (riskmap->parsed()) {
      return cmd_riskmap(config_flag, scenario_flag, driver_flag, time_flag,
                         out_flag);
    }
    if (reproduce->parsed()) {
      return cmd_reproduce(out_flag);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
