#include "riskmaps/io.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace riskmaps {

using nlohmann::json;

std::string format_double(double value) {
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

namespace {

json scenario_json(const ScenarioSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["description"] = spec.description;
  j["risk_class"] = spec.risk_class;
  json paths = json::array();
  for (const auto& path : spec.paths) {
    json waypoints = json::array();
    for (const auto& wp : path.waypoints()) {
      waypoints.push_back({wp.x(), wp.y()});
    }
    paths.push_back({{"waypoints", waypoints}});
  }
  j["paths"] = paths;
  json vehicles = json::array();
  for (const auto& v : spec.vehicles) {
    json script = json::array();
    for (const auto& phase : v.script) {
      script.push_back({phase.t_begin, phase.t_end, phase.accel});
    }
    vehicles.push_back({{"path", v.path_index},
                        {"position", v.path_position},
                        {"velocity", v.velocity},
                        {"length", v.length},
                        {"width", v.width},
                        {"script", script}});
  }
  j["vehicles"] = vehicles;
  j["ego"] = spec.ego_index;
  j["ego_desired_velocity"] = spec.ego_v_desired;
  j["ground_truth_alpha"] = spec.ground_truth_alpha;
  j["duration"] = spec.duration;
  j["step"] = spec.step;
  j["wants_warning"] = spec.wants_warning;
  return j;
}

ScenarioSpec scenario_from(const json& j) {
  ScenarioSpec spec;
  spec.name = j.at("name").get<std::string>();
  spec.description = j.value("description", std::string{});
  spec.risk_class = j.value("risk_class", std::string{});
  for (const auto& jp : j.at("paths")) {
    std::vector<Vec2> waypoints;
    for (const auto& wp : jp.at("waypoints")) {
      waypoints.emplace_back(wp.at(0).get<double>(), wp.at(1).get<double>());
    }
    spec.paths.emplace_back(std::move(waypoints));
  }
  for (const auto& jv : j.at("vehicles")) {
    VehicleSpec v;
    v.path_index = jv.at("path").get<int>();
    v.path_position = jv.at("position").get<double>();
    v.velocity = jv.at("velocity").get<double>();
    v.length = jv.value("length", 4.0);
    v.width = jv.value("width", 2.0);
    if (jv.contains("script")) {
      for (const auto& phase : jv.at("script")) {
        v.script.push_back({phase.at(0).get<double>(), phase.at(1).get<double>(),
                            phase.at(2).get<double>()});
      }
    }
    spec.vehicles.push_back(std::move(v));
  }
  spec.ego_index = j.value("ego", 0);
  spec.ego_v_desired = j.at("ego_desired_velocity").get<double>();
  spec.ground_truth_alpha = j.value("ground_truth_alpha", 0.5);
  spec.duration = j.at("duration").get<double>();
  spec.step = j.value("step", 0.1);
  if (j.contains("wants_warning")) {
    spec.wants_warning =
        j.at("wants_warning").get<std::map<std::string, bool>>();
  }
  validate(spec);
  return spec;
}

}  // namespace

std::string scenario_to_json(const ScenarioSpec& spec) {
  return scenario_json(spec).dump(2) + "\n";
}

ScenarioSpec scenario_from_json(const std::string& text) {
  try {
    return scenario_from(json::parse(text));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("invalid scenario: ") + e.what());
  }
}

ScenarioSpec load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot read scenario file: " + file.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    return scenario_from_json(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(file.string() + ": " + e.what());
  }
}

void save_scenario(const ScenarioSpec& spec,
                   const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) {
    throw std::runtime_error("cannot write scenario file: " + file.string());
  }
  out << scenario_to_json(spec);
}

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
  if (!file.parent_path().empty()) {
    std::filesystem::create_directories(file.parent_path());
  }
  std::ofstream out(file);
  if (!out) {
    throw std::runtime_error("cannot write file: " + file.string());
  }
  return out;
}

}  // namespace

void write_estimation_csv(const SimulationTrace& trace,
                          const std::filesystem::path& file) {
  auto out = open_out(file);
  out << "t,a_def,a_conf,a_driver,alpha_hat,interacting\n";
  for (const auto& step : trace.steps) {
    const auto& e = step.estimation;
    out << format_double(e.timestamp) << ',' << format_double(e.a_def) << ','
        << format_double(e.a_conf) << ',' << format_double(e.a_driver) << ','
        << format_double(e.alpha_hat) << ',' << (e.interacting ? 1 : 0)
        << '\n';
  }
}

void write_warning_csv(const SimulationTrace& trace,
                       const std::filesystem::path& file) {
  auto out = open_out(file);
  out << "t,personalized_signal,baseline_signal,personalized_warn,baseline_warn\n";
  for (const auto& step : trace.steps) {
    const auto& w = step.warning;
    out << format_double(w.timestamp) << ','
        << format_double(w.personalized_signal) << ','
        << format_double(w.baseline_signal) << ','
        << (w.personalized_warn ? 1 : 0) << ',' << (w.baseline_warn ? 1 : 0)
        << '\n';
  }
}

void write_states_csv(const SimulationTrace& trace,
                      const std::filesystem::path& file) {
  auto out = open_out(file);
  out << "t,vehicle,path_position,velocity,acceleration\n";
  for (const auto& step : trace.steps) {
    for (std::size_t i = 0; i < step.vehicles.size(); ++i) {
      const auto& v = step.vehicles[i];
      out << format_double(step.t) << ',' << i << ','
          << format_double(v.path_position) << ',' << format_double(v.velocity)
          << ',' << format_double(v.acceleration) << '\n';
    }
  }
}

void write_riskmap_csv(const RiskMapGrid& grid,
                       const std::filesystem::path& file) {
  auto out = open_out(file);
  out << "velocity\\time";
  for (double t : grid.time_axis) out << ',' << format_double(t);
  out << '\n';
  for (std::size_t i = 0; i < grid.velocity_axis.size(); ++i) {
    out << format_double(grid.velocity_axis[i]);
    for (std::size_t j = 0; j < grid.time_axis.size(); ++j) {
      out << ',' << format_double(grid.risk_values(static_cast<int>(i),
                                                   static_cast<int>(j)));
    }
    out << '\n';
  }
}

void write_riskmap_json(const RiskMapGrid& grid,
                        const std::filesystem::path& file) {
  json j;
  j["time_axis"] = grid.time_axis;
  j["velocity_axis"] = grid.velocity_axis;
  json rows = json::array();
  for (std::size_t i = 0; i < grid.velocity_axis.size(); ++i) {
    json row = json::array();
    for (std::size_t j2 = 0; j2 < grid.time_axis.size(); ++j2) {
      row.push_back(grid.risk_values(static_cast<int>(i), static_cast<int>(j2)));
    }
    rows.push_back(std::move(row));
  }
  j["risk_values"] = rows;
  json overlays = json::array();
  for (const auto& overlay : grid.overlays) {
    overlays.push_back({{"label", overlay.label}, {"velocity", overlay.velocity}});
  }
  j["overlays"] = overlays;
  auto out = open_out(file);
  out << j.dump(2) << '\n';
}

std::string format_estimation_table(const CampaignReport& report) {
  std::ostringstream out;
  out << "driver      ground_truth  estimated_mean  diff    std     runs\n";
  for (const auto& agg : report.aggregates) {
    out << std::left << std::setw(12) << agg.driver << std::right
        << std::fixed << std::setprecision(2) << std::setw(12)
        << agg.ground_truth_alpha << std::setw(16) << agg.mean << std::setw(8)
        << agg.diff_to_ground_truth << std::setw(8) << agg.stddev
        << std::setw(9) << agg.n_runs << '\n';
  }
  return out.str();
}

namespace {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::true_positive: return "TP";
    case Outcome::true_negative: return "TN";
    case Outcome::false_positive: return "FP";
    case Outcome::false_negative: return "FN";
  }
  return "?";
}

}  // namespace

void write_campaign_outputs(const CampaignReport& report,
                            const EngineConfig& cfg,
                            const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);

  {
    auto out = open_out(directory / "estimation_table.csv");
    out << "driver,ground_truth,estimated_mean,diff,std,runs\n";
    for (const auto& agg : report.aggregates) {
      out << agg.driver << ',' << format_double(agg.ground_truth_alpha) << ','
          << format_double(agg.mean) << ','
          << format_double(agg.diff_to_ground_truth) << ','
          << format_double(agg.stddev) << ',' << agg.n_runs << '\n';
    }
  }

  {
    json errors = json::array();
    for (const auto& run : report.runs) {
      errors.push_back(
          {{"scenario", run.scenario},
           {"driver", run.driver},
           {"personalized_false_negatives", run.errors.personalized_false_negatives},
           {"personalized_false_positives", run.errors.personalized_false_positives},
           {"baseline_false_negatives", run.errors.baseline_false_negatives},
           {"baseline_false_positives", run.errors.baseline_false_positives},
           {"personalized_warned", run.errors.personalized_warned},
           {"baseline_warned", run.errors.baseline_warned},
           {"first_personalized_warning", run.errors.first_personalized_warning},
           {"first_baseline_warning", run.errors.first_baseline_warning}});
    }
    auto out = open_out(directory / "warning_errors.json");
    out << errors.dump(2) << '\n';
  }

  for (const auto& run : report.runs) {
    const std::string stem = run.scenario + "_" + run.driver;
    write_estimation_csv(run.trace, directory / (stem + "_estimation.csv"));
    write_warning_csv(run.trace, directory / (stem + "_warnings.csv"));
    write_states_csv(run.trace, directory / (stem + "_states.csv"));
  }

  {
    json runs = json::array();
    for (const auto& run : report.runs) {
      // Run-level outcome: did the system warn at least once vs. the wish.
      const bool wants = !run.trace.steps.empty() &&
                         run.trace.steps.front().warning.driver_wants_warning;
      runs.push_back({{"scenario", run.scenario},
                      {"driver", run.driver},
                      {"ground_truth_alpha", run.ground_truth_alpha},
                      {"driver_wants_warning", wants},
                      {"estimation_mean", run.estimation.mean},
                      {"estimation_std", run.estimation.stddev},
                      {"diff_to_ground_truth", run.estimation.diff_to_ground_truth},
                      {"n_samples", run.estimation.n_samples},
                      {"personalized_outcome",
                       outcome_name(classify(run.errors.personalized_warned, wants))},
                      {"baseline_outcome",
                       outcome_name(classify(run.errors.baseline_warned, wants))}});
    }
    const auto now = std::chrono::system_clock::now();
    const std::time_t stamp = std::chrono::system_clock::to_time_t(now);
    std::ostringstream created;
    created << std::put_time(std::gmtime(&stamp), "%Y-%m-%dT%H:%M:%SZ");
    json manifest;
    manifest["created"] = created.str();  // sole timestamp in the output tree
    manifest["engine_config"] = json::parse(engine_config_to_json(cfg));
    manifest["runs"] = runs;
    auto out = open_out(directory / "manifest.json");
    out << manifest.dump(2) << '\n';
  }
}

}  // namespace riskmaps
