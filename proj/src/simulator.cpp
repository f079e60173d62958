#include "riskmaps/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace riskmaps {

double script_accel(const std::vector<ScriptPhase>& script, double t) {
  for (const auto& phase : script) {
    if (phase.t_begin <= t && t < phase.t_end) return phase.accel;
  }
  return 0.0;
}

void validate(const ScenarioSpec& spec) {
  if (!(spec.duration > 0.0)) {
    throw std::invalid_argument("scenario duration must be positive");
  }
  if (!(spec.step > 0.0)) {
    throw std::invalid_argument("scenario step must be positive");
  }
  if (spec.paths.empty()) {
    throw std::invalid_argument("scenario needs at least one path");
  }
  if (spec.vehicles.empty()) {
    throw std::invalid_argument("scenario needs at least one vehicle");
  }
  if (spec.ego_index < 0 ||
      spec.ego_index >= static_cast<int>(spec.vehicles.size())) {
    throw std::invalid_argument("ego index out of range");
  }
  for (const auto& v : spec.vehicles) {
    if (v.path_index < 0 || v.path_index >= static_cast<int>(spec.paths.size())) {
      throw std::invalid_argument("vehicle path index out of range");
    }
    if (v.velocity < 0.0) {
      throw std::invalid_argument("vehicle velocity must be non-negative");
    }
  }
}

bool wants_warning_for(const ScenarioSpec& spec, const std::string& driver) {
  auto it = spec.wants_warning.find(driver);
  return it != spec.wants_warning.end() && it->second;
}

SceneSnapshot make_snapshot(const ScenarioSpec& spec,
                            const std::vector<VehicleState>& vehicles,
                            double t) {
  SceneSnapshot snap;
  snap.ego = vehicles[spec.ego_index];
  snap.ego.timestamp = t;
  snap.ego_path = &spec.paths[spec.vehicles[spec.ego_index].path_index];
  snap.v_desired = spec.ego_v_desired;
  for (int i = 0; i < static_cast<int>(vehicles.size()); ++i) {
    if (i == spec.ego_index) continue;
    OtherVehicle other;
    other.state = vehicles[i];
    other.state.timestamp = t;
    other.path = &spec.paths[spec.vehicles[i].path_index];
    snap.others.push_back(other);  // empty profile: constant velocity
  }
  return snap;
}

SimulationTrace run_scenario(const ScenarioSpec& spec, const EngineConfig& cfg,
                             double ground_truth_alpha, bool wants_warning,
                             std::optional<double> warn_alpha) {
  validate(spec);
  SimulationTrace trace;
  trace.scenario = spec.name;
  trace.ground_truth_alpha = ground_truth_alpha;
  trace.warn_alpha = warn_alpha.value_or(ground_truth_alpha);
  const double personal_weight = weight_for(trace.warn_alpha, cfg.warning.weight);

  std::vector<VehicleState> vehicles;
  vehicles.reserve(spec.vehicles.size());
  for (const auto& v : spec.vehicles) {
    VehicleState s;
    s.path_position = v.path_position;
    s.velocity = v.velocity;
    s.length = v.length;
    s.width = v.width;
    vehicles.push_back(s);
  }

  const int n = static_cast<int>(std::llround(spec.duration / spec.step));
  const AccelerationProfile const_velocity;
  trace.steps.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * spec.step;
    const SceneSnapshot snap = make_snapshot(spec, vehicles, t);
    const double a_gt =
        plan(snap, ground_truth_alpha, cfg.planner, cfg.risk).first_step_acceleration;

    StepRecord rec;
    rec.t = t;
    rec.vehicles = vehicles;
    for (auto& v : rec.vehicles) v.timestamp = t;
    rec.ego_acceleration = a_gt;
    rec.estimation =
        estimate_step(snap, a_gt, cfg.estimator, cfg.planner, cfg.risk);
    const double personalized =
        personal_weight * integrated_risk(snap.ego, *snap.ego_path,
                                          const_velocity, snap.others,
                                          trace.warn_alpha, cfg.risk);
    const double baseline =
        integrated_risk(snap.ego, *snap.ego_path, const_velocity, snap.others,
                        kAlphaNormal, cfg.risk);
    rec.warning =
        make_warning_record(t, personalized, baseline, wants_warning, cfg.warning);
    trace.steps.push_back(std::move(rec));

    if (k < n) {
      AccelerationProfile ego_step;
      ego_step.phases.push_back({a_gt, spec.step});
      auto& ego = vehicles[spec.ego_index];
      auto [ep, ev] = advance_along_profile(ego.path_position, ego.velocity,
                                            ego_step, spec.step);
      ego.path_position = ep;
      ego.velocity = ev;
      ego.acceleration = a_gt;
      for (int i = 0; i < static_cast<int>(vehicles.size()); ++i) {
        if (i == spec.ego_index) continue;
        const double a = script_accel(spec.vehicles[i].script, t);
        AccelerationProfile other_step;
        other_step.phases.push_back({a, spec.step});
        auto [op, ov] = advance_along_profile(vehicles[i].path_position,
                                              vehicles[i].velocity, other_step,
                                              spec.step);
        vehicles[i].path_position = op;
        vehicles[i].velocity = ov;
        vehicles[i].acceleration = a;
      }
    }
  }
  return trace;
}

namespace {

ScenarioSpec following_base() {
  ScenarioSpec spec;
  spec.paths.push_back(straight_path({0.0, 0.0}, {600.0, 0.0}));
  spec.ego_index = 0;
  spec.ego_v_desired = 16.0;
  spec.step = 0.1;
  VehicleSpec ego;
  ego.path_position = 0.0;
  ego.velocity = 14.0;
  spec.vehicles.push_back(ego);
  return spec;
}

ScenarioSpec crossing_base() {
  ScenarioSpec spec;
  // Ego heads +y and crosses the others' +x lane at the origin.
  spec.paths.push_back(straight_path({0.0, -60.0}, {0.0, 260.0}));
  spec.paths.push_back(straight_path({-60.0, 0.0}, {260.0, 0.0}));
  spec.ego_index = 0;
  spec.ego_v_desired = 13.0;
  spec.step = 0.1;
  return spec;
}

}  // namespace

std::vector<ScenarioSpec> builtin_scenarios() {
  std::vector<ScenarioSpec> out;

  {
    ScenarioSpec spec = following_base();
    spec.name = "following_high";
    spec.description =
        "Car following at close range; the lead brakes hard, eases off, then "
        "recovers.";
    spec.risk_class = "high";
    VehicleSpec lead;
    lead.path_position = 48.0;
    lead.velocity = 14.0;
    lead.script = {{1.5, 3.5, -1.8}, {3.5, 5.3, -0.7}, {5.3, 6.8, 0.5}};
    spec.vehicles.push_back(lead);
    spec.duration = 7.0;
    spec.wants_warning = {{"defensive", true}, {"normal", true}, {"confident", false}};
    out.push_back(std::move(spec));
  }

  {
    ScenarioSpec spec = following_base();
    spec.name = "following_medium";
    spec.description =
        "Car following behind a slightly slower lead that decelerates gently.";
    spec.risk_class = "medium";
    VehicleSpec lead;
    lead.path_position = 44.0;
    lead.velocity = 13.0;
    lead.script = {{0.0, 10.0, -0.4}};
    spec.vehicles.push_back(lead);
    spec.duration = 11.0;
    spec.wants_warning = {{"defensive", false}, {"normal", false}, {"confident", false}};
    out.push_back(std::move(spec));
  }

  {
    ScenarioSpec spec = crossing_base();
    spec.name = "crossing_high";
    spec.description =
        "Intersection approach with two crossing cars arriving close to the "
        "ego's crossing time.";
    spec.risk_class = "high";
    VehicleSpec ego;
    ego.path_position = 18.0;  // 42 m before the crossing
    ego.velocity = 10.0;
    spec.vehicles.push_back(ego);
    VehicleSpec car1;
    car1.path_index = 1;
    car1.path_position = 46.0;  // 14 m before the crossing
    car1.velocity = 10.0;
    spec.vehicles.push_back(car1);
    VehicleSpec car2;
    car2.path_index = 1;
    car2.path_position = 30.2;  // 29.8 m before the crossing
    car2.velocity = 10.0;
    spec.vehicles.push_back(car2);
    spec.duration = 2.6;
    spec.wants_warning = {{"defensive", true}, {"normal", false}, {"confident", false}};
    out.push_back(std::move(spec));
  }

  {
    ScenarioSpec spec = crossing_base();
    spec.name = "crossing_medium";
    spec.description =
        "Intersection approach with two crossing cars that clear the "
        "intersection ahead of the ego.";
    spec.risk_class = "medium";
    VehicleSpec ego;
    ego.path_position = 21.9;  // 38.1 m before the crossing
    ego.velocity = 10.0;
    spec.vehicles.push_back(ego);
    VehicleSpec car1;
    car1.path_index = 1;
    car1.path_position = 48.0;  // 12 m before the crossing
    car1.velocity = 10.0;
    spec.vehicles.push_back(car1);
    VehicleSpec car2;
    car2.path_index = 1;
    car2.path_position = 33.0;  // 27 m before the crossing
    car2.velocity = 10.0;
    spec.vehicles.push_back(car2);
    spec.duration = 3.3;
    spec.wants_warning = {{"defensive", true}, {"normal", false}, {"confident", false}};
    out.push_back(std::move(spec));
  }

  return out;
}

std::optional<ScenarioSpec> find_builtin_scenario(const std::string& name) {
  for (auto& spec : builtin_scenarios()) {
    if (spec.name == name) return spec;
  }
  return std::nullopt;
}

}  // namespace riskmaps
