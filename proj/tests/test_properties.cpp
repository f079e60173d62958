#include <doctest.h>

#include <cmath>
#include <random>

#include "riskmaps/campaign.hpp"
#include "riskmaps/io.hpp"
#include "riskmaps/warning.hpp"

using namespace riskmaps;

namespace {

struct Lane {
  PathGeometry path = straight_path({0.0, 0.0}, {2500.0, 0.0});

  SceneSnapshot follow(double ego_v, double gap, double lead_v,
                       double v_des = 15.0) {
    SceneSnapshot snap;
    snap.ego.path_position = 200.0;
    snap.ego.velocity = ego_v;
    snap.ego_path = &path;
    snap.v_desired = v_des;
    OtherVehicle lead;
    lead.state.path_position = 200.0 + gap;
    lead.state.velocity = lead_v;
    lead.path = &path;
    snap.others.push_back(lead);
    return snap;
  }
};

}  // namespace

TEST_CASE("property: the warning signal never grows with distance") {
  Lane lane;
  const WarningConfig warning;
  const RiskConfig risk;
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> vel(2.0, 18.0);
  std::uniform_real_distribution<double> gap(6.0, 80.0);
  std::uniform_real_distribution<double> alpha(0.04, 1.0);
  for (int i = 0; i < 16; ++i) {
    const double ego_v = vel(rng);
    const double lead_v = vel(rng);
    const double g = gap(rng);
    const double a = alpha(rng);
    const double near_sig =
        warning_signal(lane.follow(ego_v, g, lead_v), a, warning, risk);
    const double far_sig =
        warning_signal(lane.follow(ego_v, g + 25.0, lead_v), a, warning, risk);
    CHECK(far_sig <= near_sig);
  }
}

TEST_CASE("property: baseline parity is bitwise at the normal factor") {
  Lane lane;
  const WarningConfig warning;
  const RiskConfig risk;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> vel(2.0, 18.0);
  std::uniform_real_distribution<double> gap(6.0, 120.0);
  const AccelerationProfile const_velocity;
  for (int i = 0; i < 16; ++i) {
    const SceneSnapshot snap = lane.follow(vel(rng), gap(rng), vel(rng));
    const double signal = warning_signal(snap, 0.5, warning, risk);
    const double raw = integrated_risk(snap.ego, *snap.ego_path, const_velocity,
                                       snap.others, 0.5, risk);
    CHECK(signal == raw);
  }
}

TEST_CASE("property: a harder-braking driver never reads less defensive") {
  Lane lane;
  const EngineConfig cfg = calibrated_config();
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> gap(15.0, 45.0);
  std::uniform_real_distribution<double> brake(0.0, 6.0);
  for (int i = 0; i < 12; ++i) {
    const SceneSnapshot snap = lane.follow(14.0, gap(rng), 9.0, 16.0);
    const double a_soft = -brake(rng);
    const double a_hard = a_soft - 1.5;
    const EstimationSample soft =
        estimate_step(snap, a_soft, cfg.estimator, cfg.planner, cfg.risk);
    const EstimationSample hard =
        estimate_step(snap, a_hard, cfg.estimator, cfg.planner, cfg.risk);
    REQUIRE(soft.interacting == hard.interacting);
    if (soft.interacting) {
      CHECK(hard.alpha_hat >= soft.alpha_hat - 1e-15);
    }
  }
}

TEST_CASE("property: the planner result is the exhaustive minimum") {
  Lane lane;
  const PlannerConfig planner;
  const RiskConfig risk;
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> vel(0.0, 18.0);
  std::uniform_real_distribution<double> gap(8.0, 150.0);
  std::uniform_real_distribution<double> alpha(0.04, 1.0);
  for (int i = 0; i < 10; ++i) {
    const SceneSnapshot snap = lane.follow(vel(rng), gap(rng), vel(rng));
    const PlanResult result = plan(snap, alpha(rng), planner, risk);
    for (const auto& cand : result.all_candidates) {
      CHECK(result.best_cost.total <= cand.cost.total);
    }
  }
}

TEST_CASE("property: planning commutes with re-evaluating the chosen profile") {
  Lane lane;
  const PlannerConfig planner;
  const RiskConfig risk;
  std::mt19937 rng(555);
  std::uniform_real_distribution<double> vel(0.0, 18.0);
  std::uniform_real_distribution<double> gap(8.0, 150.0);
  std::uniform_real_distribution<double> alpha(0.04, 1.0);
  for (int i = 0; i < 10; ++i) {
    const SceneSnapshot snap = lane.follow(vel(rng), gap(rng), vel(rng));
    const double a = alpha(rng);
    const PlanResult result = plan(snap, a, planner, risk);
    const CostBreakdown again =
        evaluate_cost(snap, result.best_profile, a, planner, risk);
    CHECK(again.total == result.best_cost.total);
  }
}

TEST_CASE("property: risk maps stay finite and non-negative") {
  Lane lane;
  const RiskConfig risk;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> vel(0.0, 18.0);
  std::uniform_real_distribution<double> gap(5.0, 100.0);
  std::uniform_real_distribution<double> alpha(0.04, 1.0);
  for (int i = 0; i < 6; ++i) {
    const SceneSnapshot snap = lane.follow(vel(rng), gap(rng), vel(rng));
    const RiskMapGrid grid = render_risk_map(snap, alpha(rng), risk);
    CHECK(grid.risk_values.allFinite());
    CHECK(grid.risk_values.minCoeff() >= 0.0);
  }
}

TEST_CASE("property: scenario JSON round-trips under random perturbations") {
  std::mt19937 rng(808);
  std::uniform_real_distribution<double> jitter(-0.37, 0.83);
  auto scenarios = builtin_scenarios();
  for (auto& spec : scenarios) {
    for (auto& vehicle : spec.vehicles) {
      vehicle.path_position += jitter(rng);
      vehicle.velocity = std::max(0.0, vehicle.velocity + jitter(rng));
    }
    spec.duration += std::abs(jitter(rng));
    const std::string once = scenario_to_json(spec);
    const ScenarioSpec parsed = scenario_from_json(once);
    CHECK(scenario_to_json(parsed) == once);
    CHECK(parsed.vehicles[0].path_position == spec.vehicles[0].path_position);
  }
}

TEST_CASE("property: campaigns are bitwise identical across thread counts") {
  const auto scenarios = builtin_scenarios();
  const auto drivers = standard_driver_types();
  const EngineConfig cfg = calibrated_config();
  const CampaignReport serial = run_campaign(scenarios, drivers, cfg, 1);
  const CampaignReport parallel = run_campaign(scenarios, drivers, cfg, 4);
  REQUIRE(serial.runs.size() == parallel.runs.size());
  for (std::size_t i = 0; i < serial.runs.size(); ++i) {
    CHECK(serial.runs[i].scenario == parallel.runs[i].scenario);
    CHECK(serial.runs[i].driver == parallel.runs[i].driver);
    CHECK(serial.runs[i].estimation.mean == parallel.runs[i].estimation.mean);
    CHECK(serial.runs[i].estimation.stddev ==
          parallel.runs[i].estimation.stddev);
    CHECK(serial.runs[i].errors.first_personalized_warning ==
          parallel.runs[i].errors.first_personalized_warning);
  }
  REQUIRE(serial.aggregates.size() == parallel.aggregates.size());
  for (std::size_t i = 0; i < serial.aggregates.size(); ++i) {
    CHECK(serial.aggregates[i].mean == parallel.aggregates[i].mean);
    CHECK(serial.aggregates[i].stddev == parallel.aggregates[i].stddev);
  }
}
