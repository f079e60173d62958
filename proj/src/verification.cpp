#include "riskmaps/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

namespace riskmaps {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

Mat2 random_spd(std::mt19937_64& rng, double eig_lo, double eig_hi) {
  std::uniform_real_distribution<double> eig(eig_lo, eig_hi);
  std::uniform_real_distribution<double> ang(0.0, std::numbers::pi);
  const double l1 = eig(rng);
  const double l2 = eig(rng);
  const double th = ang(rng);
  Mat2 rot;
  rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  Mat2 diag = Mat2::Zero();
  diag(0, 0) = l1;
  diag(1, 1) = l2;
  return rot * diag * rot.transpose();
}

// Criterion 1: Monte Carlo oracle for the closed-form overlap risk.
CriterionResult check_overlap_oracle() {
  CriterionResult res{1, "overlap-risk oracle", false, "", 0.0};
  const auto start = Clock::now();
  std::mt19937_64 rng(20250814);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  constexpr int kPairs = 20;
  constexpr int kSamples = 1'500'000;
  double worst_rel = 0.0;
  for (int i = 0; i < kPairs; ++i) {
    const Mat2 sigma1 = random_spd(rng, 0.6, 3.5);
    const Mat2 sigma2 = random_spd(rng, 0.6, 3.5);
    const Mat2 sum = sigma1 + sigma2;
    const Mat2 sum_inv = sum.inverse();
    Vec2 d;
    do {
      d = Vec2(coord(rng), coord(rng));
    } while (d.dot(sum_inv * d) > 6.0);
    const double closed = overlap_density(d, sum);

    // Sample x ~ N(0, sigma1), average the N(d, sigma2) density.
    const Eigen::LLT<Mat2> llt(sigma1);
    const Mat2 chol = llt.matrixL();
    const Mat2 inv2 = sigma2.inverse();
    const double norm2 =
        1.0 / (2.0 * std::numbers::pi * std::sqrt(sigma2.determinant()));
    double acc = 0.0;
    for (int k = 0; k < kSamples; ++k) {
      const double z0 = gauss(rng);
      const double z1 = gauss(rng);
      const double x0 = chol(0, 0) * z0 - d.x();
      const double x1 = chol(1, 0) * z0 + chol(1, 1) * z1 - d.y();
      const double q = x0 * (inv2(0, 0) * x0 + inv2(0, 1) * x1) +
                       x1 * (inv2(1, 0) * x0 + inv2(1, 1) * x1);
      acc += std::exp(-0.5 * q) * norm2;
    }
    const double mc = acc / kSamples;
    worst_rel = std::max(worst_rel, std::fabs(mc - closed) / closed);
  }
  res.seconds = elapsed_seconds(start);
  res.pass = worst_rel <= 0.02 && res.seconds < 30.0;
  res.detail = std::to_string(kPairs) + " covariance pairs, " +
               std::to_string(kSamples) + " samples each, worst relative error " +
               fmt(worst_rel) + " (tolerance 0.02)";
  return res;
}

// Criterion 2: exactness of the risk-factor interpolation rules.
CriterionResult check_interpolation() {
  CriterionResult res{2, "risk-factor interpolation exactness", false, "", 0.0};
  const auto start = Clock::now();
  const double eps_plan = 0.05;
  const double k = 6.0;
  double worst = 0.0;
  const std::pair<double, double> anchor_pairs[] = {
      {-2.0, 1.0}, {-0.5, 0.5}, {-3.5, 2.0}, {0.5, -1.0}, {-1.0, -0.1}};
  for (const auto& [a_def, a_conf] : anchor_pairs) {
    const auto at = [&](double a) {
      return interpolate_linear(a, a_def, a_conf, eps_plan).value();
    };
    worst = std::max(worst, std::fabs(at(a_conf) - 0.04));
    worst = std::max(worst, std::fabs(at(a_def) - 1.0));
    worst = std::max(worst, std::fabs(at(0.5 * (a_def + a_conf)) - 0.52));
    // Clamping beyond both anchors.
    const double beyond_def = a_def + 2.0 * (a_def - a_conf);
    const double beyond_conf = a_conf - 2.0 * (a_def - a_conf);
    worst = std::max(worst, std::fabs(at(beyond_def) - 1.0));
    worst = std::max(worst, std::fabs(at(beyond_conf) - 0.04));
    // Sigmoid agrees with linear at u in {0, 1/2, 1}.
    for (double a : {a_conf, 0.5 * (a_def + a_conf), a_def}) {
      const double lin = at(a);
      const double sig =
          interpolate_sigmoid(a, a_def, a_conf, eps_plan, k).value();
      worst = std::max(worst, std::fabs(sig - lin));
    }
  }
  // Uninformative anchors fall back to "undetermined".
  const bool undetermined =
      !interpolate_linear(0.0, 0.02, 0.0, eps_plan).has_value() &&
      !interpolate_sigmoid(0.0, 0.02, 0.0, eps_plan, k).has_value();
  res.seconds = elapsed_seconds(start);
  res.pass = worst <= 1e-12 && undetermined;
  res.detail = "endpoints, midpoint 0.52, clamps, sigmoid agreement; worst |err| " +
               fmt(worst) + " (tolerance 1e-12)";
  return res;
}

const RunResult& find_run(const CampaignReport& report, const std::string& scenario,
                          const std::string& driver) {
  for (const auto& run : report.runs) {
    if (run.scenario == scenario && run.driver == driver) return run;
  }
  throw std::logic_error("campaign is missing " + scenario + "/" + driver);
}

const DriverAggregate& find_aggregate(const CampaignReport& report,
                                      const std::string& driver) {
  for (const auto& agg : report.aggregates) {
    if (agg.driver == driver) return agg;
  }
  throw std::logic_error("campaign is missing aggregate for " + driver);
}

// Criterion 3: estimation campaign recovers the driver types.
CriterionResult check_estimation_bands(const CampaignReport& report,
                                       double campaign_seconds) {
  CriterionResult res{3, "estimation campaign bands", false, "", campaign_seconds};
  const auto& def = find_aggregate(report, "defensive");
  const auto& norm = find_aggregate(report, "normal");
  const auto& conf = find_aggregate(report, "confident");
  const bool bands = def.mean >= 0.85 && def.mean <= 1.0 && norm.mean >= 0.38 &&
                     norm.mean <= 0.62 && conf.mean >= 0.04 && conf.mean <= 0.25;
  const bool ordering = conf.mean < norm.mean && norm.mean < def.mean;
  const bool spread =
      def.stddev <= 0.15 && norm.stddev <= 0.15 && conf.stddev <= 0.15;
  res.pass = bands && ordering && spread && campaign_seconds < 120.0;
  res.detail = "defensive " + fmt(def.mean) + "±" + fmt(def.stddev) +
               " (band 0.85..1.0), normal " + fmt(norm.mean) + "±" +
               fmt(norm.stddev) + " (band 0.38..0.62), confident " +
               fmt(conf.mean) + "±" + fmt(conf.stddev) +
               " (band 0.04..0.25), std limit 0.15";
  return res;
}

// Criterion 4: the personalized system removes the baseline's errors.
CriterionResult check_warning_patterns(const CampaignReport& report) {
  CriterionResult res{4, "personalized warning patterns", false, "", 0.0};
  const auto start = Clock::now();
  const auto& fh_def = find_run(report, "following_high", "defensive").errors;
  const auto& ch_def = find_run(report, "crossing_high", "defensive").errors;
  const auto& fm_conf = find_run(report, "following_medium", "confident").errors;
  const auto& cm_conf = find_run(report, "crossing_medium", "confident").errors;
  const bool a = !fh_def.baseline_warned && fh_def.personalized_warned &&
                 fh_def.first_personalized_warning >= 2.0 &&
                 fh_def.first_personalized_warning <= 4.0;
  const bool b = !ch_def.baseline_warned && ch_def.personalized_warned;
  const bool c = fm_conf.baseline_warned && !fm_conf.personalized_warned &&
                 cm_conf.baseline_warned && !cm_conf.personalized_warned;
  res.seconds = elapsed_seconds(start);
  res.pass = a && b && c;
  res.detail =
      std::string("defensive following: baseline ") +
      (fh_def.baseline_warned ? "warned" : "silent") + ", personalized first at " +
      fmt(fh_def.first_personalized_warning) +
      " s (window 2..4); defensive crossing: baseline " +
      (ch_def.baseline_warned ? "warned" : "silent") + ", personalized " +
      (ch_def.personalized_warned ? "warned" : "silent") +
      "; confident medium runs: baseline " +
      ((fm_conf.baseline_warned && cm_conf.baseline_warned) ? "warned" : "silent") +
      ", personalized " +
      ((fm_conf.personalized_warned || cm_conf.personalized_warned) ? "warned"
                                                                    : "silent");
  return res;
}

// Criterion 5: a normal driver's personalized system is the baseline.
CriterionResult check_baseline_parity(const EngineConfig& cfg) {
  CriterionResult res{5, "normal-driver baseline parity", false, "", 0.0};
  const auto start = Clock::now();
  double max_diff = 0.0;
  bool any_warn = false;
  for (const char* name : {"following_medium", "crossing_medium"}) {
    const ScenarioSpec spec = *find_builtin_scenario(name);
    const SimulationTrace trace =
        run_scenario(spec, cfg, kAlphaNormal, wants_warning_for(spec, "normal"));
    for (const auto& step : trace.steps) {
      max_diff = std::max(max_diff, std::fabs(step.warning.personalized_signal -
                                              step.warning.baseline_signal));
      any_warn = any_warn || step.warning.personalized_warn ||
                 step.warning.baseline_warn;
    }
  }
  res.seconds = elapsed_seconds(start);
  res.pass = max_diff == 0.0 && !any_warn;
  res.detail = "max |personalized - baseline| " + fmt(max_diff) +
               " (must be exactly 0); medium fixtures " +
               (any_warn ? "warned" : "stayed silent");
  return res;
}

// Criterion 6: planned behavior orders with the risk factor.
CriterionResult check_plan_split(const EngineConfig& cfg) {
  CriterionResult res{6, "plan split across driver types", false, "", 0.0};
  const auto start = Clock::now();
  // Frozen mid-episode snapshot of the high-risk following scenario: the
  // lead has braked to 11 m/s at a 38 m gap while the ego still runs 14 m/s.
  const ScenarioSpec spec = *find_builtin_scenario("following_high");
  std::vector<VehicleState> vehicles;
  for (const auto& v : spec.vehicles) {
    VehicleState s;
    s.path_position = v.path_position;
    s.velocity = v.velocity;
    s.length = v.length;
    s.width = v.width;
    vehicles.push_back(s);
  }
  vehicles[0].path_position = 40.0;
  vehicles[0].velocity = 14.0;
  vehicles[1].path_position = 78.0;
  vehicles[1].velocity = 11.0;
  const SceneSnapshot snap = make_snapshot(spec, vehicles, 0.0);
  const double a_def =
      plan(snap, kAlphaDefensive, cfg.planner, cfg.risk).first_step_acceleration;
  const double a_norm =
      plan(snap, kAlphaNormal, cfg.planner, cfg.risk).first_step_acceleration;
  const double a_conf =
      plan(snap, kAlphaConfident, cfg.planner, cfg.risk).first_step_acceleration;
  res.seconds = elapsed_seconds(start);
  res.pass = a_def < 0.0 && a_conf > 0.0 && a_def <= a_norm && a_norm <= a_conf;
  res.detail = "first-step acceleration: defensive " + fmt(a_def) + ", normal " +
               fmt(a_norm) + ", confident " + fmt(a_conf) +
               " (defensive < 0 < confident, non-increasing in alpha)";
  return res;
}

// Criterion 7: estimation falls back once the interaction ends.
CriterionResult check_interaction_fallback(const CampaignReport& report) {
  CriterionResult res{7, "post-interaction fallback", false, "", 0.0};
  const auto start = Clock::now();
  const auto& run = find_run(report, "crossing_medium", "defensive");
  const auto& steps = run.trace.steps;
  std::size_t last_interacting = 0;
  bool saw_interacting = false;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].estimation.interacting) {
      last_interacting = i;
      saw_interacting = true;
    }
  }
  const std::size_t tail =
      saw_interacting ? steps.size() - 1 - last_interacting : 0;
  bool tail_ok = saw_interacting && tail > 0;
  for (std::size_t i = last_interacting + 1; tail_ok && i < steps.size(); ++i) {
    tail_ok = !steps[i].estimation.interacting &&
              steps[i].estimation.alpha_hat == kAlphaNormal;
  }
  res.seconds = elapsed_seconds(start);
  res.pass = tail_ok;
  res.detail = std::to_string(tail) +
               " trailing non-interacting samples, all with alpha_hat 0.5";
  return res;
}

bool traces_identical(const SimulationTrace& a, const SimulationTrace& b) {
  if (a.steps.size() != b.steps.size()) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    const auto& x = a.steps[i];
    const auto& y = b.steps[i];
    if (x.t != y.t || x.ego_acceleration != y.ego_acceleration) return false;
    if (x.vehicles.size() != y.vehicles.size()) return false;
    for (std::size_t v = 0; v < x.vehicles.size(); ++v) {
      if (x.vehicles[v].path_position != y.vehicles[v].path_position ||
          x.vehicles[v].velocity != y.vehicles[v].velocity) {
        return false;
      }
    }
    if (x.estimation.alpha_hat != y.estimation.alpha_hat ||
        x.estimation.interacting != y.estimation.interacting ||
        x.warning.personalized_signal != y.warning.personalized_signal ||
        x.warning.baseline_signal != y.warning.baseline_signal) {
      return false;
    }
  }
  return true;
}

int cells_above(const RiskMapGrid& grid, double threshold) {
  int count = 0;
  for (int i = 0; i < grid.risk_values.rows(); ++i) {
    for (int j = 0; j < grid.risk_values.cols(); ++j) {
      if (grid.risk_values(i, j) > threshold) ++count;
    }
  }
  return count;
}

SceneSnapshot snapshot_at(const SimulationTrace& trace, const ScenarioSpec& spec,
                          double t) {
  const std::size_t k = static_cast<std::size_t>(std::llround(t / spec.step));
  return make_snapshot(spec, trace.steps.at(k).vehicles, trace.steps.at(k).t);
}

// Criterion 8: property suites.
CriterionResult check_properties(const EngineConfig& cfg) {
  CriterionResult res{8, "property suites", false, "", 0.0};
  const auto start = Clock::now();
  std::mt19937_64 rng(424242);
  std::vector<std::string> failures;

  // Risk monotonicity in distance: same-lane constant-velocity pairs.
  {
    const PathGeometry lane = straight_path({0.0, 0.0}, {2000.0, 0.0});
    std::uniform_real_distribution<double> vel(2.0, 20.0);
    std::uniform_real_distribution<double> gap(5.0, 60.0);
    std::uniform_real_distribution<double> alpha_dist(0.04, 1.0);
    for (int i = 0; i < 24; ++i) {
      VehicleState ego;
      ego.path_position = 100.0;
      ego.velocity = vel(rng);
      const double v_other = vel(rng);
      const double g1 = gap(rng);
      const double g2 = g1 + gap(rng);
      const double alpha = alpha_dist(rng);
      const AccelerationProfile coast;
      double r_near = 0.0;
      double r_far = 0.0;
      for (int which = 0; which < 2; ++which) {
        OtherVehicle other;
        other.state.path_position = 100.0 + (which == 0 ? g1 : g2);
        other.state.velocity = v_other;
        other.path = &lane;
        (which == 0 ? r_near : r_far) = integrated_risk(
            ego, lane, coast, std::vector<OtherVehicle>{other}, alpha, cfg.risk);
      }
      if (!(r_far <= r_near)) {
        failures.push_back("risk not monotone in distance");
        break;
      }
    }
  }

  // Risk-spot area is non-decreasing in alpha on benchmark snapshots.
  {
    const std::vector<std::pair<std::string, double>> probes = {
        {"crossing_medium", 2.0}, {"following_high", 1.5}};
    const double alphas[] = {0.04, 0.3, 0.5, 0.75, 1.0};
    for (const auto& [name, t] : probes) {
      const ScenarioSpec spec = *find_builtin_scenario(name);
      const SimulationTrace trace =
          run_scenario(spec, cfg, kAlphaNormal, false);
      const SceneSnapshot snap = snapshot_at(trace, spec, t);
      int prev = -1;
      for (double alpha : alphas) {
        const int area = cells_above(
            render_risk_map(snap, alpha, cfg.risk, cfg.riskmap), 1e-4);
        if (area < prev) {
          failures.push_back("risk-spot area shrank with alpha on " + name);
          break;
        }
        prev = area;
      }
    }
  }

  // Exhaustive argmin: the chosen candidate attains the minimal total cost.
  {
    const ScenarioSpec spec = *find_builtin_scenario("crossing_high");
    const SimulationTrace trace = run_scenario(spec, cfg, kAlphaNormal, false);
    std::uniform_real_distribution<double> alpha_dist(0.04, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, trace.steps.size() - 1);
    for (int i = 0; i < 12; ++i) {
      const SceneSnapshot snap =
          snapshot_at(trace, spec, trace.steps[pick(rng)].t);
      const double alpha = alpha_dist(rng);
      const PlanResult result = plan(snap, alpha, cfg.planner, cfg.risk);
      double best = result.all_candidates.front().cost.total;
      for (const auto& cand : result.all_candidates) {
        best = std::min(best, cand.cost.total);
      }
      if (result.best_cost.total != best) {
        failures.push_back("plan is not the candidate argmin");
        break;
      }
    }
  }

  // Prediction split-consistency.
  {
    std::uniform_real_distribution<double> vel(0.0, 20.0);
    std::uniform_real_distribution<double> accel(-6.0, 3.0);
    std::uniform_real_distribution<double> dur(0.3, 4.0);
    std::uniform_real_distribution<double> split(0.0, 8.0);
    for (int i = 0; i < 200; ++i) {
      VehicleState state;
      state.path_position = 50.0;
      state.velocity = vel(rng);
      AccelerationProfile profile;
      const int n_phases = 1 + static_cast<int>(rng() % 3);
      for (int p = 0; p < n_phases; ++p) {
        profile.phases.push_back({accel(rng), dur(rng)});
      }
      const double s1 = split(rng);
      const double s2 = split(rng);
      const VehicleState direct = predict_state(state, profile, s1 + s2);
      // Split: advance to s1, then continue with the remainder of the
      // profile shifted by s1.
      const VehicleState mid = predict_state(state, profile, s1);
      AccelerationProfile rest;
      double consumed = s1;
      for (const auto& phase : profile.phases) {
        if (consumed >= phase.duration) {
          consumed -= phase.duration;
        } else {
          rest.phases.push_back({phase.accel, phase.duration - consumed});
          consumed = 0.0;
        }
      }
      const VehicleState split_result = predict_state(mid, rest, s2);
      if (std::fabs(split_result.path_position - direct.path_position) > 1e-9 ||
          std::fabs(split_result.velocity - direct.velocity) > 1e-9) {
        failures.push_back("predict_state split inconsistency");
        break;
      }
    }
  }

  // Classification truth table.
  {
    const bool table_ok = classify(true, true) == Outcome::true_positive &&
                          classify(true, false) == Outcome::false_positive &&
                          classify(false, true) == Outcome::false_negative &&
                          classify(false, false) == Outcome::true_negative;
    if (!table_ok) failures.push_back("classification truth table");
    WarningConfig wcfg;
    for (int mask = 0; mask < 8; ++mask) {
      const bool wp = mask & 1;
      const bool wb = mask & 2;
      const bool wants = mask & 4;
      const WarningRecord rec = make_warning_record(
          0.0, wp ? 2.0 * wcfg.threshold : 0.0, wb ? 2.0 * wcfg.threshold : 0.0,
          wants, wcfg);
      if (rec.personalized_outcome != classify(wp, wants) ||
          rec.baseline_outcome != classify(wb, wants)) {
        failures.push_back("warning record classification");
        break;
      }
    }
  }

  // Determinism: repeated runs and thread-count-independent campaigns.
  {
    const ScenarioSpec spec = *find_builtin_scenario("crossing_high");
    const SimulationTrace t1 = run_scenario(spec, cfg, kAlphaDefensive, true);
    const SimulationTrace t2 = run_scenario(spec, cfg, kAlphaDefensive, true);
    if (!traces_identical(t1, t2)) failures.push_back("run is not deterministic");
    const std::vector<ScenarioSpec> scenarios = builtin_scenarios();
    const CampaignReport serial =
        run_campaign(scenarios, standard_driver_types(), cfg, 1);
    const CampaignReport parallel =
        run_campaign(scenarios, standard_driver_types(), cfg, 4);
    for (std::size_t i = 0; i < serial.aggregates.size(); ++i) {
      if (serial.aggregates[i].mean != parallel.aggregates[i].mean ||
          serial.aggregates[i].stddev != parallel.aggregates[i].stddev) {
        failures.push_back("campaign depends on thread count");
        break;
      }
    }
  }

  res.seconds = elapsed_seconds(start);
  res.pass = failures.empty() && res.seconds < 300.0;
  if (failures.empty()) {
    res.detail =
        "distance monotonicity, risk-spot growth, argmin, split consistency, "
        "truth table, determinism";
  } else {
    std::string joined;
    for (const auto& f : failures) {
      if (!joined.empty()) joined += "; ";
      joined += f;
    }
    res.detail = joined;
  }
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const EngineConfig& cfg) {
  std::vector<CriterionResult> results;
  results.push_back(check_overlap_oracle());
  results.push_back(check_interpolation());

  const auto campaign_start = Clock::now();
  const CampaignReport report =
      run_campaign(builtin_scenarios(), standard_driver_types(), cfg);
  const double campaign_seconds = elapsed_seconds(campaign_start);

  results.push_back(check_estimation_bands(report, campaign_seconds));
  results.push_back(check_warning_patterns(report));
  results.push_back(check_baseline_parity(cfg));
  results.push_back(check_plan_split(cfg));
  results.push_back(check_interaction_fallback(report));
  results.push_back(check_properties(cfg));
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.pass; });
}

std::string format_criteria(const std::vector<CriterionResult>& results) {
  std::ostringstream out;
  for (const auto& r : results) {
    out << (r.pass ? "PASS" : "FAIL") << "  " << r.id << " " << r.name << ": "
        << r.detail << " (" << fmt(r.seconds) << "s)\n";
  }
  return out.str();
}

}  // namespace riskmaps
