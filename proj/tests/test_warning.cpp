#include "riskmaps/warning.hpp"

#include <doctest.h>

#include <stdexcept>
#include <vector>

using namespace riskmaps;

TEST_CASE("the weight function reproduces its anchors") {
  const WeightFunction weight;
  CHECK(weight_for(0.04, weight) == 0.01);
  CHECK(weight_for(0.5, weight) == 1.0);  // exact: the baseline parity hinges on it
  CHECK(weight_for(1.0, weight) == 4.0);
  CHECK(weight_for(0.75, weight) == 2.5);
}

TEST_CASE("the weight function clamps outside the anchor range") {
  const WeightFunction weight;
  CHECK(weight_for(0.0, weight) == 0.01);
  CHECK(weight_for(0.01, weight) == 0.01);
  CHECK(weight_for(1.5, weight) == 4.0);
}

TEST_CASE("the weight function is monotone between the default anchors") {
  const WeightFunction weight;
  double prev = 0.0;
  for (double alpha = 0.0; alpha <= 1.2; alpha += 0.01) {
    const double w = weight_for(alpha, weight);
    CHECK(w >= prev);
    prev = w;
  }
}

TEST_CASE("degenerate anchor lists are rejected") {
  WeightFunction weight;
  weight.anchors = {{0.5, 1.0}};
  CHECK_THROWS_AS(weight_for(0.5, weight), std::invalid_argument);
  weight.anchors = {{0.5, 1.0}, {0.5, 2.0}};
  CHECK_THROWS_AS(weight_for(0.5, weight), std::invalid_argument);
  weight.anchors = {{0.8, 1.0}, {0.2, 2.0}};
  CHECK_THROWS_AS(weight_for(0.5, weight), std::invalid_argument);
}

TEST_CASE("doubling every anchor weight doubles the output bitwise") {
  const WeightFunction weight;
  WeightFunction doubled = weight;
  for (auto& [alpha, w] : doubled.anchors) w *= 2.0;
  for (double alpha : {0.0, 0.04, 0.1, 0.33, 0.5, 0.62, 0.75, 1.0, 1.3}) {
    CHECK(weight_for(alpha, doubled) == 2.0 * weight_for(alpha, weight));
  }
}

namespace {

struct Road {
  PathGeometry lane = straight_path({0.0, 0.0}, {2000.0, 0.0});
  WarningConfig warning;
  RiskConfig risk;

  SceneSnapshot snapshot(bool with_lead) {
    SceneSnapshot snap;
    snap.ego.path_position = 100.0;
    snap.ego.velocity = 12.0;
    snap.ego_path = &lane;
    snap.v_desired = 12.0;
    if (with_lead) {
      OtherVehicle lead;
      lead.state.path_position = 130.0;
      lead.state.velocity = 9.0;
      lead.path = &lane;
      snap.others.push_back(lead);
    }
    return snap;
  }
};

}  // namespace

TEST_CASE("no traffic means no warning signal") {
  Road road;
  const SceneSnapshot snap = road.snapshot(false);
  CHECK(warning_signal(snap, 1.0, road.warning, road.risk) == 0.0);
}

TEST_CASE("at the normal factor the signal equals the raw risk bitwise") {
  Road road;
  const SceneSnapshot snap = road.snapshot(true);
  const double signal = warning_signal(snap, 0.5, road.warning, road.risk);
  const AccelerationProfile const_velocity;
  const double risk = integrated_risk(snap.ego, *snap.ego_path, const_velocity,
                                      snap.others, 0.5, road.risk);
  CHECK(signal == risk);
  CHECK(risk > 0.0);
}

TEST_CASE("the signal grows with the risk factor on a live snapshot") {
  Road road;
  const SceneSnapshot snap = road.snapshot(true);
  const double low = warning_signal(snap, 0.04, road.warning, road.risk);
  const double mid = warning_signal(snap, 0.5, road.warning, road.risk);
  const double high = warning_signal(snap, 1.0, road.warning, road.risk);
  CHECK(low < mid);
  CHECK(mid < high);
}

TEST_CASE("classification follows the truth table") {
  CHECK(classify(true, true) == Outcome::true_positive);
  CHECK(classify(true, false) == Outcome::false_positive);
  CHECK(classify(false, true) == Outcome::false_negative);
  CHECK(classify(false, false) == Outcome::true_negative);
}

TEST_CASE("records threshold strictly and classify both systems") {
  const WarningConfig cfg;
  const double loud = 2e-3;
  const double quiet = 0.0;
  for (bool wants : {true, false}) {
    for (double personalized : {loud, quiet}) {
      for (double baseline : {loud, quiet}) {
        const WarningRecord rec =
            make_warning_record(1.5, personalized, baseline, wants, cfg);
        CHECK(rec.timestamp == 1.5);
        CHECK(rec.personalized_warn == (personalized > cfg.threshold));
        CHECK(rec.baseline_warn == (baseline > cfg.threshold));
        CHECK(rec.personalized_outcome == classify(rec.personalized_warn, wants));
        CHECK(rec.baseline_outcome == classify(rec.baseline_warn, wants));
      }
    }
  }
  // a signal exactly at the threshold stays silent
  const WarningRecord at_threshold =
      make_warning_record(0.0, cfg.threshold, 0.0, true, cfg);
  CHECK(!at_threshold.personalized_warn);
}

TEST_CASE("run comparison counts errors and first warning times") {
  const WarningConfig cfg;
  const std::vector<WarningRecord> records = {
      make_warning_record(0.0, 0.0, 0.0, true, cfg),    // both miss
      make_warning_record(1.0, 2e-3, 0.0, true, cfg),   // baseline misses
      make_warning_record(2.0, 2e-3, 2e-3, false, cfg), // both false alarms
      make_warning_record(3.0, 0.0, 0.0, false, cfg),   // both quiet, correctly
  };
  const RunErrorReport report = compare_runs(records);
  CHECK(report.personalized_false_negatives == 1);
  CHECK(report.personalized_false_positives == 1);
  CHECK(report.baseline_false_negatives == 2);
  CHECK(report.baseline_false_positives == 1);
  CHECK(report.personalized_warned);
  CHECK(report.baseline_warned);
  CHECK(report.first_personalized_warning == 1.0);
  CHECK(report.first_baseline_warning == 2.0);
}

TEST_CASE("a silent run reports -1 first warning times") {
  const WarningConfig cfg;
  const std::vector<WarningRecord> records = {
      make_warning_record(0.0, 0.0, 0.0, false, cfg)};
  const RunErrorReport report = compare_runs(records);
  CHECK(!report.personalized_warned);
  CHECK(report.first_personalized_warning == -1.0);
  CHECK(report.first_baseline_warning == -1.0);
}

TEST_CASE("two aligned streams merge into the same report") {
  const WarningConfig cfg;
  // The personalized stream carries junk baseline values and vice versa; the
  // merge must take each signal from its own stream.
  const std::vector<WarningRecord> personalized = {
      make_warning_record(0.0, 2e-3, 9.0, true, cfg),
      make_warning_record(1.0, 0.0, 9.0, false, cfg)};
  const std::vector<WarningRecord> baseline = {
      make_warning_record(0.0, 9.0, 0.0, true, cfg),
      make_warning_record(1.0, 9.0, 2e-3, false, cfg)};
  const RunErrorReport report = compare_runs(personalized, baseline);
  CHECK(report.personalized_false_negatives == 0);
  CHECK(report.baseline_false_negatives == 1);
  CHECK(report.baseline_false_positives == 1);
  CHECK(report.first_personalized_warning == 0.0);
  CHECK(report.first_baseline_warning == 1.0);
}

TEST_CASE("misaligned streams are rejected") {
  const WarningConfig cfg;
  const std::vector<WarningRecord> a = {
      make_warning_record(0.0, 0.0, 0.0, false, cfg),
      make_warning_record(1.0, 0.0, 0.0, false, cfg)};
  const std::vector<WarningRecord> shorter = {
      make_warning_record(0.0, 0.0, 0.0, false, cfg)};
  CHECK_THROWS_AS(compare_runs(a, shorter), std::invalid_argument);
  std::vector<WarningRecord> shifted = a;
  shifted[1].timestamp = 1.5;
  CHECK_THROWS_AS(compare_runs(a, shifted), std::invalid_argument);
}
