#include <catch_amalgamated.hpp>

#include "sovtrain/errors.hpp"
#include "sovtrain/feasibility.hpp"
#include "sovtrain/scenarios.hpp"
#include "support.hpp"

using namespace sovtrain;
using testsupport::make_spec;

namespace {

ScenarioResult synthetic(double gpus, double peak_mw, double total_usd) {
  ScenarioResult r;
  r.gpu_count = gpus;
  r.peak_load_mw = peak_mw;
  r.capex_usd = total_usd;
  r.total_usd = total_usd;
  return r;
}

}  // namespace

TEST_CASE("reference scenarios grade as published", "[feasibility]") {
  const FeasibilityThresholds t;
  for (const auto mode : {RoundingMode::kFractional, RoundingMode::kCeilUnits}) {
    const auto a90 = assess(evaluate_scenario(make_spec("a100", 90, "br", mode)), t);
    CHECK(a90.classification == Classification::kFeasiblePermittingRequired);
    CHECK_FALSE(a90.power_practical_ok);
    REQUIRE(a90.violated.size() == 1);
    CHECK(a90.violated[0].constraint == Constraint::kPracticalPowerThreshold);
    CHECK(a90.violated[0].threshold == 1.0);

    const auto h150 = assess(evaluate_scenario(make_spec("h100", 150, "mx", mode)), t);
    CHECK(h150.classification == Classification::kFeasibleDeployable);
    CHECK(h150.violated.empty());
  }
}

TEST_CASE("every reference scenario passes export, hard power and fiscal checks", "[feasibility]") {
  for (const auto mode : {RoundingMode::kFractional, RoundingMode::kCeilUnits}) {
    for (const auto& spec : builtin_scenarios(mode)) {
      const auto v = assess(evaluate_scenario(spec), {});
      INFO(spec.id);
      CHECK(v.export_ok);
      CHECK(v.power_hard_ok);
      CHECK(v.fiscal_ok);
      CHECK(v.classification != Classification::kInfeasible);
      const bool is_a100_90 = spec.hardware.id == "a100" && spec.assumptions.duration_days == 90.0;
      CHECK(v.classification == (is_a100_90 ? Classification::kFeasiblePermittingRequired
                                            : Classification::kFeasibleDeployable));
    }
  }
}

TEST_CASE("a fleet above the export cap is infeasible", "[feasibility]") {
  const auto v = assess(synthetic(60'000, 0.5, 1e6), {});
  CHECK(v.classification == Classification::kInfeasible);
  CHECK_FALSE(v.export_ok);
  REQUIRE(v.violated.size() == 1);
  CHECK(v.violated[0] == Violation{Constraint::kExportCap, 60'000, 50'000});
}

TEST_CASE("thresholds are inclusive", "[feasibility][boundary]") {
  const FeasibilityThresholds t;
  const auto at = assess(synthetic(50'000, 1.0, 52e6), t);
  CHECK(at.classification == Classification::kFeasibleDeployable);
  CHECK(at.violated.empty());

  CHECK_FALSE(assess(synthetic(50'001, 1.0, 52e6), t).export_ok);
  CHECK_FALSE(assess(synthetic(1, 10.000001, 1), t).power_hard_ok);
  CHECK(assess(synthetic(1, 10.0, 1), t).classification == Classification::kFeasiblePermittingRequired);
  CHECK_FALSE(assess(synthetic(1, 0.1, 52e6 + 0.01), t).fiscal_ok);
}

TEST_CASE("fractional fleets ship as whole devices for the export check", "[feasibility][boundary]") {
  CHECK_FALSE(assess(synthetic(50'000.2, 0.1, 1), {}).export_ok);
  CHECK(assess(synthetic(49'999.2, 0.1, 1), {}).export_ok);
}

TEST_CASE("violations list every breached constraint in order", "[feasibility]") {
  FeasibilityThresholds t;
  t.fiscal_cap_usd = 1;
  const auto v = assess(synthetic(70'000, 12, 5e7), t);
  REQUIRE(v.violated.size() == 4);
  CHECK(v.violated[0].constraint == Constraint::kExportCap);
  CHECK(v.violated[1].constraint == Constraint::kHardPowerCeiling);
  CHECK(v.violated[2].constraint == Constraint::kPracticalPowerThreshold);
  CHECK(v.violated[3].constraint == Constraint::kFiscalCap);
  CHECK(v.classification == Classification::kInfeasible);
}

TEST_CASE("fiscal cap covers capital plus electricity", "[feasibility]") {
  ScenarioResult r = synthetic(10, 0.1, 0);
  r.capex_usd = 51e6;
  r.opex_usd = 2e6;
  r.total_usd = 53e6;
  CHECK_FALSE(assess(r, {}).fiscal_ok);
}

TEST_CASE("relaxing any threshold never worsens the grade", "[feasibility][property]") {
  testsupport::Rng rng(29);
  for (int i = 0; i < 3000; ++i) {
    const auto r = synthetic(rng.log_uniform(1, 2e5), rng.log_uniform(0.01, 50), rng.log_uniform(1e4, 1e9));
    FeasibilityThresholds t;
    t.gpu_export_cap = rng.log_uniform(1, 2e5);
    t.practical_power_threshold_mw = rng.log_uniform(0.01, 30);
    t.hard_power_ceiling_mw = t.practical_power_threshold_mw * rng.uniform(1.0, 10.0);
    t.fiscal_cap_usd = rng.log_uniform(1e4, 1e9);
    const auto before = assess(r, t);

    FeasibilityThresholds relaxed = t;
    switch (rng.integer(0, 3)) {
      case 0: relaxed.gpu_export_cap *= rng.uniform(1.0, 5.0); break;
      case 1: relaxed.hard_power_ceiling_mw *= rng.uniform(1.0, 5.0); break;
      case 2:
        relaxed.practical_power_threshold_mw =
            std::min(relaxed.hard_power_ceiling_mw,
                     relaxed.practical_power_threshold_mw * rng.uniform(1.0, 5.0));
        break;
      default: relaxed.fiscal_cap_usd *= rng.uniform(1.0, 5.0); break;
    }
    const auto after = assess(r, relaxed);
    CHECK(after.classification >= before.classification);
    CHECK(after.violated.size() <= before.violated.size());
  }
}

TEST_CASE("assess is a pure function", "[feasibility][property]") {
  testsupport::Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const auto r = synthetic(rng.log_uniform(1, 2e5), rng.log_uniform(0.01, 50), rng.log_uniform(1e4, 1e9));
    CHECK(assess(r, {}) == assess(r, {}));
  }
}

TEST_CASE("threshold validation", "[feasibility][errors]") {
  FeasibilityThresholds t;
  CHECK_NOTHROW(t.validate());
  t.practical_power_threshold_mw = 20;
  CHECK_THROWS_AS(t.validate(), DomainError);
  t = {};
  t.fiscal_cap_usd = -1;
  CHECK_THROWS_AS(t.validate(), DomainError);
}

TEST_CASE("classification names are stable", "[feasibility]") {
  CHECK(to_string(Classification::kInfeasible) == "INFEASIBLE");
  CHECK(to_string(Classification::kFeasiblePermittingRequired) == "FEASIBLE_PERMITTING_REQUIRED");
  CHECK(to_string(Classification::kFeasibleDeployable) == "FEASIBLE_DEPLOYABLE");
  CHECK(Classification::kInfeasible < Classification::kFeasiblePermittingRequired);
}
