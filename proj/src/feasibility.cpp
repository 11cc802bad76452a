#include "sovtrain/feasibility.hpp"

#include <cmath>

#include "sovtrain/errors.hpp"

namespace sovtrain {

void FeasibilityThresholds::validate() const {
  auto positive = [](const char* field, double v) {
    if (!std::isfinite(v) || !(v > 0.0)) throw DomainError(field, "must be a finite number > 0");
  };
  positive("gpu_export_cap", gpu_export_cap);
  positive("hard_power_ceiling_mw", hard_power_ceiling_mw);
  positive("practical_power_threshold_mw", practical_power_threshold_mw);
  positive("fiscal_cap_usd", fiscal_cap_usd);
  if (practical_power_threshold_mw > hard_power_ceiling_mw) {
    throw DomainError("practical_power_threshold_mw", "must be <= hard_power_ceiling_mw");
  }
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::kInfeasible:
      return "INFEASIBLE";
    case Classification::kFeasiblePermittingRequired:
      return "FEASIBLE_PERMITTING_REQUIRED";
    case Classification::kFeasibleDeployable:
      return "FEASIBLE_DEPLOYABLE";
  }
  return "UNKNOWN";
}

std::string_view to_string(Constraint c) {
  switch (c) {
    case Constraint::kExportCap:
      return "export_cap";
    case Constraint::kHardPowerCeiling:
      return "hard_power_ceiling";
    case Constraint::kPracticalPowerThreshold:
      return "practical_power_threshold";
    case Constraint::kFiscalCap:
      return "fiscal_cap";
  }
  return "unknown";
}

FeasibilityVerdict assess(const ScenarioResult& result, const FeasibilityThresholds& thresholds) {
  thresholds.validate();
  FeasibilityVerdict v;

  const double shipped_units = std::ceil(result.gpu_count);
  v.export_ok = shipped_units <= thresholds.gpu_export_cap;
  v.power_hard_ok = result.peak_load_mw <= thresholds.hard_power_ceiling_mw;
  v.power_practical_ok = result.peak_load_mw <= thresholds.practical_power_threshold_mw;
  v.fiscal_ok = result.total_usd <= thresholds.fiscal_cap_usd;

  if (!v.export_ok) {
    v.violated.push_back({Constraint::kExportCap, shipped_units, thresholds.gpu_export_cap});
  }
  if (!v.power_hard_ok) {
    v.violated.push_back(
        {Constraint::kHardPowerCeiling, result.peak_load_mw, thresholds.hard_power_ceiling_mw});
  }
  if (!v.power_practical_ok) {
    v.violated.push_back({Constraint::kPracticalPowerThreshold, result.peak_load_mw,
                          thresholds.practical_power_threshold_mw});
  }
  if (!v.fiscal_ok) {
    v.violated.push_back({Constraint::kFiscalCap, result.total_usd, thresholds.fiscal_cap_usd});
  }

  if (!v.export_ok || !v.power_hard_ok || !v.fiscal_ok) {
    v.classification = Classification::kInfeasible;
  } else if (!v.power_practical_ok) {
    v.classification = Classification::kFeasiblePermittingRequired;
  } else {
    v.classification = Classification::kFeasibleDeployable;
  }
  return v;
}

}  // namespace sovtrain
