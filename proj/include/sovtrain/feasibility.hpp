#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sovtrain/model.hpp"

namespace sovtrain {

struct FeasibilityThresholds {
  double gpu_export_cap = 50'000.0;            // devices per country
  double hard_power_ceiling_mw = 10.0;         // without HV interconnection
  double practical_power_threshold_mw = 1.0;   // above this, permitting/grid upgrades
  double fiscal_cap_usd = 52'000'000.0;        // capex + opex

  void validate() const;
  bool operator==(const FeasibilityThresholds&) const = default;
};

/// Ordered worst to best so that `a < b` means "a is a worse grade".
enum class Classification {
  kInfeasible = 0,
  kFeasiblePermittingRequired = 1,
  kFeasibleDeployable = 2,
};

std::string_view to_string(Classification c);

enum class Constraint {
  kExportCap,
  kHardPowerCeiling,
  kPracticalPowerThreshold,
  kFiscalCap,
};

std::string_view to_string(Constraint c);

struct Violation {
  Constraint constraint;
  double measured = 0.0;
  double threshold = 0.0;

  bool operator==(const Violation&) const = default;
};

struct FeasibilityVerdict {
  bool export_ok = true;
  bool power_hard_ok = true;
  bool power_practical_ok = true;
  bool fiscal_ok = true;
  Classification classification = Classification::kFeasibleDeployable;
  std::vector<Violation> violated;  // in Constraint enum order

  bool operator==(const FeasibilityVerdict&) const = default;
};

/// Grades a result against the thresholds. A value exactly at a threshold
/// passes. Fractional fleets are rounded up before the export-cap check.
FeasibilityVerdict assess(const ScenarioResult& result, const FeasibilityThresholds& thresholds);

}  // namespace sovtrain
