#pragma once

// Published reference values for the builtin grid, and a comparison of each
// against this model in FRACTIONAL mode.
//
// Several published cells (the cost table's CAPEX and TOTAL columns, two
// quoted peak loads, a quoted fleet size, the quoted energy range) cannot be
// derived from the published formulas. The diff reports them rather than
// bending the model to fit.

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sovtrain {

inline constexpr std::string_view kReferenceDatasetVersion = "ref-2025.1";
inline constexpr double kReconcileRelativeTolerance = 0.005;

enum class ReferenceCategory {
  kWorkedExample,   // formula walked through with explicit numbers
  kPublishedTable,  // cost table, millions of USD with 2 decimals
  kNarrative,       // values quoted in results prose and figure captions
};

std::string_view to_string(ReferenceCategory c);

enum class Quantity { kGpuCount, kEnergyMwh, kPeakLoadMw, kCapexUsd, kOpexUsd, kTotalUsd };

std::string_view to_string(Quantity q);

struct ReferenceValue {
  std::string id;
  ReferenceCategory category;
  Quantity quantity;
  std::string hardware_id;
  double duration_days;
  std::string country_id;  // empty when the quantity does not depend on country
  double expected;         // base units: devices, MWh, MW, USD
  std::string citation;
};

std::span<const ReferenceValue> reference_values();

struct DiffEntry {
  ReferenceValue reference;
  double computed = 0.0;
  double abs_delta = 0.0;  // computed - expected
  double rel_delta = 0.0;  // (computed - expected) / expected
  bool reconcilable = false;
};

struct ReferenceDiff {
  std::string dataset_version;
  double tolerance = kReconcileRelativeTolerance;
  std::vector<DiffEntry> entries;

  std::size_t reconcilable_count() const;
};

/// Compares every reference value against the builtin profiles evaluated in
/// FRACTIONAL mode.
ReferenceDiff reference_diff();

}  // namespace sovtrain
