#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sovtrain/feasibility.hpp"
#include "sovtrain/model.hpp"
#include "sovtrain/registry.hpp"

namespace sovtrain {

inline constexpr std::size_t kDefaultMaxSweepCells = 10'000;

/// The 2 hardware x 2 duration x 2 country reference grid, ordered
/// hardware, then duration, then country (H100 90d BR, H100 90d MX, ...).
std::vector<ScenarioSpec> builtin_scenarios(RoundingMode rounding = RoundingMode::kCeilUnits);
std::vector<ScenarioRef> builtin_scenario_refs(RoundingMode rounding = RoundingMode::kCeilUnits);

inline const std::vector<double> kReferenceDurationsDays{90.0, 150.0};

struct SweepRequest {
  std::vector<HardwareProfile> hardware;
  std::vector<CountryProfile> countries;
  std::vector<double> durations_days;
  // duration_days is replaced per cell.
  TrainingAssumptions assumptions;
  RoundingMode rounding = RoundingMode::kCeilUnits;
  FeasibilityThresholds thresholds;
  std::size_t max_cells = kDefaultMaxSweepCells;

  /// Number of Cartesian cells, saturating at SIZE_MAX.
  std::size_t cell_count() const;
  void validate() const;
};

/// Builds a request from registry ids; empty id lists select every profile.
SweepRequest make_sweep_request(const ProfileRegistry& registry,
                                const std::vector<std::string>& hardware_ids,
                                const std::vector<std::string>& country_ids,
                                std::vector<double> durations_days,
                                const AssumptionOverrides& overrides, RoundingMode rounding,
                                const FeasibilityThresholds& thresholds);

/// The reference grid over the builtin registry.
SweepRequest reference_grid_request(RoundingMode rounding = RoundingMode::kCeilUnits);

struct SweepRow {
  ScenarioSpec spec;
  ScenarioResult result;
  FeasibilityVerdict verdict;

  bool operator==(const SweepRow&) const = default;
};

SweepRow evaluate_row(const ScenarioSpec& spec, const FeasibilityThresholds& thresholds);

/// One row per cell in hardware, country, duration order. Cells may be
/// evaluated concurrently; the row order never depends on scheduling.
std::vector<SweepRow> run_sweep(const SweepRequest& request);

/// Cheapest non-INFEASIBLE row. Ties: lower peak load, fewer devices, then id.
std::optional<SweepRow> min_cost_feasible(const SweepRequest& request);
std::optional<SweepRow> min_cost_feasible(const std::vector<SweepRow>& rows);

}  // namespace sovtrain
