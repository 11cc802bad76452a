#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "sovtrain/json_codec.hpp"
#include "sovtrain/reference_diff.hpp"
#include "sovtrain/scenarios.hpp"
#include "sovtrain/sensitivity.hpp"

namespace sovtrain {

enum class TableFormat { kPlain, kCsv, kJson, kMarkdown };

std::optional<TableFormat> parse_table_format(std::string_view name);

enum class Figure { kGpus, kEnergy, kPeakLoad };

std::optional<Figure> parse_figure(std::string_view name);
std::string_view to_string(Figure figure);

/// Column order of every tabular scenario report.
inline constexpr std::string_view kTableColumns[] = {
    "scenario",   "country",   "gpu_count",  "energy_mwh",    "peak_load_mw",
    "capex_musd", "opex_musd", "total_musd", "classification"};

/// Scenario table. Money in millions of USD (2 decimals), energy to the
/// nearest MWh, load to 2 decimals. The json format additionally carries
/// full-precision values.
std::string emit_table(std::span<const SweepRow> rows, TableFormat format);

/// CSV for one figure: columns series,duration_days,<quantity>. One point
/// per (hardware, duration), first occurrence wins; series in order of first
/// appearance, points by ascending duration. Units: devices, GWh, MW.
std::string emit_figure_data(std::span<const SweepRow> rows, Figure figure);

std::string emit_diff(const ReferenceDiff& diff, TableFormat format);

/// Single scenario with inputs, result and verdict. The json format is the
/// same document the evaluate endpoint returns.
std::string emit_evaluation(const SweepRow& row, const FeasibilityThresholds& thresholds,
                            TableFormat format);
json evaluation_json(const SweepRow& row, const FeasibilityThresholds& thresholds);

std::string emit_sensitivity(std::span<const SensitivityReport> reports, TableFormat format);

}  // namespace sovtrain
