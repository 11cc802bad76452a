#include "sovtrain/reference_diff.hpp"

#include <algorithm>
#include <cmath>

#include "sovtrain/registry.hpp"

namespace sovtrain {
namespace {

using enum ReferenceCategory;
using enum Quantity;

// Table cells carry 2 decimals of millions; snap to whole 10k USD so 32.24 -> 32240000 exactly.
double musd_to_usd(double musd) { return std::round(musd * 100.0) * 1e4; }

// Cost table rows as published (comma decimals normalized).
struct TableRow {
  const char* hardware;
  double days;
  const char* country;
  const char* label;
  double capex_musd;
  double opex_musd;
  double total_musd;
};

constexpr TableRow kCostTable[] = {
    {"h100", 90, "br", "H100 · 90d / Brazil", 13.78, 0.10, 13.88},
    {"h100", 90, "mx", "H100 · 90d / Mexico", 13.82, 0.08, 13.90},
    {"h100", 150, "br", "H100 · 150d / Brazil", 8.28, 0.10, 8.37},
    {"h100", 150, "mx", "H100 · 150d / Mexico", 8.32, 0.08, 8.39},
    {"a100", 90, "br", "A100 · 90d / Brazil", 32.24, 0.36, 32.60},
    {"a100", 90, "mx", "A100 · 90d / Mexico", 32.26, 0.29, 32.54},
    {"a100", 150, "br", "A100 · 150d / Brazil", 19.34, 0.36, 19.70},
    {"a100", 150, "mx", "A100 · 150d / Mexico", 19.35, 0.29, 19.64},
};

std::vector<ReferenceValue> build_reference_values() {
  std::vector<ReferenceValue> v = {
      {"energy.h100-90d.worked", kWorkedExample, kEnergyMwh, "h100", 90, "", 893.0,
       "worked example: H100 · 90d, Brazil consumed 893 MWh"},
      {"opex.h100-90d-br.worked", kWorkedExample, kOpexUsd, "h100", 90, "br", 98'230.0,
       "worked example: 893 x 110 = 98.230 USD (0.098 M)"},
      {"opex.h100-90d-mx.worked", kWorkedExample, kOpexUsd, "h100", 90, "mx", 78'584.0,
       "worked example: 893 x 88 = 78.584 USD (0.079 M)"},
      {"energy.a100-90d.worked", kWorkedExample, kEnergyMwh, "a100", 90, "", 3'271.0,
       "worked example: A100 · 90d energy consumption 3,271 MWh"},
      {"opex.a100-90d-br.worked", kWorkedExample, kOpexUsd, "a100", 90, "br", 359'799.0,
       "worked example: A100 · 90d Brazil OPEX 359,799 USD (0.360 M)"},
      {"opex.a100-90d-mx.worked", kWorkedExample, kOpexUsd, "a100", 90, "mx", 287'839.0,
       "worked example: A100 · 90d Mexico OPEX 287,839 USD (0.288 M)"},
  };

  for (const auto& row : kCostTable) {
    const std::string cell = std::string(row.hardware) + "-" +
                             std::to_string(static_cast<int>(row.days)) + "d-" + row.country;
    const std::string where = std::string("cost table: ") + row.label;
    v.push_back({"capex." + cell + ".table", kPublishedTable, kCapexUsd, row.hardware, row.days,
                 row.country, musd_to_usd(row.capex_musd), where + ", CAPEX (M USD)"});
    v.push_back({"opex." + cell + ".table", kPublishedTable, kOpexUsd, row.hardware, row.days,
                 row.country, musd_to_usd(row.opex_musd), where + ", OPEX (M USD)"});
    v.push_back({"total." + cell + ".table", kPublishedTable, kTotalUsd, row.hardware, row.days,
                 row.country, musd_to_usd(row.total_musd), where + ", TOTAL (M USD)"});
  }

  v.push_back({"peak.h100-150d.narrative", kNarrative, kPeakLoadMw, "h100", 150, "", 0.41,
               "results: 0.41 MW for H100, 150 days"});
  v.push_back({"peak.a100-90d.narrative", kNarrative, kPeakLoadMw, "a100", 90, "", 1.49,
               "results: 1.49 MW for A100, 90 days"});
  v.push_back({"gpus.h100-150d.narrative", kNarrative, kGpuCount, "h100", 150, "", 350.0,
               "sizing: ~350 H100s in the 150-day scenario"});
  v.push_back({"energy.h100-150d.narrative", kNarrative, kEnergyMwh, "h100", 150, "", 300.0,
               "results: H100-150d consumes around 0.3 GWh"});
  v.push_back({"energy.a100-90d.narrative", kNarrative, kEnergyMwh, "a100", 90, "", 3'300.0,
               "results: A100-90d reaches 3.3 GWh"});
  return v;
}

double pick(const ScenarioResult& r, Quantity q) {
  switch (q) {
    case kGpuCount:
      return r.gpu_count;
    case kEnergyMwh:
      return r.energy_mwh;
    case kPeakLoadMw:
      return r.peak_load_mw;
    case kCapexUsd:
      return r.capex_usd;
    case kOpexUsd:
      return r.opex_usd;
    case kTotalUsd:
      return r.total_usd;
  }
  return 0.0;
}

}  // namespace

std::string_view to_string(ReferenceCategory c) {
  switch (c) {
    case kWorkedExample:
      return "worked_example";
    case kPublishedTable:
      return "published_table";
    case kNarrative:
      return "narrative";
  }
  return "unknown";
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case kGpuCount:
      return "gpu_count";
    case kEnergyMwh:
      return "energy_mwh";
    case kPeakLoadMw:
      return "peak_load_mw";
    case kCapexUsd:
      return "capex_usd";
    case kOpexUsd:
      return "opex_usd";
    case kTotalUsd:
      return "total_usd";
  }
  return "unknown";
}

std::span<const ReferenceValue> reference_values() {
  static const std::vector<ReferenceValue> values = build_reference_values();
  return values;
}

std::size_t ReferenceDiff::reconcilable_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.reconcilable; }));
}

ReferenceDiff reference_diff() {
  const auto& reg = ProfileRegistry::builtin();
  ReferenceDiff diff{std::string(kReferenceDatasetVersion), kReconcileRelativeTolerance, {}};
  for (const auto& ref : reference_values()) {
    ScenarioSpec spec;
    spec.hardware = reg.find_hardware(ref.hardware_id);
    // Country-independent quantities are evaluated against the first registered country.
    spec.country = ref.country_id.empty() ? reg.countries().front() : reg.find_country(ref.country_id);
    spec.assumptions = reg.defaults();
    spec.assumptions.duration_days = ref.duration_days;
    spec.rounding = RoundingMode::kFractional;
    spec.id = scenario_id(spec.hardware.id, ref.duration_days, spec.country.id);

    DiffEntry e;
    e.reference = ref;
    e.computed = pick(evaluate_scenario(spec), ref.quantity);
    e.abs_delta = e.computed - ref.expected;
    e.rel_delta = e.abs_delta / ref.expected;
    e.reconcilable = std::abs(e.rel_delta) <= diff.tolerance;
    diff.entries.push_back(std::move(e));
  }
  return diff;
}

}  // namespace sovtrain
