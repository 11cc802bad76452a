#pragma once

// Closed-form sizing, energy, load and cost model for a single training run.
//
// All quantities are IEEE binary64. FLOP totals (~1e24) are far outside the
// int64 range, and device counts are fractional in FRACTIONAL mode, so
// neither integer FLOPs nor integer cents are used anywhere.

#include <optional>
#include <string>
#include <string_view>

namespace sovtrain {

inline constexpr double kSecondsPerDay = 86'400.0;
inline constexpr double kHoursPerDay = 24.0;
inline constexpr double kTeraFlops = 1e12;
inline constexpr double kWattsPerMegawatt = 1e6;

struct HardwareProfile {
  std::string id;
  std::string display_name;
  double peak_tflops = 0.0;      // per device
  std::string precision_label;
  double tdp_watts = 0.0;        // per device
  double unit_price_usd = 0.0;   // per device

  void validate() const;
  bool operator==(const HardwareProfile&) const = default;
};

struct CountryProfile {
  std::string id;
  std::string display_name;
  double import_tariff_rate = 0.0;  // fraction, 0.16 == 16%
  double electricity_tariff_usd_per_mwh = 0.0;

  void validate() const;
  bool operator==(const CountryProfile&) const = default;
};

struct TrainingAssumptions {
  double total_flops = 3.0e24;
  double duration_days = 90.0;
  double mfu = 0.552;
  double pue = 1.3;
  // Applied to both unit price and per-device power draw.
  double integration_overhead_factor = 1.30;

  void validate() const;
  bool operator==(const TrainingAssumptions&) const = default;
};

/// Partial override of TrainingAssumptions; unset fields keep the base value.
struct AssumptionOverrides {
  std::optional<double> total_flops;
  std::optional<double> duration_days;
  std::optional<double> mfu;
  std::optional<double> pue;
  std::optional<double> integration_overhead_factor;

  TrainingAssumptions apply_to(TrainingAssumptions base) const;
  bool empty() const;
  bool operator==(const AssumptionOverrides&) const = default;
};

enum class RoundingMode {
  kFractional,  // real-valued fleet carried through every formula
  kCeilUnits,   // fleet rounded up to whole devices before costing
};

std::string_view to_string(RoundingMode mode);
/// Accepts "fractional" and "ceil_units" (also "ceil"); case-insensitive.
std::optional<RoundingMode> parse_rounding_mode(std::string_view text);

struct ScenarioSpec {
  std::string id;
  HardwareProfile hardware;
  CountryProfile country;
  TrainingAssumptions assumptions;
  RoundingMode rounding = RoundingMode::kCeilUnits;

  void validate() const;
  bool operator==(const ScenarioSpec&) const = default;
};

struct ScenarioResult {
  double gpu_count = 0.0;
  double energy_mwh = 0.0;
  double peak_load_mw = 0.0;
  double capex_usd = 0.0;
  double opex_usd = 0.0;
  double total_usd = 0.0;

  bool operator==(const ScenarioResult&) const = default;
};

/// Devices needed to deliver `total_flops` within the training window.
double gpu_count(const TrainingAssumptions& assumptions, const HardwareProfile& hardware,
                 RoundingMode rounding);

/// Per-device facility power in watts: TDP scaled by integration overhead and PUE.
double facility_watts_per_device(const HardwareProfile& hardware,
                                 const TrainingAssumptions& assumptions);

double energy_mwh(const TrainingAssumptions& assumptions, const HardwareProfile& hardware,
                  double n_gpus);

double peak_load_mw(const HardwareProfile& hardware, const TrainingAssumptions& assumptions,
                    double n_gpus);

double capex_usd(const HardwareProfile& hardware, const CountryProfile& country,
                 const TrainingAssumptions& assumptions, double n_gpus);

/// Electricity cost of the run. Always fed unrounded energy.
double opex_usd(double energy_mwh, const CountryProfile& country);

ScenarioResult evaluate_scenario(const ScenarioSpec& spec);

}  // namespace sovtrain
