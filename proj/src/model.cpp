#include "sovtrain/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "sovtrain/errors.hpp"

namespace sovtrain {
namespace {

void require_finite(const char* field, double value) {
  if (!std::isfinite(value)) throw DomainError(field, "must be a finite number");
}

void require_positive(const char* field, double value) {
  require_finite(field, value);
  if (!(value > 0.0)) throw DomainError(field, "must be > 0");
}

void require_non_negative(const char* field, double value) {
  require_finite(field, value);
  if (value < 0.0) throw DomainError(field, "must be >= 0");
}

void require_at_least_one(const char* field, double value) {
  require_finite(field, value);
  if (value < 1.0) throw DomainError(field, "must be >= 1");
}

}  // namespace

void HardwareProfile::validate() const {
  if (id.empty()) throw DomainError("id", "hardware id must not be empty");
  require_positive("peak_tflops", peak_tflops);
  require_positive("tdp_watts", tdp_watts);
  require_positive("unit_price_usd", unit_price_usd);
}

void CountryProfile::validate() const {
  if (id.empty()) throw DomainError("id", "country id must not be empty");
  require_non_negative("import_tariff_rate", import_tariff_rate);
  require_positive("electricity_tariff_usd_per_mwh", electricity_tariff_usd_per_mwh);
}

void TrainingAssumptions::validate() const {
  require_positive("total_flops", total_flops);
  require_positive("duration_days", duration_days);
  require_positive("mfu", mfu);
  if (mfu > 1.0) throw DomainError("mfu", "must be <= 1");
  require_at_least_one("pue", pue);
  require_at_least_one("integration_overhead_factor", integration_overhead_factor);
}

TrainingAssumptions AssumptionOverrides::apply_to(TrainingAssumptions base) const {
  if (total_flops) base.total_flops = *total_flops;
  if (duration_days) base.duration_days = *duration_days;
  if (mfu) base.mfu = *mfu;
  if (pue) base.pue = *pue;
  if (integration_overhead_factor) base.integration_overhead_factor = *integration_overhead_factor;
  return base;
}

bool AssumptionOverrides::empty() const {
  return !total_flops && !duration_days && !mfu && !pue && !integration_overhead_factor;
}

std::string_view to_string(RoundingMode mode) {
  switch (mode) {
    case RoundingMode::kFractional:
      return "fractional";
    case RoundingMode::kCeilUnits:
      return "ceil_units";
  }
  return "unknown";
}

std::optional<RoundingMode> parse_rounding_mode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "fractional") return RoundingMode::kFractional;
  if (lower == "ceil_units" || lower == "ceil") return RoundingMode::kCeilUnits;
  return std::nullopt;
}

void ScenarioSpec::validate() const {
  hardware.validate();
  country.validate();
  assumptions.validate();
}

double gpu_count(const TrainingAssumptions& assumptions, const HardwareProfile& hardware,
                 RoundingMode rounding) {
  assumptions.validate();
  hardware.validate();
  const double seconds = assumptions.duration_days * kSecondsPerDay;
  const double sustained_flops_per_device = hardware.peak_tflops * kTeraFlops * assumptions.mfu;
  const double n = assumptions.total_flops / (seconds * sustained_flops_per_device);
  return rounding == RoundingMode::kCeilUnits ? std::ceil(n) : n;
}

double facility_watts_per_device(const HardwareProfile& hardware,
                                 const TrainingAssumptions& assumptions) {
  return hardware.tdp_watts * assumptions.integration_overhead_factor * assumptions.pue;
}

double peak_load_mw(const HardwareProfile& hardware, const TrainingAssumptions& assumptions,
                    double n_gpus) {
  require_non_negative("n_gpus", n_gpus);
  return n_gpus * facility_watts_per_device(hardware, assumptions) / kWattsPerMegawatt;
}

double energy_mwh(const TrainingAssumptions& assumptions, const HardwareProfile& hardware,
                  double n_gpus) {
  // Constant full-utilization load over the whole window.
  return peak_load_mw(hardware, assumptions, n_gpus) * assumptions.duration_days * kHoursPerDay;
}

double capex_usd(const HardwareProfile& hardware, const CountryProfile& country,
                 const TrainingAssumptions& assumptions, double n_gpus) {
  require_non_negative("n_gpus", n_gpus);
  return n_gpus * hardware.unit_price_usd * assumptions.integration_overhead_factor *
         (1.0 + country.import_tariff_rate);
}

double opex_usd(double energy, const CountryProfile& country) {
  require_non_negative("energy_mwh", energy);
  return energy * country.electricity_tariff_usd_per_mwh;
}

ScenarioResult evaluate_scenario(const ScenarioSpec& spec) {
  spec.validate();
  ScenarioResult r;
  r.gpu_count = gpu_count(spec.assumptions, spec.hardware, spec.rounding);
  r.peak_load_mw = peak_load_mw(spec.hardware, spec.assumptions, r.gpu_count);
  r.energy_mwh = energy_mwh(spec.assumptions, spec.hardware, r.gpu_count);
  r.capex_usd = capex_usd(spec.hardware, spec.country, spec.assumptions, r.gpu_count);
  r.opex_usd = opex_usd(r.energy_mwh, spec.country);
  r.total_usd = r.capex_usd + r.opex_usd;
  return r;
}

}  // namespace sovtrain
