#include "sovtrain/sensitivity.hpp"

#include <array>
#include <cmath>
#include <string>

#include "sovtrain/errors.hpp"

namespace sovtrain {
namespace {

constexpr std::array kParameters{
    SensitivityParameter::kTotalFlops,
    SensitivityParameter::kDurationDays,
    SensitivityParameter::kMfu,
    SensitivityParameter::kPue,
    SensitivityParameter::kIntegrationOverheadFactor,
    SensitivityParameter::kUnitPriceUsd,
    SensitivityParameter::kElectricityTariffUsdPerMwh,
    SensitivityParameter::kImportTariffRate,
};

double& parameter_slot(ScenarioSpec& spec, SensitivityParameter p) {
  switch (p) {
    case SensitivityParameter::kTotalFlops:
      return spec.assumptions.total_flops;
    case SensitivityParameter::kDurationDays:
      return spec.assumptions.duration_days;
    case SensitivityParameter::kMfu:
      return spec.assumptions.mfu;
    case SensitivityParameter::kPue:
      return spec.assumptions.pue;
    case SensitivityParameter::kIntegrationOverheadFactor:
      return spec.assumptions.integration_overhead_factor;
    case SensitivityParameter::kUnitPriceUsd:
      return spec.hardware.unit_price_usd;
    case SensitivityParameter::kElectricityTariffUsdPerMwh:
      return spec.country.electricity_tariff_usd_per_mwh;
    case SensitivityParameter::kImportTariffRate:
      return spec.country.import_tariff_rate;
  }
  throw DomainError("parameter", "unknown sensitivity parameter");
}

double log_elasticity(double up, double down, double log_param_ratio) {
  if (up == down) return 0.0;
  const double e = std::log(up / down) / log_param_ratio;
  if (!std::isfinite(e)) throw DomainError("elasticity", "not finite for this output");
  return e;
}

}  // namespace

std::string_view to_string(SensitivityParameter p) {
  switch (p) {
    case SensitivityParameter::kTotalFlops:
      return "total_flops";
    case SensitivityParameter::kDurationDays:
      return "duration_days";
    case SensitivityParameter::kMfu:
      return "mfu";
    case SensitivityParameter::kPue:
      return "pue";
    case SensitivityParameter::kIntegrationOverheadFactor:
      return "integration_overhead_factor";
    case SensitivityParameter::kUnitPriceUsd:
      return "unit_price_usd";
    case SensitivityParameter::kElectricityTariffUsdPerMwh:
      return "electricity_tariff_usd_per_mwh";
    case SensitivityParameter::kImportTariffRate:
      return "import_tariff_rate";
  }
  return "unknown";
}

std::optional<SensitivityParameter> parse_sensitivity_parameter(std::string_view name) {
  for (auto p : kParameters) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

std::span<const SensitivityParameter> all_sensitivity_parameters() { return kParameters; }

SensitivityReport sensitivity(const ScenarioSpec& spec, SensitivityParameter parameter,
                              double perturbation_fraction) {
  if (spec.rounding != RoundingMode::kFractional) {
    throw DomainError("rounding", "sensitivity requires fractional rounding");
  }
  if (!(perturbation_fraction > 0.0 && perturbation_fraction <= 0.5)) {
    throw DomainError("perturbation_fraction", "must be in (0, 0.5]");
  }
  spec.validate();

  ScenarioSpec probe = spec;
  SensitivityReport report{parameter, parameter_slot(probe, parameter), perturbation_fraction, {}};
  if (report.base_value == 0.0) return report;

  parameter_slot(probe, parameter) = report.base_value * (1.0 + perturbation_fraction);
  const ScenarioResult up = evaluate_scenario(probe);
  parameter_slot(probe, parameter) = report.base_value * (1.0 - perturbation_fraction);
  const ScenarioResult down = evaluate_scenario(probe);

  const double log_ratio = std::log((1.0 + perturbation_fraction) / (1.0 - perturbation_fraction));
  auto& e = report.elasticity;
  e.gpu_count = log_elasticity(up.gpu_count, down.gpu_count, log_ratio);
  e.energy_mwh = log_elasticity(up.energy_mwh, down.energy_mwh, log_ratio);
  e.peak_load_mw = log_elasticity(up.peak_load_mw, down.peak_load_mw, log_ratio);
  e.capex_usd = log_elasticity(up.capex_usd, down.capex_usd, log_ratio);
  e.opex_usd = log_elasticity(up.opex_usd, down.opex_usd, log_ratio);
  e.total_usd = log_elasticity(up.total_usd, down.total_usd, log_ratio);
  return report;
}

}  // namespace sovtrain
