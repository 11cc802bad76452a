#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "sovtrain/model.hpp"

namespace sovtrain {

enum class SensitivityParameter {
  kTotalFlops,
  kDurationDays,
  kMfu,
  kPue,
  kIntegrationOverheadFactor,
  kUnitPriceUsd,
  kElectricityTariffUsdPerMwh,
  kImportTariffRate,
};

std::string_view to_string(SensitivityParameter p);
std::optional<SensitivityParameter> parse_sensitivity_parameter(std::string_view name);
std::span<const SensitivityParameter> all_sensitivity_parameters();

/// Elasticity (d out / out) / (d param / param) of each ScenarioResult field.
struct Elasticities {
  double gpu_count = 0.0;
  double energy_mwh = 0.0;
  double peak_load_mw = 0.0;
  double capex_usd = 0.0;
  double opex_usd = 0.0;
  double total_usd = 0.0;
};

struct SensitivityReport {
  SensitivityParameter parameter;
  double base_value = 0.0;
  double perturbation_fraction = 0.0;
  Elasticities elasticity;
};

/// Central difference in log space:
///   ln(out(p(1+h)) / out(p(1-h))) / ln((1+h) / (1-h)),
/// which is exact for any h when out is a power law in p. A parameter whose
/// base value is zero has zero elasticity by definition.
///
/// Requires FRACTIONAL rounding and 0 < h <= 0.5. Throws DomainError when a
/// perturbed point leaves the valid domain (e.g. mfu pushed above 1).
SensitivityReport sensitivity(const ScenarioSpec& spec, SensitivityParameter parameter,
                              double perturbation_fraction);

}  // namespace sovtrain
