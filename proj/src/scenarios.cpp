#include "sovtrain/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <tuple>

#include "sovtrain/errors.hpp"

namespace sovtrain {
namespace {

// Below this the thread start-up costs more than the evaluation.
constexpr std::size_t kParallelThreshold = 512;

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

}  // namespace

std::vector<ScenarioRef> builtin_scenario_refs(RoundingMode rounding) {
  const auto& reg = ProfileRegistry::builtin();
  std::vector<ScenarioRef> refs;
  for (const auto& hw : reg.hardware()) {
    for (double days : kReferenceDurationsDays) {
      for (const auto& country : reg.countries()) {
        ScenarioRef ref;
        ref.id = scenario_id(hw.id, days, country.id);
        ref.hardware_id = hw.id;
        ref.country_id = country.id;
        ref.overrides.duration_days = days;
        ref.rounding = rounding;
        refs.push_back(std::move(ref));
      }
    }
  }
  return refs;
}

std::vector<ScenarioSpec> builtin_scenarios(RoundingMode rounding) {
  std::vector<ScenarioSpec> specs;
  for (const auto& ref : builtin_scenario_refs(rounding)) {
    specs.push_back(ProfileRegistry::builtin().resolve(ref));
  }
  return specs;
}

std::size_t SweepRequest::cell_count() const {
  return saturating_mul(saturating_mul(hardware.size(), countries.size()), durations_days.size());
}

void SweepRequest::validate() const {
  if (hardware.empty()) throw DomainError("hardware", "sweep needs at least one hardware profile");
  if (countries.empty()) throw DomainError("countries", "sweep needs at least one country");
  if (durations_days.empty()) throw DomainError("durations_days", "sweep needs at least one duration");
  if (max_cells == 0) throw DomainError("max_cells", "must be > 0");
  const std::size_t cells = cell_count();
  if (cells > max_cells) throw SweepTooLarge(cells, max_cells);
  for (const auto& hw : hardware) hw.validate();
  for (const auto& c : countries) c.validate();
  for (double d : durations_days) {
    if (!std::isfinite(d) || !(d > 0.0)) throw DomainError("durations_days", "must be > 0");
  }
  assumptions.validate();
  thresholds.validate();
}

SweepRequest make_sweep_request(const ProfileRegistry& registry,
                                const std::vector<std::string>& hardware_ids,
                                const std::vector<std::string>& country_ids,
                                std::vector<double> durations_days,
                                const AssumptionOverrides& overrides, RoundingMode rounding,
                                const FeasibilityThresholds& thresholds) {
  SweepRequest req;
  if (hardware_ids.empty()) {
    req.hardware = registry.hardware();
  } else {
    for (const auto& id : hardware_ids) req.hardware.push_back(registry.find_hardware(id));
  }
  if (country_ids.empty()) {
    req.countries = registry.countries();
  } else {
    for (const auto& id : country_ids) req.countries.push_back(registry.find_country(id));
  }
  req.durations_days = std::move(durations_days);
  req.assumptions = overrides.apply_to(registry.defaults());
  req.rounding = rounding;
  req.thresholds = thresholds;
  return req;
}

SweepRequest reference_grid_request(RoundingMode rounding) {
  const auto& reg = ProfileRegistry::builtin();
  return make_sweep_request(reg, {}, {}, kReferenceDurationsDays, {}, rounding, reg.thresholds());
}

SweepRow evaluate_row(const ScenarioSpec& spec, const FeasibilityThresholds& thresholds) {
  SweepRow row{spec, evaluate_scenario(spec), {}};
  row.verdict = assess(row.result, thresholds);
  return row;
}

std::vector<SweepRow> run_sweep(const SweepRequest& request) {
  request.validate();

  std::vector<ScenarioSpec> cells;
  cells.reserve(request.cell_count());
  for (const auto& hw : request.hardware) {
    for (const auto& country : request.countries) {
      for (double days : request.durations_days) {
        ScenarioSpec spec;
        spec.id = scenario_id(hw.id, days, country.id);
        spec.hardware = hw;
        spec.country = country;
        spec.assumptions = request.assumptions;
        spec.assumptions.duration_days = days;
        spec.rounding = request.rounding;
        cells.push_back(std::move(spec));
      }
    }
  }

  std::vector<SweepRow> rows(cells.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) rows[i] = evaluate_row(cells[i], request.thresholds);
  };

  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  if (cells.size() < kParallelThreshold || workers == 1) {
    work(0, cells.size());
    return rows;
  }
  // Every cell is validated up front, so workers cannot throw.
  const std::size_t chunk = (cells.size() + workers - 1) / workers;
  {
    std::vector<std::jthread> pool;
    for (std::size_t begin = 0; begin < cells.size(); begin += chunk) {
      pool.emplace_back(work, begin, std::min(cells.size(), begin + chunk));
    }
  }
  return rows;
}

std::optional<SweepRow> min_cost_feasible(const std::vector<SweepRow>& rows) {
  const SweepRow* best = nullptr;
  auto key = [](const SweepRow& r) {
    return std::tie(r.result.total_usd, r.result.peak_load_mw, r.result.gpu_count, r.spec.id);
  };
  for (const auto& row : rows) {
    if (row.verdict.classification == Classification::kInfeasible) continue;
    if (best == nullptr || key(row) < key(*best)) best = &row;
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

std::optional<SweepRow> min_cost_feasible(const SweepRequest& request) {
  return min_cost_feasible(run_sweep(request));
}

}  // namespace sovtrain
