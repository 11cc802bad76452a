#include "sovtrain/registry.hpp"

#include <fmt/format.h>

#include "sovtrain/errors.hpp"

namespace sovtrain {

HardwareProfile h100_profile() {
  return {"h100", "NVIDIA H100", 2000.0, "FP8", 700.0, 33'000.0};
}

HardwareProfile a100_profile() {
  return {"a100", "NVIDIA A100", 312.0, "FP16", 400.0, 12'000.0};
}

CountryProfile brazil_profile() { return {"br", "Brazil", 0.16, 110.0}; }

CountryProfile mexico_profile() { return {"mx", "Mexico", 0.0, 88.0}; }

ProfileRegistry::ProfileRegistry(std::vector<HardwareProfile> hardware,
                                 std::vector<CountryProfile> countries,
                                 TrainingAssumptions defaults, FeasibilityThresholds thresholds)
    : hardware_(std::move(hardware)),
      countries_(std::move(countries)),
      defaults_(defaults),
      thresholds_(thresholds) {
  for (std::size_t i = 0; i < hardware_.size(); ++i) {
    hardware_[i].validate();
    if (!hardware_index_.emplace(hardware_[i].id, i).second) {
      throw DomainError("id", "duplicate hardware id '" + hardware_[i].id + "'");
    }
  }
  for (std::size_t i = 0; i < countries_.size(); ++i) {
    countries_[i].validate();
    if (!country_index_.emplace(countries_[i].id, i).second) {
      throw DomainError("id", "duplicate country id '" + countries_[i].id + "'");
    }
  }
  defaults_.validate();
  thresholds_.validate();
}

const ProfileRegistry& ProfileRegistry::builtin() {
  static const ProfileRegistry registry({h100_profile(), a100_profile()},
                                        {brazil_profile(), mexico_profile()},
                                        TrainingAssumptions{}, FeasibilityThresholds{});
  return registry;
}

const HardwareProfile& ProfileRegistry::find_hardware(const std::string& id) const {
  auto it = hardware_index_.find(id);
  if (it == hardware_index_.end()) throw ReferenceError("hardware", id);
  return hardware_[it->second];
}

const CountryProfile& ProfileRegistry::find_country(const std::string& id) const {
  auto it = country_index_.find(id);
  if (it == country_index_.end()) throw ReferenceError("country", id);
  return countries_[it->second];
}

ScenarioSpec ProfileRegistry::resolve(const ScenarioRef& ref) const {
  return ScenarioSpec{ref.id, find_hardware(ref.hardware_id), find_country(ref.country_id),
                      ref.overrides.apply_to(defaults_), ref.rounding};
}

std::string scenario_id(const std::string& hardware_id, double duration_days,
                        const std::string& country_id) {
  return fmt::format("{}-{}d-{}", hardware_id, duration_days, country_id);
}

}  // namespace sovtrain
