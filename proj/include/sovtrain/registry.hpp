#pragma once

#include <map>
#include <string>
#include <vector>

#include "sovtrain/feasibility.hpp"
#include "sovtrain/model.hpp"

namespace sovtrain {

/// A scenario as written in configuration: profiles by id, optional
/// assumption overrides on top of the registry defaults.
struct ScenarioRef {
  std::string id;
  std::string hardware_id;
  std::string country_id;
  AssumptionOverrides overrides;
  RoundingMode rounding = RoundingMode::kCeilUnits;

  bool operator==(const ScenarioRef&) const = default;
};

/// Immutable set of hardware and country profiles plus model defaults.
/// Insertion order is preserved for listing.
class ProfileRegistry {
 public:
  ProfileRegistry(std::vector<HardwareProfile> hardware, std::vector<CountryProfile> countries,
                  TrainingAssumptions defaults, FeasibilityThresholds thresholds);

  /// H100/A100 and Brazil/Mexico with the reference training assumptions.
  static const ProfileRegistry& builtin();

  const std::vector<HardwareProfile>& hardware() const { return hardware_; }
  const std::vector<CountryProfile>& countries() const { return countries_; }
  const TrainingAssumptions& defaults() const { return defaults_; }
  const FeasibilityThresholds& thresholds() const { return thresholds_; }

  /// Throws ReferenceError when the id is not registered.
  const HardwareProfile& find_hardware(const std::string& id) const;
  const CountryProfile& find_country(const std::string& id) const;

  ScenarioSpec resolve(const ScenarioRef& ref) const;

  bool operator==(const ProfileRegistry& other) const {
    return hardware_ == other.hardware_ && countries_ == other.countries_ &&
           defaults_ == other.defaults_ && thresholds_ == other.thresholds_;
  }

 private:
  std::vector<HardwareProfile> hardware_;
  std::vector<CountryProfile> countries_;
  std::map<std::string, std::size_t, std::less<>> hardware_index_;
  std::map<std::string, std::size_t, std::less<>> country_index_;
  TrainingAssumptions defaults_;
  FeasibilityThresholds thresholds_;
};

HardwareProfile h100_profile();
HardwareProfile a100_profile();
CountryProfile brazil_profile();
CountryProfile mexico_profile();

/// Canonical id for a grid cell, e.g. "h100-90d-br".
std::string scenario_id(const std::string& hardware_id, double duration_days,
                        const std::string& country_id);

}  // namespace sovtrain
