#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "sovtrain/model.hpp"
#include "sovtrain/registry.hpp"

namespace testsupport {

// Exact rational evaluation of the reference grid, rounded once to double.
struct FrozenRow {
  const char* hardware;
  double days;
  const char* country;
  bool ceil_units;
  double gpus;
  double energy_mwh;
  double peak_mw;
  double capex;
  double opex;
  double total;
};

inline constexpr std::array<FrozenRow, 16> kFrozenGrid{{
    {"h100", 90, "br", false, 349.4587582751834, 892.9649758454107, 0.41340971103954194, 17390465.646806225, 98226.14734299517, 17488691.79414922},
    {"h100", 90, "br", true, 350.0, 894.348, 0.41405, 17417400.0, 98378.28, 17515778.28},
    {"h100", 90, "mx", false, 349.4587582751834, 892.9649758454107, 0.41340971103954194, 14991780.730005369, 78580.91787439614, 15070361.647879764},
    {"h100", 90, "mx", true, 350.0, 894.348, 0.41405, 15015000.0, 78702.624, 15093702.624},
    {"h100", 150, "br", false, 209.67525496511004, 892.9649758454107, 0.24804582662372518, 10434279.388083735, 98226.14734299517, 10532505.53542673},
    {"h100", 150, "br", true, 210.0, 894.348, 0.24843, 10450440.0, 98378.28, 10548818.28},
    {"h100", 150, "mx", false, 209.67525496511004, 892.9649758454107, 0.24804582662372518, 8995068.438003222, 78580.91787439614, 9073649.355877617},
    {"h100", 150, "mx", true, 210.0, 894.348, 0.24843, 9009000.0, 78702.624, 9087702.624},
    {"a100", 90, "br", false, 2240.12024535374, 3270.9339774557166, 1.514321285859128, 40537215.95992127, 359802.73752012884, 40897018.6974414},
    {"a100", 90, "br", true, 2241.0, 3272.21856, 1.514916, 40553136.0, 359944.0416, 40913080.0416},
    {"a100", 90, "mx", false, 2240.12024535374, 3270.9339774557166, 1.514321285859128, 34945875.82751834, 287842.19001610304, 35233718.01753444},
    {"a100", 90, "mx", true, 2241.0, 3272.21856, 1.514916, 34959600.0, 287955.23328, 35247555.23328},
    {"a100", 150, "br", false, 1344.0721472122439, 3270.9339774557166, 0.9085927715154768, 24322329.575952765, 359802.73752012884, 24682132.313472893},
    {"a100", 150, "br", true, 1345.0, 3273.192, 0.90922, 24339120.0, 360051.12, 24699171.12},
    {"a100", 150, "mx", false, 1344.0721472122439, 3270.9339774557166, 0.9085927715154768, 20967525.496511005, 287842.19001610304, 21255367.686527107},
    {"a100", 150, "mx", true, 1345.0, 3273.192, 0.90922, 20982000.0, 288040.896, 21270040.896},
}};

inline sovtrain::ScenarioSpec make_spec(const std::string& hw, double days, const std::string& country,
                                        sovtrain::RoundingMode mode) {
  const auto& reg = sovtrain::ProfileRegistry::builtin();
  sovtrain::ScenarioSpec spec;
  spec.id = sovtrain::scenario_id(hw, days, country);
  spec.hardware = reg.find_hardware(hw);
  spec.country = reg.find_country(country);
  spec.assumptions = reg.defaults();
  spec.assumptions.duration_days = days;
  spec.rounding = mode;
  return spec;
}

// Seeded generator for property tests; the seed is fixed so failures replay.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0x5eed'1234'abcdULL) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  // Log-uniform, for quantities spanning orders of magnitude.
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }

  sovtrain::HardwareProfile hardware() {
    sovtrain::HardwareProfile hw;
    hw.id = "hw" + std::to_string(integer(0, 999));
    hw.display_name = "Synthetic " + hw.id;
    hw.peak_tflops = log_uniform(10.0, 20000.0);
    hw.precision_label = "FP8";
    hw.tdp_watts = uniform(50.0, 2000.0);
    hw.unit_price_usd = log_uniform(500.0, 200000.0);
    return hw;
  }

  sovtrain::CountryProfile country() {
    sovtrain::CountryProfile c;
    c.id = "c" + std::to_string(integer(0, 999));
    c.display_name = "Country " + c.id;
    c.import_tariff_rate = coin() ? 0.0 : uniform(0.0, 0.6);
    c.electricity_tariff_usd_per_mwh = uniform(5.0, 400.0);
    return c;
  }

  sovtrain::TrainingAssumptions assumptions() {
    sovtrain::TrainingAssumptions a;
    a.total_flops = log_uniform(1e18, 1e27);
    a.duration_days = uniform(1.0, 400.0);
    a.mfu = uniform(0.05, 1.0);
    a.pue = uniform(1.0, 2.5);
    a.integration_overhead_factor = uniform(1.0, 2.0);
    return a;
  }

  sovtrain::ScenarioSpec spec(sovtrain::RoundingMode mode) {
    sovtrain::ScenarioSpec s;
    s.id = "random";
    s.hardware = hardware();
    s.country = country();
    s.assumptions = assumptions();
    s.rounding = mode;
    return s;
  }

 private:
  std::mt19937_64 engine_;
};

inline bool rel_close(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::fmax(std::fabs(a), std::fabs(b));
}

}  // namespace testsupport
