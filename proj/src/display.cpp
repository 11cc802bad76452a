#include "sovtrain/display.hpp"

#include <fmt/format.h>

namespace sovtrain::display {
namespace {

// Values that round to zero print unsigned: never "-0.00".
std::string fixed(double v, int decimals) {
  std::string s = fmt::format("{:.{}f}", v, decimals);
  if (s.front() == '-' && s.find_first_not_of("0.", 1) == std::string::npos) s.erase(0, 1);
  return s;
}

}  // namespace

std::string musd(double usd) { return fixed(usd / 1e6, 2); }

std::string mwh(double energy_mwh) { return fixed(energy_mwh, 0); }

std::string mw(double peak_mw) { return fixed(peak_mw, 2); }

std::string gpus(double count, RoundingMode mode) {
  if (mode == RoundingMode::kCeilUnits) return fmt::format("{:.0f}", count);
  return fmt::format("{:.2f}", count);
}

std::string exact(double value) { return fmt::format("{}", value); }

}  // namespace sovtrain::display
