#pragma once

// Report-layer number formatting. Output only; nothing formatted here is
// ever parsed back into a computation. '.' is always the decimal separator.

#include <string>

#include "sovtrain/model.hpp"

namespace sovtrain::display {

/// Millions of USD with 2 decimals: 17390465.6 -> "17.39".
std::string musd(double usd);
/// Nearest MWh: 892.96 -> "893".
std::string mwh(double energy_mwh);
/// Megawatts with 2 decimals.
std::string mw(double peak_mw);
/// Integral in CEIL_UNITS, 2 decimals in FRACTIONAL.
std::string gpus(double count, RoundingMode mode);
/// Shortest representation that round-trips to the same double.
std::string exact(double value);

}  // namespace sovtrain::display
