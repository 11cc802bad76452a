#pragma once

// Spreadsheet-style recomputation of the model, used only by tests.
//
// Deliberately takes a different arithmetic route from the library: it
// works in long double, books compute as device-seconds, energy as
// device-hours x kW, and never calls into sovtrain.

#include <cmath>

namespace oracle {

struct Inputs {
  long double flops = 3.0e24L;
  long double days = 90.0L;
  long double mfu = 0.552L;
  long double pue = 1.3L;
  long double overhead = 1.3L;
  long double tflops = 0.0L;
  long double tdp_w = 0.0L;
  long double price = 0.0L;
  long double tariff = 0.0L;
  long double usd_per_mwh = 0.0L;
  bool ceil_units = false;
};

struct Outputs {
  long double gpus;
  long double energy_mwh;
  long double peak_mw;
  long double capex;
  long double opex;
  long double total;
};

inline Outputs evaluate(const Inputs& in) {
  const long double sustained_per_device = in.tflops * 1.0e12L * in.mfu;  // FLOP/s
  const long double device_seconds = in.flops / sustained_per_device;
  const long double window_seconds = in.days * 24.0L * 3600.0L;
  long double gpus = device_seconds / window_seconds;
  if (in.ceil_units) gpus = std::ceil(gpus);

  const long double kw_per_device = in.tdp_w / 1000.0L * in.overhead * in.pue;
  const long double device_hours = gpus * in.days * 24.0L;
  const long double energy_kwh = device_hours * kw_per_device;

  Outputs out{};
  out.gpus = gpus;
  out.energy_mwh = energy_kwh / 1000.0L;
  out.peak_mw = gpus * kw_per_device / 1000.0L;
  const long double landed_unit_price = in.price * (1.0L + in.tariff) * in.overhead;
  out.capex = gpus * landed_unit_price;
  out.opex = out.energy_mwh * in.usd_per_mwh;
  out.total = out.capex + out.opex;
  return out;
}

inline Inputs h100(long double days) {
  Inputs in;
  in.days = days;
  in.tflops = 2000.0L;
  in.tdp_w = 700.0L;
  in.price = 33000.0L;
  return in;
}

inline Inputs a100(long double days) {
  Inputs in;
  in.days = days;
  in.tflops = 312.0L;
  in.tdp_w = 400.0L;
  in.price = 12000.0L;
  return in;
}

inline Inputs brazil(Inputs in) {
  in.tariff = 0.16L;
  in.usd_per_mwh = 110.0L;
  return in;
}

inline Inputs mexico(Inputs in) {
  in.tariff = 0.0L;
  in.usd_per_mwh = 88.0L;
  return in;
}

inline bool rel_close(long double a, long double b, long double rel) {
  return std::fabs(a - b) <= rel * std::fmax(std::fabs(a), std::fabs(b));
}

}  // namespace oracle
