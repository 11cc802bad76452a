#include "sovtrain/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "sovtrain/display.hpp"

namespace sovtrain {
namespace {

enum class Align { kLeft, kRight };

struct Grid {
  std::vector<std::string> header;
  std::vector<Align> align;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_csv(const Grid& g) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    out += '\n';
  };
  line(g.header);
  for (const auto& r : g.rows) line(r);
  return out;
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string render_markdown(const Grid& g) {
  std::string out = "|";
  for (const auto& h : g.header) out += " " + md_cell(h) + " |";
  out += "\n|";
  for (auto a : g.align) out += a == Align::kRight ? " ---: |" : " --- |";
  out += '\n';
  for (const auto& r : g.rows) {
    out += "|";
    for (const auto& c : r) out += " " + md_cell(c) + " |";
    out += '\n';
  }
  return out;
}

std::string render_plain(const Grid& g) {
  std::vector<std::size_t> width(g.header.size());
  for (std::size_t i = 0; i < g.header.size(); ++i) width[i] = g.header[i].size();
  for (const auto& r : g.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string text;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text += "  ";
      const std::string pad(width[i] - cells[i].size(), ' ');
      text += g.align[i] == Align::kRight ? pad + cells[i] : cells[i] + pad;
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out += text + '\n';
  };
  line(g.header);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& r : g.rows) line(r);
  return out;
}

std::string render(const Grid& g, TableFormat format) {
  switch (format) {
    case TableFormat::kPlain:
      return render_plain(g);
    case TableFormat::kCsv:
      return render_csv(g);
    case TableFormat::kMarkdown:
      return render_markdown(g);
    case TableFormat::kJson:
      break;
  }
  throw std::logic_error("json is rendered per report");
}

std::vector<std::string> table_cells(const SweepRow& row) {
  const auto& r = row.result;
  return {row.spec.id,
          row.spec.country.display_name,
          display::gpus(r.gpu_count, row.spec.rounding),
          display::mwh(r.energy_mwh),
          display::mw(r.peak_load_mw),
          display::musd(r.capex_usd),
          display::musd(r.opex_usd),
          display::musd(r.total_usd),
          std::string(to_string(row.verdict.classification))};
}

std::string fnv1a64_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace

std::optional<TableFormat> parse_table_format(std::string_view name) {
  if (name == "plain") return TableFormat::kPlain;
  if (name == "csv") return TableFormat::kCsv;
  if (name == "json") return TableFormat::kJson;
  if (name == "markdown" || name == "md") return TableFormat::kMarkdown;
  return std::nullopt;
}

std::optional<Figure> parse_figure(std::string_view name) {
  if (name == "gpus") return Figure::kGpus;
  if (name == "energy") return Figure::kEnergy;
  if (name == "peak_load") return Figure::kPeakLoad;
  return std::nullopt;
}

std::string_view to_string(Figure figure) {
  switch (figure) {
    case Figure::kGpus:
      return "gpus";
    case Figure::kEnergy:
      return "energy";
    case Figure::kPeakLoad:
      return "peak_load";
  }
  return "unknown";
}

std::string emit_table(std::span<const SweepRow> rows, TableFormat format) {
  if (format == TableFormat::kJson) {
    json doc;
    doc["columns"] = json::array();
    for (auto c : kTableColumns) doc["columns"].push_back(c);
    doc["rows"] = json::array();
    for (const auto& row : rows) doc["rows"].push_back(to_json(row));
    return doc.dump(2) + "\n";
  }
  Grid g;
  for (auto c : kTableColumns) g.header.emplace_back(c);
  g.align = {Align::kLeft,  Align::kLeft,  Align::kRight, Align::kRight, Align::kRight,
             Align::kRight, Align::kRight, Align::kRight, Align::kLeft};
  for (const auto& row : rows) g.rows.push_back(table_cells(row));
  return render(g, format);
}

std::string emit_figure_data(std::span<const SweepRow> rows, Figure figure) {
  std::string_view quantity;
  switch (figure) {
    case Figure::kGpus:
      quantity = "gpu_count";
      break;
    case Figure::kEnergy:
      quantity = "energy_gwh";
      break;
    case Figure::kPeakLoad:
      quantity = "peak_load_mw";
      break;
  }

  std::vector<std::string> series_order;
  std::map<std::string, std::map<double, double>> series;
  for (const auto& row : rows) {
    const auto& hw = row.spec.hardware.id;
    auto [it, inserted] = series.try_emplace(hw);
    if (inserted) series_order.push_back(hw);
    double y = 0.0;
    switch (figure) {
      case Figure::kGpus:
        y = row.result.gpu_count;
        break;
      case Figure::kEnergy:
        y = row.result.energy_mwh / 1e3;
        break;
      case Figure::kPeakLoad:
        y = row.result.peak_load_mw;
        break;
    }
    it->second.try_emplace(row.spec.assumptions.duration_days, y);
  }

  std::string out = fmt::format("series,duration_days,{}\n", quantity);
  for (const auto& hw : series_order) {
    for (const auto& [x, y] : series.at(hw)) {
      out += fmt::format("{},{},{}\n", csv_field(hw), display::exact(x), display::exact(y));
    }
  }
  return out;
}

std::string emit_diff(const ReferenceDiff& diff, TableFormat format) {
  if (format == TableFormat::kJson) return to_json(diff).dump(2) + "\n";
  Grid g;
  g.header = {"id",       "category", "quantity",  "scenario",     "country",
              "expected", "computed", "rel_delta", "reconcilable"};
  g.align = {Align::kLeft,  Align::kLeft,  Align::kLeft,  Align::kLeft, Align::kLeft,
             Align::kRight, Align::kRight, Align::kRight, Align::kLeft};
  for (const auto& e : diff.entries) {
    const auto& ref = e.reference;
    g.rows.push_back({ref.id, std::string(to_string(ref.category)),
                      std::string(to_string(ref.quantity)),
                      fmt::format("{}-{}d", ref.hardware_id, ref.duration_days),
                      ref.country_id.empty() ? "-" : ref.country_id, fmt::format("{:.2f}", ref.expected),
                      fmt::format("{:.2f}", e.computed), fmt::format("{:+.3f}%", 100.0 * e.rel_delta),
                      e.reconcilable ? "yes" : "NO"});
  }
  return render(g, format);
}

json evaluation_json(const SweepRow& row, const FeasibilityThresholds& thresholds) {
  json inputs = to_json(row.spec);
  inputs["thresholds"] = to_json(thresholds);
  const json table_row = to_json(row);
  json doc;
  doc["input_hash"] = "fnv1a64:" + fnv1a64_hex(inputs.dump());
  doc["inputs"] = std::move(inputs);
  doc["result"] = table_row.at("result");
  doc["verdict"] = table_row.at("verdict");
  doc["display"] = table_row.at("display");
  return doc;
}

std::string emit_evaluation(const SweepRow& row, const FeasibilityThresholds& thresholds,
                            TableFormat format) {
  if (format == TableFormat::kJson) return evaluation_json(row, thresholds).dump(2) + "\n";
  if (format != TableFormat::kPlain) {
    return emit_table(std::span<const SweepRow>(&row, 1), format);
  }

  const auto& s = row.spec;
  const auto& r = row.result;
  const auto& v = row.verdict;
  std::string out;
  auto kv = [&](std::string_view key, const std::string& value) {
    out += fmt::format("{:<16}{}\n", key, value);
  };
  kv("scenario", s.id);
  kv("hardware", fmt::format("{} ({}): {} TFLOP/s {}, {} W, {} USD", s.hardware.display_name,
                             s.hardware.id, display::exact(s.hardware.peak_tflops),
                             s.hardware.precision_label, display::exact(s.hardware.tdp_watts),
                             display::exact(s.hardware.unit_price_usd)));
  kv("country", fmt::format("{} ({}): import tariff {}, {} USD/MWh", s.country.display_name,
                            s.country.id, display::exact(s.country.import_tariff_rate),
                            display::exact(s.country.electricity_tariff_usd_per_mwh)));
  kv("assumptions",
     fmt::format("{} FLOPs, {} days, mfu {}, pue {}, overhead {}", display::exact(s.assumptions.total_flops),
                 display::exact(s.assumptions.duration_days), display::exact(s.assumptions.mfu),
                 display::exact(s.assumptions.pue), display::exact(s.assumptions.integration_overhead_factor)));
  kv("rounding", std::string(to_string(s.rounding)));
  kv("gpu_count", display::gpus(r.gpu_count, s.rounding));
  kv("energy", display::mwh(r.energy_mwh) + " MWh");
  kv("peak_load", display::mw(r.peak_load_mw) + " MW");
  kv("capex", display::musd(r.capex_usd) + " M USD");
  kv("opex", display::musd(r.opex_usd) + " M USD");
  kv("total", display::musd(r.total_usd) + " M USD");
  kv("classification", std::string(to_string(v.classification)));

  auto check = [&](std::string_view name, bool ok, const std::string& measured,
                   const std::string& limit) {
    out += fmt::format("  {:<28}{:<6}{} <= {}\n", name, ok ? "ok" : "FAIL", measured, limit);
  };
  check(to_string(Constraint::kExportCap), v.export_ok,
        display::exact(std::ceil(r.gpu_count)) + " units", display::exact(thresholds.gpu_export_cap));
  check(to_string(Constraint::kHardPowerCeiling), v.power_hard_ok, display::mw(r.peak_load_mw) + " MW",
        display::exact(thresholds.hard_power_ceiling_mw) + " MW");
  check(to_string(Constraint::kPracticalPowerThreshold), v.power_practical_ok,
        display::mw(r.peak_load_mw) + " MW", display::exact(thresholds.practical_power_threshold_mw) + " MW");
  check(to_string(Constraint::kFiscalCap), v.fiscal_ok, display::musd(r.total_usd) + " M USD",
        display::musd(thresholds.fiscal_cap_usd) + " M USD");
  return out;
}

std::string emit_sensitivity(std::span<const SensitivityReport> reports, TableFormat format) {
  if (format == TableFormat::kJson) {
    json doc = json::array();
    for (const auto& r : reports) doc.push_back(to_json(r));
    return doc.dump(2) + "\n";
  }
  Grid g;
  g.header = {"parameter",    "base_value", "perturbation", "gpu_count", "energy_mwh",
              "peak_load_mw", "capex_usd",  "opex_usd",     "total_usd"};
  g.align.assign(g.header.size(), Align::kRight);
  g.align[0] = Align::kLeft;
  auto e6 = [](double x) { return fmt::format("{:+.6f}", x == 0.0 ? 0.0 : x); };
  for (const auto& r : reports) {
    const auto& e = r.elasticity;
    g.rows.push_back({std::string(to_string(r.parameter)), display::exact(r.base_value),
                      display::exact(r.perturbation_fraction), e6(e.gpu_count), e6(e.energy_mwh),
                      e6(e.peak_load_mw), e6(e.capex_usd), e6(e.opex_usd), e6(e.total_usd)});
  }
  return render(g, format);
}

}  // namespace sovtrain
