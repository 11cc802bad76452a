#include "sovtrain/json_codec.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "sovtrain/display.hpp"

namespace sovtrain {

std::string_view to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::kSyntax:
      return "syntax";
    case IssueKind::kSchema:
      return "schema";
    case IssueKind::kUnresolvedReference:
      return "unresolved_reference";
    case IssueKind::kDuplicateId:
      return "duplicate_id";
    case IssueKind::kInvariant:
      return "invariant";
  }
  return "unknown";
}

std::string Issue::describe() const {
  return fmt::format("{} error at {}: {}", to_string(kind), location.empty() ? "/" : location,
                     message);
}

namespace {

std::string join_issues(const std::vector<Issue>& issues) {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += '\n';
    out += issue.describe();
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and may point one past the end.
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string message = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at line 1, column 2: " prefix.
    if (auto pos = message.find(": "); pos != std::string::npos) message = message.substr(pos + 2);
    throw ValidationError({{IssueKind::kSyntax, fmt::format("line {}, column {}", line, column),
                            std::move(message)}});
  } catch (const json::exception& e) {
    // Lexically valid but unrepresentable, e.g. a number overflowing double.
    std::string message = e.what();
    if (auto pos = message.find("] "); pos != std::string::npos) message = message.substr(pos + 2);
    throw ValidationError({{IssueKind::kSyntax, "/", std::move(message)}});
  }
}

std::string child_path(const std::string& parent, std::string_view key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') {
      escaped += "~0";
    } else if (c == '/') {
      escaped += "~1";
    } else {
      escaped += c;
    }
  }
  return parent + "/" + escaped;
}

std::string child_path(const std::string& parent, std::size_t index) {
  return parent + "/" + std::to_string(index);
}

// ---- encoding -------------------------------------------------------------

json to_json(const HardwareProfile& hw) {
  return json{{"id", hw.id},
              {"display_name", hw.display_name},
              {"peak_tflops", hw.peak_tflops},
              {"precision_label", hw.precision_label},
              {"tdp_watts", hw.tdp_watts},
              {"unit_price_usd", hw.unit_price_usd}};
}

json to_json(const CountryProfile& c) {
  return json{{"id", c.id},
              {"display_name", c.display_name},
              {"import_tariff_rate", c.import_tariff_rate},
              {"electricity_tariff_usd_per_mwh", c.electricity_tariff_usd_per_mwh}};
}

json to_json(const TrainingAssumptions& a) {
  return json{{"total_flops", a.total_flops},
              {"duration_days", a.duration_days},
              {"mfu", a.mfu},
              {"pue", a.pue},
              {"integration_overhead_factor", a.integration_overhead_factor}};
}

json to_json(const AssumptionOverrides& o) {
  json j = json::object();
  if (o.total_flops) j["total_flops"] = *o.total_flops;
  if (o.duration_days) j["duration_days"] = *o.duration_days;
  if (o.mfu) j["mfu"] = *o.mfu;
  if (o.pue) j["pue"] = *o.pue;
  if (o.integration_overhead_factor) j["integration_overhead_factor"] = *o.integration_overhead_factor;
  return j;
}

json to_json(const FeasibilityThresholds& t) {
  return json{{"gpu_export_cap", t.gpu_export_cap},
              {"hard_power_ceiling_mw", t.hard_power_ceiling_mw},
              {"practical_power_threshold_mw", t.practical_power_threshold_mw},
              {"fiscal_cap_usd", t.fiscal_cap_usd}};
}

json to_json(const ScenarioResult& r) {
  return json{{"gpu_count", r.gpu_count},   {"energy_mwh", r.energy_mwh},
              {"peak_load_mw", r.peak_load_mw}, {"capex_usd", r.capex_usd},
              {"opex_usd", r.opex_usd},     {"total_usd", r.total_usd}};
}

json to_json(const FeasibilityVerdict& v) {
  json violated = json::array();
  for (const auto& x : v.violated) {
    violated.push_back(
        {{"constraint", to_string(x.constraint)}, {"measured", x.measured}, {"threshold", x.threshold}});
  }
  return json{{"classification", to_string(v.classification)},
              {"export_ok", v.export_ok},
              {"power_hard_ok", v.power_hard_ok},
              {"power_practical_ok", v.power_practical_ok},
              {"fiscal_ok", v.fiscal_ok},
              {"violated", std::move(violated)}};
}

json to_json(const ScenarioSpec& spec) {
  return json{{"id", spec.id},
              {"hardware", to_json(spec.hardware)},
              {"country", to_json(spec.country)},
              {"assumptions", to_json(spec.assumptions)},
              {"rounding", to_string(spec.rounding)}};
}

json to_json(const SweepRow& row) {
  const auto& r = row.result;
  return json{{"scenario", row.spec.id},
              {"hardware", row.spec.hardware.id},
              {"country", row.spec.country.id},
              {"duration_days", row.spec.assumptions.duration_days},
              {"rounding", to_string(row.spec.rounding)},
              {"result", to_json(r)},
              {"verdict", to_json(row.verdict)},
              {"display",
               {{"gpu_count", display::gpus(r.gpu_count, row.spec.rounding)},
                {"energy_mwh", display::mwh(r.energy_mwh)},
                {"peak_load_mw", display::mw(r.peak_load_mw)},
                {"capex_musd", display::musd(r.capex_usd)},
                {"opex_musd", display::musd(r.opex_usd)},
                {"total_musd", display::musd(r.total_usd)}}}};
}

json to_json(const ReferenceDiff& diff) {
  json entries = json::array();
  for (const auto& e : diff.entries) {
    const auto& ref = e.reference;
    entries.push_back({{"id", ref.id},
                       {"category", to_string(ref.category)},
                       {"quantity", to_string(ref.quantity)},
                       {"hardware", ref.hardware_id},
                       {"duration_days", ref.duration_days},
                       {"country", ref.country_id.empty() ? json(nullptr) : json(ref.country_id)},
                       {"expected", ref.expected},
                       {"computed", e.computed},
                       {"abs_delta", e.abs_delta},
                       {"rel_delta", e.rel_delta},
                       {"reconcilable", e.reconcilable},
                       {"citation", ref.citation}});
  }
  return json{{"dataset_version", diff.dataset_version},
              {"rounding", to_string(RoundingMode::kFractional)},
              {"tolerance", diff.tolerance},
              {"reconcilable_count", diff.reconcilable_count()},
              {"entry_count", diff.entries.size()},
              {"entries", std::move(entries)}};
}

json to_json(const SensitivityReport& report) {
  const auto& e = report.elasticity;
  return json{{"parameter", to_string(report.parameter)},
              {"base_value", report.base_value},
              {"perturbation_fraction", report.perturbation_fraction},
              {"elasticity",
               {{"gpu_count", e.gpu_count},
                {"energy_mwh", e.energy_mwh},
                {"peak_load_mw", e.peak_load_mw},
                {"capex_usd", e.capex_usd},
                {"opex_usd", e.opex_usd},
                {"total_usd", e.total_usd}}}};
}

// ---- decoding --------------------------------------------------------------

void JsonReader::add(IssueKind kind, std::string location, std::string message) {
  issues_.push_back({kind, std::move(location), std::move(message)});
}

void JsonReader::throw_if_failed() const {
  if (!issues_.empty()) throw ValidationError(issues_);
}

bool JsonReader::expect_object(const json& obj, const std::string& path,
                               std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    add(IssueKind::kSchema, path, fmt::format("expected an object, got {}", obj.type_name()));
    return false;
  }
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      add(IssueKind::kSchema, child_path(path, key), fmt::format("unknown key '{}'", key));
    }
  }
  return true;
}

std::optional<double> JsonReader::number(const json& obj, const std::string& path,
                                         std::string_view key, bool required) {
  auto it = obj.find(std::string(key));
  if (it == obj.end()) {
    if (required) add(IssueKind::kSchema, child_path(path, key), "missing required number");
    return std::nullopt;
  }
  if (!it->is_number()) {
    add(IssueKind::kSchema, child_path(path, key),
        fmt::format("expected a number, got {}", it->type_name()));
    return std::nullopt;
  }
  return it->get<double>();
}

std::optional<std::string> JsonReader::string(const json& obj, const std::string& path,
                                              std::string_view key, bool required) {
  auto it = obj.find(std::string(key));
  if (it == obj.end()) {
    if (required) add(IssueKind::kSchema, child_path(path, key), "missing required string");
    return std::nullopt;
  }
  if (!it->is_string()) {
    add(IssueKind::kSchema, child_path(path, key),
        fmt::format("expected a string, got {}", it->type_name()));
    return std::nullopt;
  }
  return it->get<std::string>();
}

std::optional<HardwareProfile> JsonReader::hardware(const json& v, const std::string& path) {
  const std::size_t before = issues_.size();
  if (!expect_object(v, path,
                     {"id", "display_name", "peak_tflops", "precision_label", "tdp_watts",
                      "unit_price_usd"})) {
    return std::nullopt;
  }
  HardwareProfile hw;
  hw.id = string(v, path, "id", true).value_or("");
  hw.display_name = string(v, path, "display_name", false).value_or(hw.id);
  hw.precision_label = string(v, path, "precision_label", false).value_or("");
  hw.peak_tflops = number(v, path, "peak_tflops", true).value_or(0.0);
  hw.tdp_watts = number(v, path, "tdp_watts", true).value_or(0.0);
  hw.unit_price_usd = number(v, path, "unit_price_usd", true).value_or(0.0);
  if (issues_.size() != before) return std::nullopt;
  invariant(path, [&] { hw.validate(); });
  if (issues_.size() != before) return std::nullopt;
  return hw;
}

std::optional<CountryProfile> JsonReader::country(const json& v, const std::string& path) {
  const std::size_t before = issues_.size();
  if (!expect_object(v, path,
                     {"id", "display_name", "import_tariff_rate", "electricity_tariff_usd_per_mwh"})) {
    return std::nullopt;
  }
  CountryProfile c;
  c.id = string(v, path, "id", true).value_or("");
  c.display_name = string(v, path, "display_name", false).value_or(c.id);
  c.import_tariff_rate = number(v, path, "import_tariff_rate", true).value_or(0.0);
  c.electricity_tariff_usd_per_mwh =
      number(v, path, "electricity_tariff_usd_per_mwh", true).value_or(0.0);
  if (issues_.size() != before) return std::nullopt;
  invariant(path, [&] { c.validate(); });
  if (issues_.size() != before) return std::nullopt;
  return c;
}

AssumptionOverrides JsonReader::overrides(const json& v, const std::string& path) {
  AssumptionOverrides o;
  if (!expect_object(v, path,
                     {"total_flops", "duration_days", "mfu", "pue", "integration_overhead_factor"})) {
    return o;
  }
  o.total_flops = number(v, path, "total_flops", false);
  o.duration_days = number(v, path, "duration_days", false);
  o.mfu = number(v, path, "mfu", false);
  o.pue = number(v, path, "pue", false);
  o.integration_overhead_factor = number(v, path, "integration_overhead_factor", false);
  return o;
}

TrainingAssumptions JsonReader::assumptions(const json& v, const std::string& path,
                                            const TrainingAssumptions& base) {
  const std::size_t before = issues_.size();
  TrainingAssumptions a = overrides(v, path).apply_to(base);
  if (issues_.size() == before) invariant(path, [&] { a.validate(); });
  return a;
}

FeasibilityThresholds JsonReader::thresholds(const json& v, const std::string& path,
                                             const FeasibilityThresholds& base) {
  FeasibilityThresholds t = base;
  const std::size_t before = issues_.size();
  if (!expect_object(v, path,
                     {"gpu_export_cap", "hard_power_ceiling_mw", "practical_power_threshold_mw",
                      "fiscal_cap_usd"})) {
    return t;
  }
  if (auto x = number(v, path, "gpu_export_cap", false)) t.gpu_export_cap = *x;
  if (auto x = number(v, path, "hard_power_ceiling_mw", false)) t.hard_power_ceiling_mw = *x;
  if (auto x = number(v, path, "practical_power_threshold_mw", false)) {
    t.practical_power_threshold_mw = *x;
  }
  if (auto x = number(v, path, "fiscal_cap_usd", false)) t.fiscal_cap_usd = *x;
  if (issues_.size() == before) invariant(path, [&] { t.validate(); });
  return t;
}

std::optional<RoundingMode> JsonReader::rounding(const json& v, const std::string& path) {
  if (!v.is_string()) {
    add(IssueKind::kSchema, path, fmt::format("expected a string, got {}", v.type_name()));
    return std::nullopt;
  }
  auto mode = parse_rounding_mode(v.get<std::string>());
  if (!mode) {
    add(IssueKind::kSchema, path,
        fmt::format("unknown rounding mode '{}' (expected fractional or ceil_units)",
                    v.get<std::string>()));
  }
  return mode;
}

}  // namespace sovtrain
