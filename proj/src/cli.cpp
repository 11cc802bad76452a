#include "sovtrain/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <set>

#include "sovtrain/config.hpp"
#include "sovtrain/errors.hpp"
#include "sovtrain/reference_diff.hpp"
#include "sovtrain/report.hpp"
#include "sovtrain/scenarios.hpp"
#include "sovtrain/sensitivity.hpp"
#include "sovtrain/service.hpp"

namespace sovtrain::cli {
namespace {

struct AssumptionFlags {
  std::optional<double> flops;
  std::optional<double> days;
  std::optional<double> mfu;
  std::optional<double> pue;
  std::optional<double> overhead;

  void add_to(CLI::App& cmd, bool with_days) {
    cmd.add_option("--flops", flops, "Total training compute in FLOPs");
    if (with_days) cmd.add_option("--days", days, "Training duration in days");
    cmd.add_option("--mfu", mfu, "Model FLOP utilization in (0, 1]");
    cmd.add_option("--pue", pue, "Power usage effectiveness (>= 1)");
    cmd.add_option("--overhead", overhead, "Integration overhead factor (>= 1)");
  }

  /// Flags win over `base`.
  AssumptionOverrides merge_over(AssumptionOverrides base) const {
    if (flops) base.total_flops = flops;
    if (days) base.duration_days = days;
    if (mfu) base.mfu = mfu;
    if (pue) base.pue = pue;
    if (overhead) base.integration_overhead_factor = overhead;
    return base;
  }
};

struct ThresholdFlags {
  std::optional<double> gpu_cap;
  std::optional<double> hard_power_mw;
  std::optional<double> practical_power_mw;
  std::optional<double> fiscal_cap;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--gpu-cap", gpu_cap, "Export-control device cap");
    cmd.add_option("--hard-power-mw", hard_power_mw, "Hard peak-load ceiling in MW");
    cmd.add_option("--practical-power-mw", practical_power_mw, "Practical peak-load threshold in MW");
    cmd.add_option("--fiscal-cap", fiscal_cap, "Fiscal cap in USD (capex + opex)");
  }

  FeasibilityThresholds apply_to(FeasibilityThresholds t) const {
    if (gpu_cap) t.gpu_export_cap = *gpu_cap;
    if (hard_power_mw) t.hard_power_ceiling_mw = *hard_power_mw;
    if (practical_power_mw) t.practical_power_threshold_mw = *practical_power_mw;
    if (fiscal_cap) t.fiscal_cap_usd = *fiscal_cap;
    t.validate();
    return t;
  }
};


struct Options {
  std::string config_path;

  // scenario selection
  std::string scenario;
  std::string hardware;
  std::string country;
  std::vector<std::string> hardware_list;
  std::vector<std::string> country_list;
  std::vector<double> days_list;
  AssumptionFlags assumptions;
  ThresholdFlags thresholds;
  std::optional<RoundingMode> rounding;
  std::string rounding_name;
  TableFormat format = TableFormat::kPlain;
  std::string format_name = "plain";
  std::size_t max_cells = kDefaultMaxSweepCells;

  Figure figure = Figure::kGpus;
  std::string figure_name;
  std::vector<std::string> parameters;
  double perturbation = 0.1;

  ServerOptions server;
};

ConfigDocument load_document(const Options& o) {
  std::string path = o.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnvVar); env != nullptr) path = env;
  }
  return path.empty() ? ConfigDocument::builtin() : load_config_file(path);
}

/// Scenario from --scenario (plus flag overrides) or from inline flags.
ScenarioSpec select_scenario(const ConfigDocument& doc, const Options& o,
                             RoundingMode default_rounding) {
  ScenarioRef ref;
  if (!o.scenario.empty()) {
    auto it = std::find_if(doc.scenarios.begin(), doc.scenarios.end(),
                           [&](const ScenarioRef& s) { return s.id == o.scenario; });
    if (it == doc.scenarios.end()) throw ReferenceError("scenario", o.scenario);
    ref = *it;
    if (!o.hardware.empty()) ref.hardware_id = o.hardware;
    if (!o.country.empty()) ref.country_id = o.country;
    if (o.rounding) ref.rounding = *o.rounding;
    ref.overrides = o.assumptions.merge_over(ref.overrides);
  } else {
    if (o.hardware.empty() || o.country.empty()) {
      throw DomainError("scenario", "give --scenario, or both --hardware and --country");
    }
    ref.hardware_id = o.hardware;
    ref.country_id = o.country;
    ref.rounding = o.rounding.value_or(default_rounding);
    ref.overrides = o.assumptions.merge_over({});
  }
  ScenarioSpec spec = doc.registry.resolve(ref);
  // A named scenario keeps its id unless its identity flags were overridden.
  const bool renamed = o.scenario.empty() || o.assumptions.days || !o.hardware.empty() ||
                       !o.country.empty();
  if (renamed) {
    spec.id = scenario_id(spec.hardware.id, spec.assumptions.duration_days, spec.country.id);
  }
  return spec;
}

SweepRequest grid_request(const ConfigDocument& doc, const Options& o) {
  std::vector<double> durations = o.days_list;
  if (durations.empty()) {
    std::set<double> seen;
    for (const auto& spec : doc.resolved_scenarios()) seen.insert(spec.assumptions.duration_days);
    durations.assign(seen.begin(), seen.end());
  }
  if (durations.empty()) durations = kReferenceDurationsDays;
  SweepRequest req = make_sweep_request(
      doc.registry, o.hardware_list, o.country_list, std::move(durations),
      o.assumptions.merge_over({}), o.rounding.value_or(RoundingMode::kCeilUnits),
      o.thresholds.apply_to(doc.registry.thresholds()));
  req.max_cells = o.max_cells;
  return req;
}

void add_format(CLI::App& cmd, Options& o) {
  cmd.add_option("--format", o.format_name, "Output format")
      ->check(CLI::IsMember({"plain", "csv", "json", "markdown"}));
}

void add_rounding(CLI::App& cmd, Options& o) {
  cmd.add_option("--rounding", o.rounding_name, "Fleet rounding")
      ->check(CLI::IsMember({"fractional", "ceil_units", "ceil"}));
}

void add_single_scenario(CLI::App& cmd, Options& o) {
  cmd.add_option("--scenario", o.scenario, "Scenario id from the config");
  cmd.add_option("--hardware", o.hardware, "Hardware profile id");
  cmd.add_option("--country", o.country, "Country profile id");
  o.assumptions.add_to(cmd, true);
  add_rounding(cmd, o);
}

void add_grid(CLI::App& cmd, Options& o) {
  cmd.add_option("--hardware", o.hardware_list, "Hardware ids (default: all)");
  cmd.add_option("--country", o.country_list, "Country ids (default: all)");
  cmd.add_option("--days", o.days_list, "Durations in days (default: from config scenarios)");
  o.assumptions.add_to(cmd, false);
  add_rounding(cmd, o);
  o.thresholds.add_to(cmd);
  cmd.add_option("--max-cells", o.max_cells, "Largest grid allowed")->check(CLI::PositiveNumber);
}

int report_issues(const ValidationError& e, std::ostream& err) {
  for (const auto& issue : e.issues()) err << "error: " << issue.describe() << '\n';
  return kError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Sizing, cost and feasibility model for sovereign LLM training runs", "sovtrain"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fmt::format("sovtrain {}", kVersion));
  app.add_option("--config", o.config_path,
                 fmt::format("Config file (default: ${} or the builtin profiles)", kConfigEnvVar));

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate one scenario");
  add_single_scenario(*evaluate, o);
  o.thresholds.add_to(*evaluate);
  add_format(*evaluate, o);

  auto* sweep = app.add_subcommand("sweep", "Evaluate a hardware x country x duration grid");
  add_grid(*sweep, o);
  add_format(*sweep, o);

  auto* figures = app.add_subcommand("figures", "Emit figure series as CSV");
  add_grid(*figures, o);
  figures->add_option("--figure", o.figure_name, "Figure series")
      ->required()
      ->check(CLI::IsMember({"gpus", "energy", "peak_load"}));

  auto* optimize = app.add_subcommand("optimize", "Cheapest non-infeasible configuration of a grid");
  add_grid(*optimize, o);
  add_format(*optimize, o);

  auto* diff = app.add_subcommand("diff", "Compare the model with the published reference values");
  add_format(*diff, o);

  auto* check = app.add_subcommand("check", "Gate every config scenario; exit 2 if any is infeasible");
  o.thresholds.add_to(*check);
  add_rounding(*check, o);
  add_format(*check, o);

  auto* sens = app.add_subcommand("sensitivity", "Elasticities of every output for one scenario");
  add_single_scenario(*sens, o);
  sens->add_option("--parameter", o.parameters, "Parameter names (default: all)");
  sens->add_option("--perturbation", o.perturbation, "Relative perturbation in (0, 0.5]");
  add_format(*sens, o);

  auto* config = app.add_subcommand("config", "Print the active configuration as JSON");

  auto* serve = app.add_subcommand("serve", "Run the HTTP/JSON API");
  serve->add_option("--port", o.server.port, "Port (0 picks a free one)");
  serve->add_option("--bind", o.server.bind_address, "Bind address");
  serve->add_option("--cors-origin", o.server.cors_origin,
                    "Access-Control-Allow-Origin value; empty disables CORS");
  serve->add_option("--max-cells", o.max_cells, "Largest sweep allowed")->check(CLI::PositiveNumber);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<const char*> argv{"sovtrain"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }
  // Option values were checked against these names during parsing.
  o.format = *parse_table_format(o.format_name);
  if (!o.rounding_name.empty()) o.rounding = parse_rounding_mode(o.rounding_name);
  if (!o.figure_name.empty()) o.figure = *parse_figure(o.figure_name);

  try {
    const ConfigDocument doc = load_document(o);
    std::string text;
    int status = kOk;

    if (evaluate->parsed()) {
      const ScenarioSpec spec = select_scenario(doc, o, RoundingMode::kCeilUnits);
      const auto thresholds = o.thresholds.apply_to(doc.registry.thresholds());
      text = emit_evaluation(evaluate_row(spec, thresholds), thresholds, o.format);
    } else if (sweep->parsed()) {
      text = emit_table(run_sweep(grid_request(doc, o)), o.format);
    } else if (figures->parsed()) {
      text = emit_figure_data(run_sweep(grid_request(doc, o)), o.figure);
    } else if (optimize->parsed()) {
      const auto best = min_cost_feasible(grid_request(doc, o));
      if (o.format == TableFormat::kJson) {
        text = json{{"best", best ? to_json(*best) : json(nullptr)}}.dump(2) + "\n";
      } else if (best) {
        text = emit_table(std::span<const SweepRow>(&*best, 1), o.format);
      } else {
        text = "no feasible configuration\n";
      }
    } else if (diff->parsed()) {
      text = emit_diff(reference_diff(), o.format);
    } else if (check->parsed()) {
      const auto thresholds = o.thresholds.apply_to(doc.registry.thresholds());
      std::vector<SweepRow> rows;
      for (auto spec : doc.resolved_scenarios()) {
        if (o.rounding) spec.rounding = *o.rounding;
        rows.push_back(evaluate_row(spec, thresholds));
      }
      std::size_t infeasible = 0;
      for (const auto& row : rows) {
        if (row.verdict.classification == Classification::kInfeasible) {
          ++infeasible;
          for (const auto& v : row.verdict.violated) {
            if (v.constraint == Constraint::kPracticalPowerThreshold) continue;
            err << fmt::format("infeasible: {} violates {} ({} > {})\n", row.spec.id,
                               to_string(v.constraint), v.measured, v.threshold);
          }
        } else if (row.verdict.classification == Classification::kFeasiblePermittingRequired) {
          err << fmt::format("warning: {} needs permitting: peak load {:.2f} MW > {} MW\n",
                             row.spec.id, row.result.peak_load_mw,
                             thresholds.practical_power_threshold_mw);
        }
      }
      text = emit_table(rows, o.format);
      if (infeasible > 0) status = kFeasibilityFailed;
    } else if (sens->parsed()) {
      ScenarioSpec spec = select_scenario(doc, o, RoundingMode::kFractional);
      if (!o.rounding) spec.rounding = RoundingMode::kFractional;
      std::vector<SensitivityParameter> params;
      if (o.parameters.empty()) {
        auto all = all_sensitivity_parameters();
        params.assign(all.begin(), all.end());
      }
      for (const auto& name : o.parameters) {
        auto p = parse_sensitivity_parameter(name);
        if (!p) throw DomainError("parameter", fmt::format("unknown parameter '{}'", name));
        params.push_back(*p);
      }
      std::vector<SensitivityReport> reports;
      for (auto p : params) reports.push_back(sensitivity(spec, p, o.perturbation));
      text = emit_sensitivity(reports, o.format);
    } else if (config->parsed()) {
      text = emit_config(doc);
    } else if (serve->parsed()) {
      ApiService service(doc.registry, o.max_cells);
      HttpServer server(service, o.server);
      const int port = server.bind();
      err << fmt::format("serving on http://{}:{}\n", o.server.bind_address, port) << std::flush;
      server.listen();
      return kOk;
    }

    out << text;
    return status;
  } catch (const ValidationError& e) {
    return report_issues(e, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

}  // namespace sovtrain::cli
