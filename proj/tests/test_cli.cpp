#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sovtrain/cli.hpp"
#include "sovtrain/config.hpp"
#include "sovtrain/json_codec.hpp"

using namespace sovtrain;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("evaluate prints the worked energy figure", "[cli]") {
  const auto r = run_cli({"evaluate", "--scenario", "h100-90d-br", "--rounding", "fractional"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("893 MWh") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("evaluate with zero days is a domain error", "[cli][errors]") {
  const auto r = run_cli({"evaluate", "--hardware", "h100", "--country", "mx", "--days", "0"});
  CHECK(r.code == cli::kError);
  CHECK(r.out.empty());
  CHECK(r.err.find("duration_days") != std::string::npos);
}

TEST_CASE("inline flags reproduce a builtin scenario", "[cli]") {
  for (const char* fmt : {"plain", "json", "csv", "markdown"}) {
    const auto named = run_cli({"evaluate", "--scenario", "a100-150d-mx", "--format", fmt});
    const auto inline_ = run_cli({"evaluate", "--hardware", "a100", "--country", "mx", "--days", "150",
                                  "--flops", "3e24", "--mfu", "0.552", "--pue", "1.3", "--overhead", "1.3",
                                  "--rounding", "ceil_units", "--format", fmt});
    CHECK(named.code == 0);
    CHECK(named.out == inline_.out);
  }
}

TEST_CASE("evaluate defaults reproduce the reference constants with no config", "[cli]") {
  const auto r = run_cli({"evaluate", "--hardware", "h100", "--country", "br", "--days", "90", "--rounding",
                          "fractional", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["result"]["energy_mwh"].get<double>() == Catch::Approx(892.965).margin(1e-3));
}

TEST_CASE("sweep on defaults prints eight rows", "[cli]") {
  const auto r = run_cli({"sweep"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 10);  // header, rule, 8 rows
  const auto csv = run_cli({"sweep", "--format", "csv", "--days", "90", "--hardware", "h100"});
  CHECK(count_lines(csv.out) == 3);
}

TEST_CASE("check exit codes follow the contract", "[cli]") {
  const auto ok = run_cli({"check"});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.err.find("a100-90d") != std::string::npos);  // practical-threshold warning

  const auto fail = run_cli({"check", "--fiscal-cap", "1"});
  CHECK(fail.code == cli::kFeasibilityFailed);
  CHECK(fail.err.find("fiscal_cap") != std::string::npos);

  const auto bad = run_cli({"check", "--fiscal-cap", "-5"});
  CHECK(bad.code == cli::kError);
  CHECK(bad.out.empty());
}

TEST_CASE("diff flags published capex cells", "[cli]") {
  const auto r = run_cli({"diff", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  bool saw_capex = false;
  for (const auto& e : j["entries"]) {
    if (e["category"] == "published_table" && e["quantity"] == "capex_usd") {
      saw_capex = true;
      CHECK(e["reconcilable"] == false);
    }
  }
  CHECK(saw_capex);
}

TEST_CASE("figures and optimize", "[cli]") {
  const auto f = run_cli({"figures", "--figure", "gpus"});
  CHECK(f.code == 0);
  CHECK(f.out.find("a100,90,2241") != std::string::npos);
  const auto o = run_cli({"optimize", "--country", "mx"});
  CHECK(o.code == 0);
  CHECK(o.out.find("h100-150d-mx") != std::string::npos);
  const auto none = run_cli({"optimize", "--fiscal-cap", "1"});
  CHECK(none.code == cli::kOk);
  CHECK(none.out == "no feasible configuration\n");
}

TEST_CASE("sensitivity subcommand", "[cli]") {
  const auto r = run_cli({"sensitivity", "--scenario", "h100-90d-br", "--parameter", "total_flops",
                          "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.dump().find("total_flops") != std::string::npos);
  CHECK(run_cli({"sensitivity", "--scenario", "h100-90d-br", "--parameter", "voltage"}).code == cli::kError);
}

TEST_CASE("bad flags and unknown ids exit 1 without stdout", "[cli][errors]") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"evaluate", "--scenario", "nope"},
           {"evaluate", "--hardware", "b200", "--country", "br"},
           {"sweep", "--format", "xml"},
           {"sweep", "--max-cells", "3"},
           {"figures"},
           {"frobnicate"},
           {"--config", "/nonexistent.json", "sweep"},
       }) {
    const auto r = run_cli(args);
    INFO(args[0] << " " << (args.size() > 1 ? args[1] : ""));
    CHECK(r.code == cli::kError);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("config file selection by flag and environment", "[cli]") {
  auto j = json::parse(emit_config(ConfigDocument::builtin()));
  j["thresholds"]["fiscal_cap_usd"] = 1;
  const auto path = write_temp("sovtrain_cli_tight.json", j.dump());
  CHECK(run_cli({"--config", path.string(), "check"}).code == cli::kFeasibilityFailed);

  ::setenv(cli::kConfigEnvVar, path.string().c_str(), 1);
  CHECK(run_cli({"check"}).code == cli::kFeasibilityFailed);
  ::unsetenv(cli::kConfigEnvVar);
  CHECK(run_cli({"check"}).code == cli::kOk);

  const auto broken = write_temp("sovtrain_cli_broken.json", "{ \"hardware\": [ }");
  const auto r = run_cli({"--config", broken.string(), "sweep"});
  CHECK(r.code == cli::kError);
  CHECK(r.err.find("line 1") != std::string::npos);
}

TEST_CASE("config subcommand emits the canonical document", "[cli]") {
  const auto r = run_cli({"config"});
  CHECK(r.code == 0);
  CHECK(r.out == emit_config(ConfigDocument::builtin()));
}

TEST_CASE("identical invocations give identical bytes", "[cli]") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"sweep", "--format", "json"}, {"diff"}, {"figures", "--figure", "energy"}}) {
    CHECK(run_cli(args).out == run_cli(args).out);
  }
}

TEST_CASE("version flag", "[cli]") {
  const auto r = run_cli({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out.find(std::string(cli::kVersion)) != std::string::npos);
}
