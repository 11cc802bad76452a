#include "sovtrain/service.hpp"

#include <fmt/format.h>
#include <httplib.h>

#include <stdexcept>

#include "sovtrain/reference_diff.hpp"
#include "sovtrain/report.hpp"

namespace sovtrain {
namespace {

json issues_json(const std::vector<Issue>& issues) {
  json arr = json::array();
  for (const auto& i : issues) {
    arr.push_back({{"kind", to_string(i.kind)}, {"location", i.location}, {"message", i.message}});
  }
  return arr;
}

ApiResponse reply(int status, const json& body) { return {status, body.dump()}; }

ApiResponse error_reply(int status, std::string_view code, std::string_view message) {
  return reply(status, json{{"error", code}, {"message", message}});
}

std::optional<HardwareProfile> hardware_value(JsonReader& reader, const ProfileRegistry& reg,
                                              const json& v, const std::string& path) {
  if (v.is_string()) {
    try {
      return reg.find_hardware(v.get<std::string>());
    } catch (const ReferenceError& e) {
      reader.add(IssueKind::kUnresolvedReference, path, e.what());
      return std::nullopt;
    }
  }
  return reader.hardware(v, path);
}

std::optional<CountryProfile> country_value(JsonReader& reader, const ProfileRegistry& reg,
                                            const json& v, const std::string& path) {
  if (v.is_string()) {
    try {
      return reg.find_country(v.get<std::string>());
    } catch (const ReferenceError& e) {
      reader.add(IssueKind::kUnresolvedReference, path, e.what());
      return std::nullopt;
    }
  }
  return reader.country(v, path);
}

}  // namespace

ApiService::ApiService(ProfileRegistry registry, std::size_t max_sweep_cells)
    : registry_(std::move(registry)), max_sweep_cells_(max_sweep_cells) {}

json ApiService::profiles() const {
  json hw = json::array();
  for (const auto& h : registry_.hardware()) hw.push_back(to_json(h));
  json countries = json::array();
  for (const auto& c : registry_.countries()) countries.push_back(to_json(c));
  return json{{"hardware", std::move(hw)},
              {"countries", std::move(countries)},
              {"defaults", to_json(registry_.defaults())},
              {"thresholds", to_json(registry_.thresholds())},
              {"default_rounding", to_string(RoundingMode::kCeilUnits)},
              {"max_sweep_cells", max_sweep_cells_}};
}

SweepRow ApiService::decode_and_evaluate(const json& request,
                                         FeasibilityThresholds* thresholds_out) const {
  JsonReader reader;
  if (!reader.expect_object(request, "",
                            {"id", "hardware", "country", "assumptions", "rounding", "thresholds"})) {
    reader.throw_if_failed();
  }
  std::optional<HardwareProfile> hw;
  std::optional<CountryProfile> country;
  if (auto it = request.find("hardware"); it != request.end()) {
    hw = hardware_value(reader, registry_, *it, "/hardware");
  } else {
    reader.add(IssueKind::kSchema, "/hardware", "missing hardware (id or profile object)");
  }
  if (auto it = request.find("country"); it != request.end()) {
    country = country_value(reader, registry_, *it, "/country");
  } else {
    reader.add(IssueKind::kSchema, "/country", "missing country (id or profile object)");
  }
  TrainingAssumptions assumptions = registry_.defaults();
  if (auto it = request.find("assumptions"); it != request.end()) {
    assumptions = reader.assumptions(*it, "/assumptions", assumptions);
  }
  RoundingMode rounding = RoundingMode::kCeilUnits;
  if (auto it = request.find("rounding"); it != request.end()) {
    rounding = reader.rounding(*it, "/rounding").value_or(rounding);
  }
  FeasibilityThresholds thresholds = registry_.thresholds();
  if (auto it = request.find("thresholds"); it != request.end()) {
    thresholds = reader.thresholds(*it, "/thresholds", thresholds);
  }
  auto id = reader.string(request, "", "id", false);
  reader.throw_if_failed();

  ScenarioSpec spec{id.value_or(scenario_id(hw->id, assumptions.duration_days, country->id)), *hw,
                    *country, assumptions, rounding};
  if (thresholds_out != nullptr) *thresholds_out = thresholds;
  return evaluate_row(spec, thresholds);
}

json ApiService::evaluate(const json& request) const {
  FeasibilityThresholds thresholds;
  const SweepRow row = decode_and_evaluate(request, &thresholds);
  return evaluation_json(row, thresholds);
}

SweepRequest ApiService::decode_sweep(const json& request) const {
  JsonReader reader;
  if (!reader.expect_object(request, "",
                            {"hardware", "countries", "durations_days", "assumptions", "rounding",
                             "thresholds"})) {
    reader.throw_if_failed();
  }
  SweepRequest req;
  req.max_cells = max_sweep_cells_;

  auto read_list = [&](std::string_view key, auto&& decode_one, auto& out, const auto& fallback) {
    const std::string path = child_path("", key);
    auto it = request.find(std::string(key));
    if (it == request.end()) {
      out = fallback;
      return;
    }
    if (!it->is_array()) {
      reader.add(IssueKind::kSchema, path, fmt::format("expected an array, got {}", it->type_name()));
      return;
    }
    if (it->empty()) {
      reader.add(IssueKind::kInvariant, path, "list must not be empty");
      return;
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (auto v = decode_one((*it)[i], child_path(path, i))) out.push_back(std::move(*v));
    }
  };

  read_list(
      "hardware",
      [&](const json& v, const std::string& p) { return hardware_value(reader, registry_, v, p); },
      req.hardware, registry_.hardware());
  read_list(
      "countries",
      [&](const json& v, const std::string& p) { return country_value(reader, registry_, v, p); },
      req.countries, registry_.countries());
  read_list(
      "durations_days",
      [&](const json& v, const std::string& p) -> std::optional<double> {
        if (!v.is_number()) {
          reader.add(IssueKind::kSchema, p, fmt::format("expected a number, got {}", v.type_name()));
          return std::nullopt;
        }
        const double d = v.get<double>();
        if (!(d > 0.0)) {
          reader.add(IssueKind::kInvariant, p, "duration_days: must be > 0");
          return std::nullopt;
        }
        return d;
      },
      req.durations_days, kReferenceDurationsDays);

  req.assumptions = registry_.defaults();
  if (auto it = request.find("assumptions"); it != request.end()) {
    req.assumptions = reader.assumptions(*it, "/assumptions", req.assumptions);
  }
  if (auto it = request.find("rounding"); it != request.end()) {
    req.rounding = reader.rounding(*it, "/rounding").value_or(req.rounding);
  }
  req.thresholds = registry_.thresholds();
  if (auto it = request.find("thresholds"); it != request.end()) {
    req.thresholds = reader.thresholds(*it, "/thresholds", req.thresholds);
  }
  reader.throw_if_failed();
  return req;
}

json ApiService::sweep(const json& request) const {
  const auto rows = run_sweep(decode_sweep(request));
  json out_rows = json::array();
  for (const auto& row : rows) out_rows.push_back(to_json(row));
  return json{{"count", rows.size()}, {"rows", std::move(out_rows)}};
}

json ApiService::paper_diff() const { return to_json(reference_diff()); }

ApiResponse ApiService::handle(std::string_view method, std::string_view path,
                               std::string_view body) const {
  struct Route {
    std::string_view path;
    std::string_view method;
  };
  static constexpr Route kRoutes[] = {{"/api/profiles", "GET"},
                                      {"/api/evaluate", "POST"},
                                      {"/api/sweep", "POST"},
                                      {"/api/paper-diff", "GET"}};
  const Route* route = nullptr;
  for (const auto& r : kRoutes) {
    if (r.path == path) route = &r;
  }
  if (route == nullptr) return error_reply(404, "not_found", fmt::format("no endpoint {}", path));
  if (route->method != method) {
    return error_reply(405, "method_not_allowed", fmt::format("{} requires {}", path, route->method));
  }

  try {
    if (path == "/api/profiles") return reply(200, profiles());
    if (path == "/api/paper-diff") return reply(200, paper_diff());
    const json request = parse_json_text(body);
    if (path == "/api/evaluate") return reply(200, evaluate(request));
    return reply(200, sweep(request));
  } catch (const ValidationError& e) {
    return reply(400, json{{"error", "validation"}, {"issues", issues_json(e.issues())}});
  } catch (const SweepTooLarge& e) {
    return reply(413, json{{"error", "sweep_too_large"},
                           {"message", e.what()},
                           {"cells", e.cells()},
                           {"cap", e.cap()}});
  } catch (const DomainError& e) {
    // Invariants are checked during decoding; anything left is still a bad request.
    return reply(400, json{{"error", "validation"},
                           {"issues", issues_json({{IssueKind::kInvariant, "/" + e.field(), e.what()}})}});
  } catch (const std::exception& e) {
    return error_reply(500, "internal", e.what());
  }
}

struct HttpServer::Impl {
  const ApiService& service;
  ServerOptions options;
  httplib::Server server;
  bool bound = false;

  Impl(const ApiService& s, ServerOptions o) : service(s), options(std::move(o)) {
    auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
      const ApiResponse r = service.handle(req.method, req.path, req.body);
      res.status = r.status;
      res.set_content(r.body, "application/json");
    };
    server.Get(R"(/api/.*)", dispatch);
    server.Post(R"(/api/.*)", dispatch);
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });
    if (!options.cors_origin.empty()) {
      server.set_post_routing_handler([this](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", options.cors_origin);
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
      });
    }
  }
};

HttpServer::HttpServer(const ApiService& service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  auto& o = impl_->options;
  int port = o.port;
  if (port == 0) {
    port = impl_->server.bind_to_any_port(o.bind_address);
  } else if (!impl_->server.bind_to_port(o.bind_address, port)) {
    port = -1;
  }
  if (port < 0) {
    throw std::runtime_error(fmt::format("cannot bind {}:{}", o.bind_address, o.port));
  }
  impl_->bound = true;
  return port;
}

void HttpServer::listen() {
  if (!impl_->bound) throw std::logic_error("HttpServer::listen before bind");
  impl_->server.listen_after_bind();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace sovtrain
