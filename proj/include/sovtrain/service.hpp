#pragma once

// HTTP/JSON facade over the engine.
//
//   GET  /api/profiles    registered hardware, countries, defaults, thresholds
//   POST /api/evaluate    one scenario, profiles inline or by id
//   POST /api/sweep       Cartesian grid, rows as in the CLI json table
//   GET  /api/paper-diff  published reference values vs. this model
//
// Handlers are pure functions of the request body and the immutable
// registry, so the server is safe under any request concurrency.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "sovtrain/json_codec.hpp"
#include "sovtrain/registry.hpp"
#include "sovtrain/scenarios.hpp"

namespace sovtrain {

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
};

class ApiService {
 public:
  explicit ApiService(ProfileRegistry registry, std::size_t max_sweep_cells = kDefaultMaxSweepCells);

  /// Routes a request. Unknown paths give 404, wrong methods 405.
  ApiResponse handle(std::string_view method, std::string_view path, std::string_view body) const;

  json profiles() const;
  /// Throw ValidationError / SweepTooLarge on bad input.
  json evaluate(const json& request) const;
  json sweep(const json& request) const;
  json paper_diff() const;

  /// Request decoding, exposed for reuse and testing.
  SweepRow decode_and_evaluate(const json& request, FeasibilityThresholds* thresholds_out) const;
  SweepRequest decode_sweep(const json& request) const;

  const ProfileRegistry& registry() const { return registry_; }

 private:
  ProfileRegistry registry_;
  std::size_t max_sweep_cells_;
};

struct ServerOptions {
  std::string bind_address = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  // Sent as Access-Control-Allow-Origin; empty disables CORS headers.
  std::string cors_origin = "*";
};

class HttpServer {
 public:
  HttpServer(const ApiService& service, ServerOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the socket; returns the bound port. Throws std::runtime_error on failure.
  int bind();
  /// Serves until stop() is called. Requires bind().
  void listen();
  /// Blocks until listen() is accepting connections.
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sovtrain
