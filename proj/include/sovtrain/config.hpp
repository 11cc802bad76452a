#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sovtrain/json_codec.hpp"
#include "sovtrain/registry.hpp"

namespace sovtrain {

inline constexpr int kConfigSchemaVersion = 1;

/// A validated configuration file: profiles, defaults, thresholds and
/// scenarios that reference profiles by id.
struct ConfigDocument {
  ProfileRegistry registry;
  std::vector<ScenarioRef> scenarios;

  /// Scenario refs resolved against the registry, in file order.
  std::vector<ScenarioSpec> resolved_scenarios() const;

  /// Registry and scenarios matching builtin_scenarios().
  static ConfigDocument builtin();

  bool operator==(const ConfigDocument&) const = default;
};

/// Parses and validates a JSON configuration document. Throws
/// ValidationError listing every problem found; never throws anything else.
ConfigDocument parse_config(std::string_view text);

/// Canonical JSON rendering; parse_config(emit_config(d)) == d.
std::string emit_config(const ConfigDocument& doc);

/// Reads and parses a file. Unreadable files become a single kSyntax issue.
ConfigDocument load_config_file(const std::filesystem::path& path);

}  // namespace sovtrain
