#include "sovtrain/config.hpp"

#include <fmt/format.h>

#include <fstream>
#include <set>
#include <sstream>

#include "sovtrain/scenarios.hpp"

namespace sovtrain {

std::vector<ScenarioSpec> ConfigDocument::resolved_scenarios() const {
  std::vector<ScenarioSpec> specs;
  specs.reserve(scenarios.size());
  for (const auto& ref : scenarios) specs.push_back(registry.resolve(ref));
  return specs;
}

ConfigDocument ConfigDocument::builtin() {
  return ConfigDocument{ProfileRegistry::builtin(), builtin_scenario_refs()};
}

namespace {

template <typename T>
std::vector<T> read_profiles(JsonReader& reader, const json& root, std::string_view key,
                             std::optional<T> (JsonReader::*read_one)(const json&, const std::string&),
                             std::set<std::string, std::less<>>& declared_ids) {
  std::vector<T> out;
  const std::string path = child_path("", key);
  auto it = root.find(std::string(key));
  if (it == root.end()) {
    reader.add(IssueKind::kSchema, path, "missing required array");
    return out;
  }
  if (!it->is_array()) {
    reader.add(IssueKind::kSchema, path, fmt::format("expected an array, got {}", it->type_name()));
    return out;
  }
  std::set<std::string, std::less<>> seen;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const std::string item_path = child_path(path, i);
    // Invalid profiles still declare their id, so references to them do not cascade.
    if (const auto& item = (*it)[i]; item.is_object()) {
      if (auto id = item.find("id"); id != item.end() && id->is_string()) {
        declared_ids.insert(id->get<std::string>());
      }
    }
    auto profile = (reader.*read_one)((*it)[i], item_path);
    if (!profile) continue;
    if (!seen.insert(profile->id).second) {
      reader.add(IssueKind::kDuplicateId, child_path(item_path, "id"),
                 fmt::format("duplicate id '{}'", profile->id));
      continue;
    }
    out.push_back(std::move(*profile));
  }
  return out;
}

}  // namespace

ConfigDocument parse_config(std::string_view text) {
  const json root = parse_json_text(text);
  JsonReader reader;
  if (!reader.expect_object(root, "",
                            {"version", "hardware", "countries", "defaults", "thresholds",
                             "scenarios"})) {
    reader.throw_if_failed();
  }

  if (root.contains("version")) {
    const auto& v = root["version"];
    if (!v.is_number_integer() || v.get<long long>() != kConfigSchemaVersion) {
      reader.add(IssueKind::kSchema, "/version",
                 fmt::format("unsupported version (expected {})", kConfigSchemaVersion));
    }
  }

  std::set<std::string, std::less<>> hardware_ids;
  std::set<std::string, std::less<>> country_ids;
  auto hardware =
      read_profiles<HardwareProfile>(reader, root, "hardware", &JsonReader::hardware, hardware_ids);
  auto countries =
      read_profiles<CountryProfile>(reader, root, "countries", &JsonReader::country, country_ids);

  TrainingAssumptions defaults;
  if (auto it = root.find("defaults"); it != root.end()) {
    defaults = reader.assumptions(*it, "/defaults", defaults);
  }
  FeasibilityThresholds thresholds;
  if (auto it = root.find("thresholds"); it != root.end()) {
    thresholds = reader.thresholds(*it, "/thresholds", thresholds);
  }

  std::vector<ScenarioRef> scenarios;
  if (auto it = root.find("scenarios"); it != root.end()) {
    if (!it->is_array()) {
      reader.add(IssueKind::kSchema, "/scenarios",
                 fmt::format("expected an array, got {}", it->type_name()));
    } else {
      std::set<std::string, std::less<>> seen;
      for (std::size_t i = 0; i < it->size(); ++i) {
        const json& item = (*it)[i];
        const std::string path = child_path("/scenarios", i);
        const std::size_t before = reader.issues().size();
        if (!reader.expect_object(item, path,
                                  {"id", "hardware", "country", "rounding", "assumptions"})) {
          continue;
        }
        ScenarioRef ref;
        ref.id = reader.string(item, path, "id", true).value_or("");
        ref.hardware_id = reader.string(item, path, "hardware", true).value_or("");
        ref.country_id = reader.string(item, path, "country", true).value_or("");
        if (auto r = item.find("rounding"); r != item.end()) {
          ref.rounding = reader.rounding(*r, child_path(path, "rounding"))
                             .value_or(RoundingMode::kCeilUnits);
        }
        if (auto a = item.find("assumptions"); a != item.end()) {
          ref.overrides = reader.overrides(*a, child_path(path, "assumptions"));
        }
        if (reader.issues().size() != before) continue;

        if (ref.id.empty()) {
          reader.add(IssueKind::kInvariant, child_path(path, "id"), "scenario id must not be empty");
        } else if (!seen.insert(ref.id).second) {
          reader.add(IssueKind::kDuplicateId, child_path(path, "id"),
                     fmt::format("duplicate scenario id '{}'", ref.id));
        }
        if (!hardware_ids.contains(ref.hardware_id)) {
          reader.add(IssueKind::kUnresolvedReference, child_path(path, "hardware"),
                     fmt::format("no hardware profile with id '{}'", ref.hardware_id));
        }
        if (!country_ids.contains(ref.country_id)) {
          reader.add(IssueKind::kUnresolvedReference, child_path(path, "country"),
                     fmt::format("no country profile with id '{}'", ref.country_id));
        }
        reader.invariant(child_path(path, "assumptions"),
                         [&] { ref.overrides.apply_to(defaults).validate(); });
        scenarios.push_back(std::move(ref));
      }
    }
  }

  reader.throw_if_failed();
  return ConfigDocument{ProfileRegistry(std::move(hardware), std::move(countries), defaults, thresholds),
                        std::move(scenarios)};
}

std::string emit_config(const ConfigDocument& doc) {
  json root;
  root["version"] = kConfigSchemaVersion;
  root["hardware"] = json::array();
  for (const auto& hw : doc.registry.hardware()) root["hardware"].push_back(to_json(hw));
  root["countries"] = json::array();
  for (const auto& c : doc.registry.countries()) root["countries"].push_back(to_json(c));
  root["defaults"] = to_json(doc.registry.defaults());
  root["thresholds"] = to_json(doc.registry.thresholds());
  root["scenarios"] = json::array();
  for (const auto& ref : doc.scenarios) {
    json s{{"id", ref.id},
           {"hardware", ref.hardware_id},
           {"country", ref.country_id},
           {"rounding", to_string(ref.rounding)}};
    if (!ref.overrides.empty()) s["assumptions"] = to_json(ref.overrides);
    root["scenarios"].push_back(std::move(s));
  }
  return root.dump(2) + "\n";
}

ConfigDocument load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError({{IssueKind::kSyntax, path.string(), "cannot open config file"}});
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace sovtrain
