#pragma once

// JSON encoding of domain types, and strict decoding that collects every
// problem (with a JSON-pointer location) instead of stopping at the first.

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "sovtrain/feasibility.hpp"
#include "sovtrain/model.hpp"
#include "sovtrain/reference_diff.hpp"
#include "sovtrain/registry.hpp"
#include "sovtrain/scenarios.hpp"
#include "sovtrain/sensitivity.hpp"

namespace sovtrain {

using json = nlohmann::ordered_json;

enum class IssueKind {
  kSyntax,
  kSchema,              // wrong type, missing or unknown key
  kUnresolvedReference,
  kDuplicateId,
  kInvariant,           // value violates a domain invariant
};

std::string_view to_string(IssueKind kind);

struct Issue {
  IssueKind kind;
  std::string location;  // JSON pointer, or "line L, column C" for syntax errors
  std::string message;

  std::string describe() const;
  bool operator==(const Issue&) const = default;
};

/// Thrown when a document or request body fails validation.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Issue> issues);
  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  std::vector<Issue> issues_;
};

/// Parses text, converting nlohmann parse errors into a kSyntax issue with
/// line and column. Never throws anything but ValidationError.
json parse_json_text(std::string_view text);

// ---- encoding -------------------------------------------------------------

json to_json(const HardwareProfile& hw);
json to_json(const CountryProfile& c);
json to_json(const TrainingAssumptions& a);
json to_json(const AssumptionOverrides& o);
json to_json(const FeasibilityThresholds& t);
json to_json(const ScenarioResult& r);
json to_json(const FeasibilityVerdict& v);
/// Fully resolved inputs: profiles by value, assumptions, rounding.
json to_json(const ScenarioSpec& spec);
/// Row used by both the CLI json table and the sweep endpoint.
json to_json(const SweepRow& row);
json to_json(const ReferenceDiff& diff);
json to_json(const SensitivityReport& report);

// ---- strict decoding -------------------------------------------------------

/// Collects issues while walking a JSON value. Each read_* returns nullopt
/// (or a partially filled value) after recording issues; callers check
/// `ok()` at the end.
class JsonReader {
 public:
  std::vector<Issue>& issues() { return issues_; }
  bool ok() const { return issues_.empty(); }
  void add(IssueKind kind, std::string location, std::string message);
  /// Throws ValidationError if any issue was recorded.
  void throw_if_failed() const;

  /// Reports every key of `obj` not in `allowed`. Returns false if obj is not an object.
  bool expect_object(const json& obj, const std::string& path,
                     std::initializer_list<std::string_view> allowed);

  std::optional<double> number(const json& obj, const std::string& path, std::string_view key,
                               bool required);
  std::optional<std::string> string(const json& obj, const std::string& path,
                                    std::string_view key, bool required);

  std::optional<HardwareProfile> hardware(const json& v, const std::string& path);
  std::optional<CountryProfile> country(const json& v, const std::string& path);
  /// Partial object; missing keys keep `base`.
  TrainingAssumptions assumptions(const json& v, const std::string& path,
                                  const TrainingAssumptions& base);
  AssumptionOverrides overrides(const json& v, const std::string& path);
  FeasibilityThresholds thresholds(const json& v, const std::string& path,
                                   const FeasibilityThresholds& base);
  std::optional<RoundingMode> rounding(const json& v, const std::string& path);

  /// Runs `check` and converts a DomainError into a kInvariant issue at
  /// `path` + "/" + field.
  template <typename Fn>
  void invariant(const std::string& path, Fn&& check);

 private:
  std::vector<Issue> issues_;
};

std::string child_path(const std::string& parent, std::string_view key);
std::string child_path(const std::string& parent, std::size_t index);

}  // namespace sovtrain

#include "sovtrain/errors.hpp"

namespace sovtrain {

template <typename Fn>
void JsonReader::invariant(const std::string& path, Fn&& check) {
  try {
    check();
  } catch (const DomainError& e) {
    add(IssueKind::kInvariant, child_path(path, e.field()), e.what());
  }
}

}  // namespace sovtrain
