#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sovtrain::cli {

inline constexpr std::string_view kVersion = "0.1.0";

/// Environment variable naming the config file used when --config is absent.
inline constexpr const char* kConfigEnvVar = "SOVTRAIN_CONFIG";

/// Process exit codes. Stable across versions.
enum ExitStatus : int {
  kOk = 0,
  kError = 1,              // bad flags, unreadable/invalid config, domain error
  kFeasibilityFailed = 2,  // `check` only: some scenario is INFEASIBLE
};

/// Runs the command line. `args` excludes the program name. Data goes to
/// `out` only after the command has fully succeeded; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sovtrain::cli
