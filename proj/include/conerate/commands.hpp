#pragma once

// The four CLI commands as library calls. Each returns the full report; the
// "results" member depends only on the input bytes and the options, while
// timing lives outside it in "wall_time_seconds".

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace conerate {

struct CommandOptions {
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int restarts = 32;
  /// certify: exit code 3 when the verdict is INCONCLUSIVE.
  bool require_decision = false;
  /// certify: add the fixed-grid rank-one search (n ≤ 3).
  bool exhaustive = false;
  /// simulate: initial state file (vector or hermitian); barycenter if absent.
  std::optional<std::string> x0_path;
  int steps = 50;
};

struct CommandResult {
  nlohmann::json report;
  int exit_code = 0;
  /// simulate only: "step,oscillation,dual_distance" rows.
  std::optional<std::string> csv;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInconclusive = 3;

CommandResult cmd_analyze_stochastic(const std::string& path, const CommandOptions& options);
CommandResult cmd_analyze_kraus(const std::string& path, const CommandOptions& options);
CommandResult cmd_certify(const std::string& path, const CommandOptions& options);
CommandResult cmd_simulate(const std::string& path, const CommandOptions& options);

/// Serialized form used for reports written to disk or stdout.
std::string dump_report(const nlohmann::json& report);

}  // namespace conerate
