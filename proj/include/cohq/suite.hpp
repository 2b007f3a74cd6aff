#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cohq/json_io.hpp"

namespace cohq {

inline constexpr const char* kVersion = "cohq 1.0.0";

/// One named verification with its parameters (raw JSON, interpreted by
/// the check implementation).
struct CheckSpec {
  std::string name;
  std::string check;
  Json params;
  double tol = 0.0;  // 0 means the check's default
};

/// Parsed suite: every run with the same seed is reproducible, so the
/// seed is always present (default 0).
struct SuiteConfig {
  std::string suite = "suite";
  std::uint64_t seed = 0;
  std::vector<CheckSpec> checks;
};

struct CheckRecord {
  std::string name;
  std::string check;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  double wall_time = 0.0;  // seconds
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  std::vector<CheckRecord> checks;
  int n_passed = 0;
  int n_failed = 0;

  bool all_passed() const { return n_failed == 0; }
};

/// Parses a config document; throws ConfigError with field diagnostics.
SuiteConfig parse_suite_config(const Json& j);

/// Runs every configured check in order. Each check derives its own seed
/// from the suite seed and its position, so results do not depend on which
/// other checks run. Deterministic given the seed.
Report run_suite(const SuiteConfig& config);

/// Report as JSON; wall_time fields are included only when requested, so
/// reports are byte-identical across runs by default.
Json report_to_json(const Report& report, bool include_timing = false);

/// Names of all known check types (for diagnostics).
std::vector<std::string> known_checks();

/// Bundled suite configs: "moebius-gamma", "regression", "failing-adjoint".
Json builtin_suite(const std::string& name);

}  // namespace cohq
