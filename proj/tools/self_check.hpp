#pragma once

// Invariant suites behind the `check` subcommand.

#include <map>
#include <string>
#include <vector>

namespace mirrorflux::cli {

struct CheckResult {
  std::string name;
  double residual;
  double tolerance;
  bool passed;
};

struct CheckOptions {
  /// Per-check tolerance overrides, keyed by check name.
  std::map<std::string, double> tolerances;
  /// Test hook: relative perturbation applied to the reference constant
  /// 1/(48 pi) used by the oracles.
  double perturbation = 0.0;
};

/// Names of all checks with their default tolerances, in run order.
const std::vector<std::pair<std::string, double>>& check_catalog();

std::vector<CheckResult> run_checks(const CheckOptions& options);

}  // namespace mirrorflux::cli
