#pragma once

// Grid-driven certification of the bounds: each check sweeps a parameter set,
// records the worst signed margin (negative means violated) and the point
// that produced it, and lists the points it could not evaluate.

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "struve/bounds.hpp"

namespace struve {

struct GridConfig {
  std::vector<double> nu_values = {-0.4, 0.0, 1.0, 3.0};
  std::vector<double> n_values = {0.0, 0.5, 2.0};
  std::vector<double> gamma_values = {0.0, 0.25, 0.5, 0.9};
  std::vector<double> x_values = {0.5, 1.0, 5.0, 20.0};
  /// Orders probed at nu = -(n+1)/2 by the equality check.
  std::vector<double> boundary_n_values = {0.0, 1.0, 2.5};
  std::vector<double> boundary_x_values = {0.5, 2.0, 10.0};
  /// Subset of check names to run; empty runs all.
  std::vector<std::string> checks;
  std::map<std::string, double> tolerances = default_tolerances();

  static std::map<std::string, double> default_tolerances();

  /// Reads a JSON object; absent keys keep their defaults. Unknown keys and
  /// malformed values throw DomainError.
  static GridConfig from_json(std::string_view text);
};

/// Names of all checks, in execution order.
const std::vector<std::string>& check_names();

struct SkippedPoint {
  std::string params;
  std::string reason;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  int evaluated = 0;
  int failures = 0;
  double worst_margin = 0.0;
  std::string witness;
  std::vector<SkippedPoint> skipped;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::map<std::string, double> tolerances;
  int domain_errors = 0;

  bool passed() const;
  int failures() const;
};

/// Substitutions for mutation testing of the verifier itself.
struct VerifyHooks {
  std::function<BoundCoefficients(double nu, double n)> coefficients;
};

VerificationReport run_verification(const GridConfig& config, const VerifyHooks& hooks = {});

std::string to_json(const VerificationReport& report);
std::string to_csv(const VerificationReport& report);

}  // namespace struve
