#pragma once

#include <functional>

namespace struve {

struct QuadratureOptions {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_subdivisions = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int subdivisions = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
/// The interval with the largest error estimate is bisected until the summed
/// estimate is within max(abs_tol, rel_tol * |value|). Nodes never touch the
/// endpoints. Throws ConvergenceError, carrying the best estimate, when the
/// subdivision budget runs out.
QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                const QuadratureOptions& opts = {});

}  // namespace struve
