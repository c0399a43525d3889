#pragma once

// Real-valued special functions used throughout the library: gamma, lower
// incomplete gamma, Pochhammer symbols, generalized hypergeometric series and
// the modified Struve function of the first kind L_nu.

#include <vector>

namespace struve {

/// Stopping and accuracy configuration for the power series in this module.
struct SeriesOptions {
  /// Stop once |term_k| <= term_ratio * |partial sum| for two consecutive k.
  double term_ratio = 1e-16;
  /// Accuracy promised by `SeriesEval::converged`.
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_terms = 600;

  /// Defaults, with `max_terms` taken from STRUVE_MAX_TERMS when that
  /// variable holds a positive integer. Read once per process.
  static SeriesOptions defaults();
};

struct SeriesEval {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int terms_used = 0;
  bool converged = false;
};

/// Gamma function for x > 0. Lanczos approximation (g = 7, 9 terms), with
/// the upward recurrence below 1/2.
double gamma_fn(double x);

/// log Gamma(x) for x > 0; no overflow for large x.
double log_gamma(double x);

/// Lower incomplete gamma  int_0^z t^(s-1) e^(-t) dt  for s > 0, z >= 0.
/// Series for z < s + 1, Lentz continued fraction for the complement otherwise.
double lower_incomplete_gamma(double s, double z);

/// log of `lower_incomplete_gamma(s, z)`; -inf at z = 0.
double log_lower_incomplete_gamma(double s, double z);

/// Rising factorial (a)_k = a (a+1) ... (a+k-1), (a)_0 = 1.
double pochhammer(double a, int k);

struct HypergeometricParams {
  std::vector<double> numerator;    // a_1 .. a_p
  std::vector<double> denominator;  // b_1 .. b_q
};

/// Generalized hypergeometric series pFq(a; b; z). Requires p <= q + 1, with
/// |z| < 1 when p = q + 1, and no denominator parameter in {0, -1, -2, ...}.
/// Throws ConvergenceError when the term cap is reached.
SeriesEval pfq(const HypergeometricParams& params, double z,
               const SeriesOptions& opts = SeriesOptions::defaults());

/// Largest x accepted by `struve_l`.
inline constexpr double kStruveOverflowX = 700.0;

/// Modified Struve function L_nu(x), nu > -3/2, 0 <= x <= 700.
SeriesEval struve_l(double nu, double x, const SeriesOptions& opts = SeriesOptions::defaults());

/// e^{-x} L_nu(x), nu > -3/2, x >= 0. Safe for x far beyond the overflow
/// threshold of `struve_l`.
SeriesEval struve_l_scaled(double nu, double x,
                           const SeriesOptions& opts = SeriesOptions::defaults());

/// log L_nu(x) for x > 0, any x.
double log_struve_l(double nu, double x, const SeriesOptions& opts = SeriesOptions::defaults());

namespace detail {

/// A positive quantity represented as exp(log_scale) * sum.
struct ScaledSum {
  double log_scale = 0.0;
  double sum = 0.0;
  double abs_error = 0.0;  // in the units of `sum`
  int terms = 0;
  bool stopped = false;  // stopping rule fired before the cap

  double log_value() const;
  double value() const;
};

/// Sums t_0 + t_1 + ... of a positive series given log t_0 and the ratio
/// t_{k+1}/t_k. Terms are carried relative to a moving scale so that neither
/// intermediate overflow nor underflow occurs.
template <class Ratio>
ScaledSum sum_positive_series(double log_t0, Ratio&& ratio, const SeriesOptions& opts);

/// Series route for e^{-x} L_nu(x), summed in log-offset form.
ScaledSum struve_scaled_series(double nu, double x, const SeriesOptions& opts);

/// Large-x route: e^{-x} L_nu(x) ~ e^{-x} I_nu(x) via Hankel's expansion.
/// `converged` is false when the expansion cannot reach machine precision.
SeriesEval struve_scaled_asymptotic(double nu, double x, const SeriesOptions& opts);

}  // namespace detail

}  // namespace struve

#include "struve/detail/series_impl.hpp"
