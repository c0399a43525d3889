#pragma once

// The damped Struve integral  int_0^x e^{-gamma t} t^{-nu} L_{nu+n}(t) dt,
// evaluated by independent routes: a 2F3 closed form (gamma = 0, n = 0),
// termwise power integration (gamma = 0), adaptive quadrature and a termwise
// incomplete-gamma series (gamma > 0).

#include "struve/quadrature.hpp"
#include "struve/specfun.hpp"

namespace struve {

struct IntegralSpec {
  double gamma = 0.0;
  double nu = 0.0;
  double n = 0.0;
  double x = 1.0;
};

/// Throws DomainError unless 0 <= gamma < 1, n > -1, nu + n > -3/2 and x > 0.
void validate(const IntegralSpec& spec);

/// e^{-gamma t} t^{-nu} L_{nu+n}(t); 0 at t = 0.
double integrand(const IntegralSpec& spec, double t);

/// int_0^x L_nu(t) / t^nu dt through the 2F3 representation.
double integral_closed_form(double nu, double x);

/// int_0^x L_{nu+n}(t) / t^nu dt summed termwise:
///   sum_k (1/2)^{nu+n+2k+1} x^{n+2k+2} / ((n+2k+2) Gamma(k+3/2) Gamma(k+nu+n+3/2)).
SeriesEval integral_power_series(double nu, double n, double x);

/// log of `integral_power_series`, valid where the value itself overflows.
double log_integral_power_series(double nu, double n, double x);

/// Undamped integral int_0^x L_{nu+n}(t)/t^nu dt: the closed form when n = 0,
/// the power series otherwise.
double integral_undamped(double nu, double n, double x);

QuadratureResult integral_quadrature(const IntegralSpec& spec, const QuadratureOptions& opts = {});

struct LogQuadratureResult {
  double log_value = 0.0;
  double rel_error_estimate = 0.0;
  int subdivisions = 0;
};

/// Quadrature of the integrand in log-offset form; usable far beyond the
/// range where the integral is representable.
LogQuadratureResult log_integral_quadrature(const IntegralSpec& spec,
                                            const QuadratureOptions& opts = {});

/// Termwise integration of the L series against e^{-gamma t}, using
///   int_0^x e^{-gamma t} t^{m-1} dt = gamma^{-m} lower_gamma(m, gamma x).
/// Requires gamma > 0.
SeriesEval integral_series_oracle(const IntegralSpec& spec);

/// Leading large-x behaviour (1/(sqrt(2 pi)(1-gamma))) x^{-nu-1/2} e^{(1-gamma)x}, in log form.
double log_asymptotic_integral(const IntegralSpec& spec);
double asymptotic_integral(const IntegralSpec& spec);

/// log of the companion asymptote (1/sqrt(2 pi)) x^{-nu-1/2} e^{(1-gamma)x}
/// for e^{-gamma x} L_{nu+n}(x) / x^nu.
double log_asymptotic_endpoint(const IntegralSpec& spec);

}  // namespace struve
