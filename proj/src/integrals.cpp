#include "struve/integrals.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "struve/errors.hpp"

namespace struve {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMaxLog = 709.0;
// Above this upper limit quadrature runs on the log-offset integrand.
constexpr double kLogOffsetX = 30.0;

std::string describe(const IntegralSpec& s) {
  std::ostringstream os;
  os.precision(17);
  os << "(gamma=" << s.gamma << ", nu=" << s.nu << ", n=" << s.n << ", x=" << s.x << ")";
  return os.str();
}

void check_undamped(double nu, double n, double x) {
  if (!(n > -1.0)) throw DomainError("undamped integral: requires n > -1");
  if (!(nu + n > -1.5)) throw DomainError("undamped integral: requires nu + n > -3/2");
  if (!(x >= 0.0)) throw DomainError("undamped integral: requires x >= 0");
}

// Power-series terms of int_0^x L_{nu+n}(t) t^{-nu} dt, as a scaled sum times
// a linear prefactor (1 when the leading term had to go through logs).
struct PowerSeries {
  detail::ScaledSum sum;
  double prefactor = 1.0;
};

PowerSeries power_series(double nu, double n, double x) {
  const double mu = nu + n;
  const double q = 0.25 * x * x;
  auto ratio = [q, n, mu](int k) {
    return q * (n + 2.0 * k + 2.0) / ((n + 2.0 * k + 4.0) * (k + 1.5) * (k + mu + 1.5));
  };
  const SeriesOptions opts = SeriesOptions::defaults();
  PowerSeries out;
  double t0 = 0.0;
  if (mu + 1.5 < 170.0) {
    t0 = std::pow(0.5, mu + 1.0) * std::pow(x, n + 2.0) / ((n + 2.0) * gamma_fn(1.5) * gamma_fn(mu + 1.5));
  }
  if (std::isnormal(t0)) {
    out.sum = detail::sum_positive_series(0.0, ratio, opts);
    out.prefactor = t0;
  } else {
    const double log_t0 = (mu + 1.0) * std::log(0.5) + (n + 2.0) * std::log(x) - std::log(n + 2.0) -
                          log_gamma(1.5) - log_gamma(mu + 1.5);
    out.sum = detail::sum_positive_series(log_t0, ratio, opts);
  }
  if (!out.sum.stopped) {
    throw ConvergenceError("integral_power_series: term cap reached",
                           out.prefactor * out.sum.value(), out.prefactor * std::exp(out.sum.log_scale) * out.sum.abs_error);
  }
  return out;
}

// e^{-gamma t} t^{-nu} L_{nu+n}(t) e^{-offset}, with the exponential folded in log form.
double offset_integrand(const IntegralSpec& spec, double t, double offset) {
  if (t <= 0.0) return 0.0;
  const double ls = struve_l_scaled(spec.nu + spec.n, t).value;
  return std::exp((1.0 - spec.gamma) * t - offset - spec.nu * std::log(t)) * ls;
}

}  // namespace

void validate(const IntegralSpec& spec) {
  if (!(spec.gamma >= 0.0 && spec.gamma < 1.0))
    throw DomainError("integral " + describe(spec) + ": requires 0 <= gamma < 1");
  if (!(spec.n > -1.0)) throw DomainError("integral " + describe(spec) + ": requires n > -1");
  if (!(spec.nu + spec.n > -1.5))
    throw DomainError("integral " + describe(spec) + ": requires nu + n > -3/2");
  if (!(spec.x > 0.0)) throw DomainError("integral " + describe(spec) + ": requires x > 0");
}

double integrand(const IntegralSpec& spec, double t) {
  if (!(t >= 0.0)) throw DomainError("integrand: requires t >= 0");
  if (t == 0.0) return 0.0;
  if (t <= kStruveOverflowX) {
    return std::exp(-spec.gamma * t) * std::pow(t, -spec.nu) * struve_l(spec.nu + spec.n, t).value;
  }
  return offset_integrand(spec, t, 0.0);
}

double integral_closed_form(double nu, double x) {
  if (!(nu > -1.5)) throw DomainError("integral_closed_form: requires nu > -3/2");
  if (!(x >= 0.0)) throw DomainError("integral_closed_form: requires x >= 0");
  if (x == 0.0) return 0.0;
  const double prefactor =
      x * x / (std::sqrt(std::numbers::pi) * std::pow(2.0, nu + 1.0) * gamma_fn(nu + 1.5));
  const SeriesEval f = pfq({{1.0, 1.0}, {1.5, 2.0, nu + 1.5}}, 0.25 * x * x);
  return prefactor * f.value;
}

SeriesEval integral_power_series(double nu, double n, double x) {
  check_undamped(nu, n, x);
  SeriesEval out;
  if (x == 0.0) {
    out.converged = true;
    return out;
  }
  const PowerSeries ps = power_series(nu, n, x);
  const double scale = std::exp(ps.sum.log_scale);
  out.value = ps.prefactor * ps.sum.sum * scale;
  if (std::isinf(out.value)) throw OverflowError("integral_power_series: value overflows; use the log form");
  out.abs_error_estimate = ps.prefactor * ps.sum.abs_error * scale;
  out.terms_used = ps.sum.terms;
  out.converged = true;
  return out;
}

double log_integral_power_series(double nu, double n, double x) {
  check_undamped(nu, n, x);
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  const PowerSeries ps = power_series(nu, n, x);
  return std::log(ps.prefactor) + ps.sum.log_value();
}

double integral_undamped(double nu, double n, double x) {
  if (n == 0.0) return integral_closed_form(nu, x);
  return integral_power_series(nu, n, x).value;
}

LogQuadratureResult log_integral_quadrature(const IntegralSpec& spec, const QuadratureOptions& opts) {
  validate(spec);
  LogQuadratureResult out;
  if (spec.x <= kLogOffsetX) {
    const QuadratureResult r =
        integrate_gk15([&spec](double t) { return integrand(spec, t); }, 0.0, spec.x, opts);
    out.log_value = std::log(r.value);
    out.rel_error_estimate = r.abs_error_estimate / r.value;
    out.subdivisions = r.subdivisions;
    return out;
  }
  const double offset = (1.0 - spec.gamma) * spec.x;
  const QuadratureResult r = integrate_gk15(
      [&spec, offset](double t) { return offset_integrand(spec, t, offset); }, 0.0, spec.x, opts);
  out.log_value = offset + std::log(r.value);
  out.rel_error_estimate = r.abs_error_estimate / r.value + kEps * offset;
  out.subdivisions = r.subdivisions;
  return out;
}

QuadratureResult integral_quadrature(const IntegralSpec& spec, const QuadratureOptions& opts) {
  validate(spec);
  if (spec.x <= kLogOffsetX) {
    return integrate_gk15([&spec](double t) { return integrand(spec, t); }, 0.0, spec.x, opts);
  }
  const LogQuadratureResult lr = log_integral_quadrature(spec, opts);
  if (lr.log_value > kMaxLog)
    throw OverflowError("integral_quadrature " + describe(spec) + ": value overflows; use the log form");
  QuadratureResult out;
  out.value = std::exp(lr.log_value);
  out.abs_error_estimate = lr.rel_error_estimate * out.value;
  out.subdivisions = lr.subdivisions;
  return out;
}

SeriesEval integral_series_oracle(const IntegralSpec& spec) {
  validate(spec);
  if (!(spec.gamma > 0.0)) throw DomainError("integral_series_oracle: requires gamma > 0");
  const SeriesOptions opts = SeriesOptions::defaults();
  const double mu = spec.nu + spec.n;
  const double log_gamma_damp = std::log(spec.gamma);
  const double z = spec.gamma * spec.x;

  SeriesEval out;
  double sum = 0.0;
  double rounding = 0.0;
  double term = 0.0;
  int small_in_a_row = 0;
  for (int k = 0; k < opts.max_terms; ++k) {
    const double s = spec.n + 2.0 * k + 2.0;
    const double log_term = (mu + 2.0 * k + 1.0) * std::log(0.5) - log_gamma(k + 1.5) -
                            log_gamma(k + mu + 1.5) - s * log_gamma_damp +
                            log_lower_incomplete_gamma(s, z);
    term = std::exp(log_term);
    sum += term;
    rounding += term * kEps * (4.0 + std::abs(log_term));
    out.terms_used = k + 1;
    if (term <= opts.term_ratio * sum) {
      if (++small_in_a_row == 2) {
        out.converged = true;
        break;
      }
    } else {
      small_in_a_row = 0;
    }
  }
  out.value = sum;
  out.abs_error_estimate = 2.0 * term + rounding;
  if (!out.converged) {
    throw ConvergenceError("integral_series_oracle " + describe(spec) + ": term cap reached", sum,
                           out.abs_error_estimate);
  }
  return out;
}

double log_asymptotic_integral(const IntegralSpec& spec) {
  return -std::log(std::sqrt(2.0 * std::numbers::pi) * (1.0 - spec.gamma)) -
         (spec.nu + 0.5) * std::log(spec.x) + (1.0 - spec.gamma) * spec.x;
}

double asymptotic_integral(const IntegralSpec& spec) { return std::exp(log_asymptotic_integral(spec)); }

double log_asymptotic_endpoint(const IntegralSpec& spec) {
  return -0.5 * std::log(2.0 * std::numbers::pi) - (spec.nu + 0.5) * std::log(spec.x) +
         (1.0 - spec.gamma) * spec.x;
}

}  // namespace struve
