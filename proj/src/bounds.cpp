#include "struve/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "struve/errors.hpp"
#include "struve/golden.hpp"

namespace struve {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double inv_gamma(double x) { return x < 170.0 ? 1.0 / gamma_fn(x) : std::exp(-log_gamma(x)); }

// 1/(sqrt(pi) 2^nu Gamma(nu + 3/2)): the x-linear term of d/dx(L_nu(x)/x^nu) at 0.
double struve_slope(double nu) { return inv_gamma(nu + 1.5) / (kSqrtPi * std::pow(2.0, nu)); }

// 1 - (1 + u) e^{-u} without cancellation for small u.
double one_minus_linear_exp(double u) {
  if (u < 0.5) {
    double term = u;  // u^k / k!, starting at k = 1
    double sum = 0.0;
    for (int k = 2; k < 60; ++k) {
      term *= u / k;
      const double add = (k % 2 == 0 ? 1.0 : -1.0) * (k - 1) * term;
      sum += add;
      if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  return -std::expm1(-u) - u * std::exp(-u);
}

double struve_over_power(double order, double nu, double x) {
  return struve_l(order, x).value * std::pow(x, -nu);
}

void check_x(const char* who, double x) {
  if (!(x > 0.0)) throw DomainError(std::string(who) + ": requires x > 0, got " + fmt(x));
}

void check_boundary_allowed(const char* who, double nu, double n) {
  if (!(n > -1.0)) throw DomainError(std::string(who) + ": requires n > -1");
  if (nu < -(n + 1.0) / 2.0) throw DomainError(std::string(who) + ": requires nu >= -(n+1)/2");
}

void check_strict(const char* who, double nu, double n) {
  if (!(n > -1.0)) throw DomainError(std::string(who) + ": requires n > -1");
  if (!(nu > -(n + 1.0) / 2.0)) throw DomainError(std::string(who) + ": requires nu > -(n+1)/2");
}

void check_damping(const char* who, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw DomainError(std::string(who) + ": requires 0 < gamma < 1, got " + fmt(gamma));
}

double damped_factor(const char* who, double gamma, double nu, double n, double x, const DConstant& d) {
  check_strict(who, nu, n);
  check_x(who, x);
  if (d.nu != nu || d.n != n)
    throw DomainError(std::string(who) + ": D constant was computed for (nu=" + fmt(d.nu) +
                      ", n=" + fmt(d.n) + ")");
  if (!(gamma > 0.0)) throw DomainError(std::string(who) + ": requires gamma > 0");
  if (!(gamma * d.value < 1.0)) throw NotApplicableError("gamma >= 1/D");
  return std::exp(-gamma * x) / (1.0 - d.value * gamma);
}

}  // namespace

BoundCoefficients coefficients(double nu, double n) {
  const double m = nu + n;
  if (!(m + 2.5 > 0.0)) throw DomainError("coefficients: requires nu + n + 5/2 > 0");
  if (n + 1.0 == 0.0 || n + 2.0 == 0.0 || n + 4.0 == 0.0 || m + 1.0 == 0.0 || m + 3.0 == 0.0)
    throw DomainError("coefficients: a denominator factor vanishes at (nu=" + fmt(nu) + ", n=" +
                      fmt(n) + ")");
  const double lead = 2.0 * nu + n + 1.0;
  BoundCoefficients k;
  if (lead == 0.0) return k;
  k.a = lead * inv_gamma(m + 2.5) / (kSqrtPi * std::pow(2.0, m + 2.0) * (n + 2.0) * (m + 1.0));
  k.b = lead * (lead + 2.0) * inv_gamma(m + 4.5) /
        (kSqrtPi * std::pow(2.0, m + 4.0) * (n + 1.0) * (n + 4.0) * (m + 3.0));
  k.c = lead * inv_gamma(m + 2.5) / (kSqrtPi * std::pow(2.0, m + 1.0) * (n + 1.0) * (n + 2.0));
  return k;
}

double lower_bi1(double nu, double x) {
  check_x("lower_bi1", x);
  if (!(nu > -1.5)) throw DomainError("lower_bi1: requires nu > -3/2");
  return struve_over_power(nu, nu, x) - x * struve_slope(nu);
}

double lower_bi2(double nu, double n, double x) {
  check_boundary_allowed("lower_bi2", nu, n);
  return lower_bi2(nu, n, x, coefficients(nu, n));
}

double lower_bi2(double nu, double n, double x, const BoundCoefficients& k) {
  check_boundary_allowed("lower_bi2", nu, n);
  check_x("lower_bi2", x);
  return struve_over_power(nu + n + 1.0, nu, x) - k.a * std::pow(x, n + 2.0);
}

double upper_bi3(double nu, double n, double x) {
  check_boundary_allowed("upper_bi3", nu, n);
  return upper_bi3(nu, n, x, coefficients(nu, n));
}

double upper_bi3(double nu, double n, double x, const BoundCoefficients& k) {
  check_boundary_allowed("upper_bi3", nu, n);
  check_x("upper_bi3", x);
  const double m = nu + n;
  const double lead = 2.0 * nu + n + 1.0;
  double value = (2.0 * (m + 1.0) / (n + 1.0)) * struve_over_power(m + 1.0, nu, x);
  if (lead != 0.0) value -= (lead / (n + 1.0)) * struve_over_power(m + 3.0, nu, x);
  return value + k.b * std::pow(x, n + 4.0) - k.c * std::pow(x, n + 2.0);
}

double lower_bi4(double gamma, double nu, double x) {
  check_damping("lower_bi4", gamma);
  check_x("lower_bi4", x);
  if (!(nu > -1.5)) throw DomainError("lower_bi4: requires nu > -3/2");
  const double undamped = integral_closed_form(nu, x);
  const double correction = one_minus_linear_exp(gamma * x) / gamma * struve_slope(nu);
  return (std::exp(-gamma * x) * undamped - correction) / (1.0 - gamma);
}

double lower_bi5(double gamma, double nu, double x) {
  check_damping("lower_bi5", gamma);
  check_x("lower_bi5", x);
  if (!(nu > -1.5)) throw DomainError("lower_bi5: requires nu > -3/2");
  const double gx = gamma * x;
  const double correction = (1.0 + gx) * (-std::expm1(-gx)) / gamma * struve_slope(nu);
  return (std::exp(-gx) * struve_over_power(nu, nu, x) - correction) / (1.0 - gamma);
}

double ratio_fn(double nu, double n, double x) {
  check_strict("ratio_fn", nu, n);
  check_x("ratio_fn", x);
  if (x <= 30.0) {
    return std::pow(x, nu) * integral_power_series(nu, n, x).value / struve_l(nu + n, x).value;
  }
  const double log_integral = x <= 600.0 ? log_integral_power_series(nu, n, x)
                                         : log_integral_quadrature({0.0, nu, n, x}).log_value;
  return std::exp(nu * std::log(x) + log_integral - log_struve_l(nu + n, x));
}

DConstant d_constant(double nu, double n) {
  check_strict("d_constant", nu, n);
  constexpr int kGrid = 200;
  constexpr double kLo = 1e-3;
  constexpr double kHi = 500.0;

  std::vector<double> xs(kGrid);
  std::vector<double> rs(kGrid);
  const double step = std::log(kHi / kLo) / (kGrid - 1);
  int best = 0;
  for (int i = 0; i < kGrid; ++i) {
    xs[i] = kLo * std::exp(step * i);
    rs[i] = ratio_fn(nu, n, xs[i]);
    if (rs[i] > rs[best]) best = i;
  }
  if (best == 0 || best == kGrid - 1) {
    throw SolverError("d_constant: no interior maximum of the ratio on [1e-3, 500] for (nu=" +
                          fmt(nu) + ", n=" + fmt(n) + "); boundary supremum reported",
                      rs[best], 0.0);
  }

  const GoldenResult g = golden_section_maximize(
      [nu, n](double x) { return ratio_fn(nu, n, x); }, xs[best - 1], xs[best + 1], 1e-6);
  DConstant d{nu, n, rs[best], xs[best]};
  if (g.value > d.value) {
    d.value = g.value;
    d.argmax_x = g.x;
  }
  return d;
}

double upper_bi7(double gamma, double nu, double n, double x, const DConstant& d) {
  const double factor = damped_factor("upper_bi7", gamma, nu, n, x, d);
  return factor * integral_undamped(nu, n, x);
}

double upper_bi8(double gamma, double nu, double n, double x, const DConstant& d) {
  check_strict("upper_bi8", nu, n);
  return upper_bi8(gamma, nu, n, x, d, coefficients(nu, n));
}

double upper_bi8(double gamma, double nu, double n, double x, const DConstant& d,
                 const BoundCoefficients& k) {
  const double factor = damped_factor("upper_bi8", gamma, nu, n, x, d);
  return factor * upper_bi3(nu, n, x, k);
}

double corollary_middle(double nu, double x) {
  if (!(nu > 0.5)) throw DomainError("corollary_middle: requires nu > 1/2");
  if (!(x >= 0.0)) throw DomainError("corollary_middle: requires x >= 0");
  if (x == 0.0) return 0.0;
  const double prefactor =
      std::pow(x, nu + 1.0) * inv_gamma(nu + 0.5) / (kSqrtPi * std::pow(2.0, nu));
  return prefactor * pfq({{1.0, 1.0}, {1.5, 2.0, nu + 0.5}}, 0.25 * x * x).value;
}

CorollaryBounds corollary_bounds(double nu, double x) {
  if (!(nu > 0.5)) throw DomainError("corollary_bounds: requires nu > 1/2");
  check_x("corollary_bounds", x);
  const BoundCoefficients k = coefficients(nu - 1.0, 0.0);
  const double l0 = struve_l(nu, x).value;
  const double l2 = struve_l(nu + 2.0, x).value;
  const double p1 = std::pow(x, nu + 1.0);
  return {l0 - k.a * p1, 2.0 * nu * l0 - (2.0 * nu - 1.0) * l2 + k.b * std::pow(x, nu + 3.0) - k.c * p1};
}

std::string_view to_string(BoundId id) {
  switch (id) {
    case BoundId::bi1: return "bi1";
    case BoundId::bi2: return "bi2";
    case BoundId::bi3: return "bi3";
    case BoundId::bi4: return "bi4";
    case BoundId::bi5: return "bi5";
    case BoundId::bi7: return "bi7";
    case BoundId::bi8: return "bi8";
  }
  return "?";
}

bool is_lower(BoundId id) {
  return id == BoundId::bi1 || id == BoundId::bi2 || id == BoundId::bi4 || id == BoundId::bi5;
}

BoundReport bound_report(const IntegralSpec& spec, const std::optional<DConstant>& d,
                         const BoundHooks& hooks) {
  validate(spec);
  BoundReport r;
  r.spec = spec;
  const double g = spec.gamma, nu = spec.nu, n = spec.n, x = spec.x;
  r.integral = g == 0.0 ? integral_undamped(nu, n, x) : integral_quadrature(spec).value;

  const bool on_domain = nu >= -(n + 1.0) / 2.0;
  const bool strict_domain = nu > -(n + 1.0) / 2.0;
  auto coeffs = [&] { return hooks.coefficients ? *hooks.coefficients : coefficients(nu, n); };

  auto attempt = [&](BoundId id, auto&& eval) {
    try {
      const double v = eval();
      r.bounds[id] = v;
      r.rel_errors[id] = std::abs(r.integral - v) / r.integral;
    } catch (const NotApplicableError& e) {
      r.skipped[id] = e.what();
    } catch (const std::exception& e) {
      r.skipped[id] = std::string("error: ") + e.what();
    }
  };

  if (g == 0.0) {
    if (n == 0.0)
      attempt(BoundId::bi1, [&] { return lower_bi1(nu, x); });
    else
      r.skipped[BoundId::bi1] = "requires n = 0";
    if (on_domain) {
      attempt(BoundId::bi2, [&] { return lower_bi2(nu, n, x, coeffs()); });
      attempt(BoundId::bi3, [&] { return upper_bi3(nu, n, x, coeffs()); });
    } else {
      r.skipped[BoundId::bi2] = r.skipped[BoundId::bi3] = "requires nu >= -(n+1)/2";
    }
    for (BoundId id : {BoundId::bi4, BoundId::bi5, BoundId::bi7, BoundId::bi8})
      r.skipped[id] = "requires gamma > 0";
    return r;
  }

  for (BoundId id : {BoundId::bi1, BoundId::bi2, BoundId::bi3}) r.skipped[id] = "requires gamma = 0";
  if (n == 0.0) {
    attempt(BoundId::bi4, [&] { return lower_bi4(g, nu, x); });
    attempt(BoundId::bi5, [&] { return lower_bi5(g, nu, x); });
  } else {
    r.skipped[BoundId::bi4] = r.skipped[BoundId::bi5] = "requires n = 0";
  }
  if (!strict_domain) {
    r.skipped[BoundId::bi7] = r.skipped[BoundId::bi8] = "requires nu > -(n+1)/2";
  } else if (!d) {
    r.skipped[BoundId::bi7] = r.skipped[BoundId::bi8] = "D constant not supplied";
  } else {
    attempt(BoundId::bi7, [&] { return upper_bi7(g, nu, n, x, *d); });
    attempt(BoundId::bi8, [&] { return upper_bi8(g, nu, n, x, *d, coeffs()); });
  }
  return r;
}

}  // namespace struve
