#include "struve/specfun.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "struve/errors.hpp"

namespace struve {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_sum(double z) {
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (z + static_cast<double>(i));
  return a;
}

// Above this, Gamma(x) is not representable.
constexpr double kGammaMaxArg = 171.6;

// Beyond this, e^{-x} L_nu(x) switches to Hankel's expansion.
constexpr double kAsymptoticX = 600.0;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_order(double nu) {
  if (!(nu > -1.5)) throw DomainError("struve_l: order must satisfy nu > -3/2, got nu = " + fmt(nu));
}

}  // namespace

SeriesOptions SeriesOptions::defaults() {
  static const SeriesOptions opts = [] {
    SeriesOptions o;
    if (const char* env = std::getenv("STRUVE_MAX_TERMS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v > 0 && v < 10'000'000) o.max_terms = static_cast<int>(v);
    }
    return o;
  }();
  return opts;
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be > 0, got " + fmt(x));
  if (x > kGammaMaxArg) throw OverflowError("gamma_fn: Gamma(" + fmt(x) + ") overflows binary64");
  if (x < 0.5) return gamma_fn(x + 1.0) / x;
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  // split the power so t^(z+1/2) cannot overflow before e^{-t} is applied
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * std::exp(-t) * half * lanczos_sum(z);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be > 0, got " + fmt(x));
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(lanczos_sum(z));
}

double log_lower_incomplete_gamma(double s, double z) {
  if (!(s > 0.0)) throw DomainError("lower_incomplete_gamma: s must be > 0, got " + fmt(s));
  if (!(z >= 0.0)) throw DomainError("lower_incomplete_gamma: z must be >= 0, got " + fmt(z));
  if (z == 0.0) return -kInf;
  if (std::isinf(z)) return log_gamma(s);

  constexpr int kMaxIter = 100000;
  if (z < s + 1.0) {
    // gamma(s, z) = z^s e^{-z} sum_j z^j / (s (s+1) ... (s+j))
    double ap = s;
    double del = 1.0 / s;
    double sum = del;
    for (int j = 0; j < kMaxIter; ++j) {
      ap += 1.0;
      del *= z / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * kEps) {
        return s * std::log(z) - z + std::log(sum);
      }
    }
    throw ConvergenceError("lower_incomplete_gamma: series did not converge",
                           std::exp(s * std::log(z) - z + std::log(sum)), del);
  }

  // Gamma(s, z) = z^s e^{-z} / (z + 1 - s - 1(1-s)/(z + 3 - s - ...)), modified Lentz
  constexpr double kTiny = 1e-300;
  double b = z + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  bool done = false;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) {
      done = true;
      break;
    }
  }
  const double lg = log_gamma(s);
  const double upper_reg = std::exp(s * std::log(z) - z - lg) * h;
  if (!done) {
    throw ConvergenceError("lower_incomplete_gamma: continued fraction did not converge",
                           std::exp(lg) * (1.0 - upper_reg), std::exp(lg) * kEps);
  }
  return lg + std::log1p(-upper_reg);
}

double lower_incomplete_gamma(double s, double z) {
  const double lv = log_lower_incomplete_gamma(s, z);
  return std::isinf(lv) ? 0.0 : std::exp(lv);
}

double pochhammer(double a, int k) {
  if (k < 0) throw DomainError("pochhammer: k must be >= 0, got " + std::to_string(k));
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= a + i;
  return r;
}

SeriesEval pfq(const HypergeometricParams& params, double z, const SeriesOptions& opts) {
  const auto p = params.numerator.size();
  const auto q = params.denominator.size();
  for (double b : params.denominator) {
    if (b <= 0.0 && b == std::floor(b))
      throw DomainError("pfq: denominator parameter " + fmt(b) + " is zero or a negative integer");
  }
  if (p > q + 1) throw DomainError("pfq: requires p <= q + 1");
  if (p == q + 1 && !(std::abs(z) < 1.0))
    throw DomainError("pfq: p = q + 1 requires |z| < 1, got z = " + fmt(z));

  SeriesEval out;
  double term = 1.0;
  double sum = 0.0;
  double abs_sum = 0.0;
  int small_in_a_row = 0;
  bool stopped = false;
  for (int k = 0; k < opts.max_terms; ++k) {
    sum += term;
    abs_sum += std::abs(term);
    out.terms_used = k + 1;
    if (std::abs(term) <= opts.term_ratio * std::abs(sum)) {
      if (++small_in_a_row == 2) {
        stopped = true;
        break;
      }
    } else {
      small_in_a_row = 0;
    }
    double r = z / (k + 1.0);
    for (double a : params.numerator) r *= a + k;
    for (double b : params.denominator) r /= b + k;
    term *= r;
  }
  out.value = sum;
  out.abs_error_estimate = 2.0 * std::abs(term) + kEps * abs_sum * std::sqrt(out.terms_used);
  if (!stopped) {
    throw ConvergenceError("pfq: term cap of " + std::to_string(opts.max_terms) + " reached", sum,
                           out.abs_error_estimate);
  }
  out.converged = out.abs_error_estimate <= opts.rel_tol * std::abs(sum) + opts.abs_tol;
  return out;
}

namespace detail {

ScaledSum struve_scaled_series(double nu, double x, const SeriesOptions& opts) {
  const double q = 0.25 * x * x;
  const double log_t0 = (nu + 1.0) * std::log(0.5 * x) - log_gamma(1.5) - log_gamma(nu + 1.5) - x;
  return sum_positive_series(
      log_t0, [q, nu](int k) { return q / ((k + 1.5) * (k + nu + 1.5)); }, opts);
}

SeriesEval struve_scaled_asymptotic(double nu, double x, const SeriesOptions& opts) {
  // e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k prod_{j<=k} (4nu^2 - (2j-1)^2) / (k! (8x)^k);
  // L_nu - I_nu is algebraic in x and vanishes after scaling.
  const double mu = 4.0 * nu * nu;
  double sum = 1.0;
  double term = 1.0;
  int small_in_a_row = 0;
  SeriesEval out;
  out.terms_used = 1;
  for (int k = 1; k < opts.max_terms; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * k * x);
    if (std::abs(next) > std::abs(term) && term != 0.0) break;  // asymptotic divergence
    term = next;
    sum += term;
    out.terms_used = k + 1;
    if (std::abs(term) <= opts.term_ratio * std::abs(sum)) {
      if (++small_in_a_row == 2) {
        out.converged = true;
        break;
      }
    } else {
      small_in_a_row = 0;
    }
  }
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * x);
  out.value = sum * norm;
  out.abs_error_estimate = (std::abs(term) + 4.0 * kEps * std::abs(sum)) * norm;
  return out;
}

}  // namespace detail

SeriesEval struve_l(double nu, double x, const SeriesOptions& opts) {
  check_order(nu);
  if (!(x >= 0.0)) throw DomainError("struve_l: x must be >= 0, got " + fmt(x));
  if (x > kStruveOverflowX)
    throw OverflowError("struve_l: x = " + fmt(x) + " exceeds 700; use struve_l_scaled");

  SeriesEval out;
  if (x == 0.0) {
    out.converged = true;
    if (nu > -1.0) return out;
    if (nu == -1.0) {
      out.value = 1.0 / (gamma_fn(1.5) * gamma_fn(0.5));
      return out;
    }
    throw DomainError("struve_l: L_nu(0) is unbounded for nu < -1");
  }

  const double q = 0.25 * x * x;
  auto ratio = [q, nu](int k) { return q / ((k + 1.5) * (k + nu + 1.5)); };

  // Leading term in linear arithmetic when representable (exact for the common case).
  double t0 = 0.0;
  if (nu + 1.5 < kGammaMaxArg) t0 = std::pow(0.5 * x, nu + 1.0) / (gamma_fn(1.5) * gamma_fn(nu + 1.5));
  detail::ScaledSum s;
  double prefactor = 1.0;
  if (std::isnormal(t0)) {
    s = detail::sum_positive_series(0.0, ratio, opts);
    prefactor = t0;
  } else {
    s = detail::sum_positive_series(
        (nu + 1.0) * std::log(0.5 * x) - log_gamma(1.5) - log_gamma(nu + 1.5), ratio, opts);
  }
  const double scale = std::exp(s.log_scale);
  out.value = prefactor * s.sum * scale;
  out.abs_error_estimate = prefactor * s.abs_error * scale;
  out.terms_used = s.terms;
  if (!s.stopped) {
    throw ConvergenceError("struve_l: term cap of " + std::to_string(opts.max_terms) + " reached",
                           out.value, out.abs_error_estimate);
  }
  if (std::isinf(out.value)) throw OverflowError("struve_l: L_nu(" + fmt(x) + ") overflows");
  out.converged = out.abs_error_estimate <= opts.rel_tol * out.value + opts.abs_tol;
  return out;
}

SeriesEval struve_l_scaled(double nu, double x, const SeriesOptions& opts) {
  check_order(nu);
  if (!(x >= 0.0)) throw DomainError("struve_l_scaled: x must be >= 0, got " + fmt(x));
  if (x <= 30.0) {
    SeriesEval out = struve_l(nu, x, opts);
    const double e = std::exp(-x);
    out.value *= e;
    out.abs_error_estimate *= e;
    return out;
  }
  if (x > kAsymptoticX) {
    SeriesEval a = detail::struve_scaled_asymptotic(nu, x, opts);
    if (a.converged) {
      a.converged = a.abs_error_estimate <= opts.rel_tol * a.value + opts.abs_tol;
      return a;
    }
  }
  const detail::ScaledSum s = detail::struve_scaled_series(nu, x, opts);
  SeriesEval out;
  out.value = s.value();
  out.abs_error_estimate = std::exp(s.log_scale) * s.abs_error;
  out.terms_used = s.terms;
  if (!s.stopped) {
    throw ConvergenceError("struve_l_scaled: term cap of " + std::to_string(opts.max_terms) +
                               " reached",
                           out.value, out.abs_error_estimate);
  }
  // the log-offset start term carries an absolute error ~ eps * x
  out.abs_error_estimate += out.value * kEps * (2.0 * x + 16.0);
  out.converged = out.abs_error_estimate <= opts.rel_tol * out.value + opts.abs_tol;
  return out;
}

double log_struve_l(double nu, double x, const SeriesOptions& opts) {
  check_order(nu);
  if (!(x > 0.0)) throw DomainError("log_struve_l: x must be > 0, got " + fmt(x));
  if (x <= 30.0) return std::log(struve_l(nu, x, opts).value);
  return x + std::log(struve_l_scaled(nu, x, opts).value);
}

}  // namespace struve
