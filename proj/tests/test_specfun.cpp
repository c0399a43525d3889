#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "struve/errors.hpp"
#include "struve/specfun.hpp"

using namespace struve;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// L_{nu-1} - L_{nu+1} - (2nu/x) L_nu - (x/2)^nu / (sqrt(pi) Gamma(nu+3/2)), divided by L_{nu-1}.
double recurrence_residual(double nu, double x) {
  if (x <= 30.0) {
    const double lm = struve_l(nu - 1.0, x).value;
    const double l0 = struve_l(nu, x).value;
    const double lp = struve_l(nu + 1.0, x).value;
    const double tail = std::pow(x / 2.0, nu) / (std::sqrt(std::numbers::pi) * gamma_fn(nu + 1.5));
    return std::abs(lm - lp - 2.0 * nu / x * l0 - tail) / lm;
  }
  const double lm = struve_l_scaled(nu - 1.0, x).value;
  const double l0 = struve_l_scaled(nu, x).value;
  const double lp = struve_l_scaled(nu + 1.0, x).value;
  const double tail =
      std::exp(nu * std::log(x / 2.0) - 0.5 * std::log(std::numbers::pi) - log_gamma(nu + 1.5) - x);
  return std::abs(lm - lp - 2.0 * nu / x * l0 - tail) / lm;
}

}  // namespace

TEST_CASE("struve_l reference values") {
  CHECK(rel(struve_l(0.0, 1.0).value, 0.71024318593789088874) < 1e-14);
  CHECK(rel(struve_l(0.5, 1.0).value, 0.43331565379010209063) < 1e-14);
  CHECK(rel(struve_l(-1.0, 1e-3).value, 0.63661998457418627938) < 1e-14);
  CHECK(rel(struve_l(5.0, 0.3).value, 4.4749215060799145263e-8) < 1e-14);
  CHECK(rel(struve_l(-1.4, 2.0).value, 1.238916561281632537) < 1e-14);
  CHECK(rel(struve_l(2.5, 10.0).value, 2025.4774442031006409) < 1e-14);
  CHECK(rel(struve_l(3.0, 50.0).value, 2.6777641388839412713e+20) < 1e-13);
  CHECK(rel(struve_l(1.0, 300.0).value, 4.4683813850369544139e+128) < 1e-12);
  CHECK(rel(struve_l(0.0, 700.0).value, 1.5295933476718737363e+302) < 1e-12);
}

TEST_CASE("half-integer order matches the elementary form") {
  for (double x : {0.1, 1.0, 7.0, 25.0}) {
    const double want = std::sqrt(2.0 / (std::numbers::pi * x)) * (std::cosh(x) - 1.0);
    CHECK(rel(struve_l(0.5, x).value, want) < 1e-13);
  }
}

TEST_CASE("struve_l at the origin") {
  CHECK(struve_l(0.0, 0.0).value == 0.0);
  CHECK(struve_l(3.5, 0.0).value == 0.0);
  CHECK(struve_l(-1.0, 0.0).value == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-15));
  CHECK_THROWS_AS(struve_l(-1.2, 0.0), DomainError);
}

TEST_CASE("struve_l rejects arguments outside its domain") {
  CHECK_THROWS_AS(struve_l(-1.5, 1.0), DomainError);
  CHECK_THROWS_AS(struve_l(0.0, -1.0), DomainError);
  CHECK_THROWS_AS(struve_l(0.0, 701.0), OverflowError);
  CHECK_THROWS_AS(struve_l_scaled(-2.0, 1.0), DomainError);
  CHECK_THROWS_AS(log_struve_l(0.0, 0.0), DomainError);
}

TEST_CASE("struve_l_scaled reference values") {
  CHECK(rel(struve_l_scaled(0.0, 1.0).value, 0.26128386633865610156) < 1e-14);
  CHECK(rel(struve_l_scaled(0.0, 400.0).value, 0.01995335628193998987) < 1e-12);
  struct Case {
    double nu, x, want;
  };
  const Case cases[] = {
      {0.0, 45.0, 0.059638115011731949075},   {0.0, 120.0, 0.036456396116413918393},
      {0.0, 650.0, 0.015650815436407734124},  {0.0, 1000.0, 0.012617240455891256586},
      {0.0, 1e4, 0.0039894726746047321064},   {1.0, 45.0, 0.058971703136200643438},
      {1.0, 120.0, 0.036304175332028956452},  {1.0, 650.0, 0.015638771710050828709},
      {1.0, 1000.0, 0.01261093025692862947},  {1.0, 1e4, 0.0039892731959836622645},
      {2.5, 45.0, 0.055594188508266595351},   {2.5, 120.0, 0.035515411136121681453},
      {2.5, 650.0, 0.015575694111611360895},  {2.5, 1000.0, 0.012577853469258328143},
      {2.5, 1e4, 0.0039882260968558066018},   {7.0, 45.0, 0.034426162437025439769},
      {7.0, 120.0, 0.029700120061775990049},  {7.0, 650.0, 0.01507144714052905466},
      {7.0, 1000.0, 0.012311724329574369804}, {7.0, 1e4, 0.0039797099430154565884},
  };
  for (const auto& c : cases) {
    CAPTURE(c.nu);
    CAPTURE(c.x);
    CHECK(rel(struve_l_scaled(c.nu, c.x).value, c.want) < 1e-12);
  }
}

TEST_CASE("scaled evaluation is continuous across the asymptotic switch") {
  for (double nu : {0.0, 1.0, 4.0}) {
    const double below = struve_l_scaled(nu, 600.0).value;
    const double above = struve_l_scaled(nu, std::nextafter(600.0, 1e9)).value;
    CHECK(rel(above, below) < 1e-13);
    const auto series = detail::struve_scaled_series(nu, 620.0, SeriesOptions::defaults());
    const auto asym = detail::struve_scaled_asymptotic(nu, 620.0, SeriesOptions::defaults());
    CHECK(rel(asym.value, series.value()) < 1e-12);
  }
}

TEST_CASE("scaling consistency for x <= 30") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> nu_d(-1.4, 20.0), x_d(0.01, 30.0);
  for (int i = 0; i < 300; ++i) {
    const double nu = nu_d(rng), x = x_d(rng);
    CAPTURE(nu);
    CAPTURE(x);
    CHECK(rel(struve_l_scaled(nu, x).value, std::exp(-x) * struve_l(nu, x).value) < 1e-13);
    CHECK(rel(log_struve_l(nu, x), std::log(struve_l(nu, x).value)) < 1e-13);
  }
}

TEST_CASE("positivity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> nu_d(-1.499, 20.0), x_d(1e-6, 500.0);
  for (int i = 0; i < 500; ++i) {
    const double nu = nu_d(rng), x = x_d(rng);
    CAPTURE(nu);
    CAPTURE(x);
    CHECK(struve_l_scaled(nu, x).value > 0.0);
    if (x <= 700.0) CHECK(struve_l(nu, x).value > 0.0);
  }
}

TEST_CASE("recurrence residual on [0.5, 10] x [0.1, 50]") {
  double worst = 0.0;
  for (int i = 0; i <= 19; ++i) {
    const double nu = 0.5 + 9.5 * i / 19.0;
    for (int j = 0; j <= 40; ++j) {
      const double x = 0.1 * std::pow(500.0, j / 40.0);
      worst = std::max(worst, recurrence_residual(nu, x));
    }
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("derivative of L_nu(x)/x^nu by central differences") {
  double worst = 0.0;
  for (int i = 0; i <= 12; ++i) {
    const double nu = -1.0 + 0.5 * i;
    for (double x : {0.5, 1.0, 2.0, 3.5, 5.0, 8.0, 12.0, 16.0, 20.0}) {
      const double h = 1e-5 * std::max(1.0, x);
      auto g = [&](double t) { return struve_l(nu, t).value / std::pow(t, nu); };
      const double fd = (g(x + h) - g(x - h)) / (2.0 * h);
      const double exact = struve_l(nu + 1.0, x).value / std::pow(x, nu) +
                           std::pow(2.0, -nu) / (std::sqrt(std::numbers::pi) * gamma_fn(nu + 1.5));
      worst = std::max(worst, rel(fd, exact));
    }
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("small-x limit") {
  for (double nu : {-1.0, 0.0, 1.0, 5.0}) {
    const double x = 1e-3;
    const double lead = 2.0 / (std::sqrt(std::numbers::pi) * gamma_fn(nu + 1.5)) * std::pow(x / 2.0, nu + 1.0);
    const double r = struve_l(nu, x).value / lead;
    CAPTURE(nu);
    CHECK(r >= 1.0);
    CHECK(r <= 1.0 + 1e-3);
  }
}

TEST_CASE("large-x limit") {
  for (double nu : {0.0, 1.0, 2.0}) {
    const double x = 400.0;
    CHECK(std::abs(struve_l_scaled(nu, x).value * std::sqrt(2.0 * std::numbers::pi * x) - 1.0) <= 0.02);
  }
}

TEST_CASE("monotonicity in the order") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> nu_d(0.5, 15.0), lx_d(std::log(1e-3), std::log(30.0));
  for (int i = 0; i < 400; ++i) {
    const double nu = nu_d(rng), x = std::exp(lx_d(rng));
    CAPTURE(nu);
    CAPTURE(x);
    CHECK(struve_l(nu, x).value < struve_l(nu - 1.0, x).value);
  }
}

TEST_CASE("gamma function") {
  CHECK(rel(gamma_fn(0.1), 9.5135076986687312858) < 1e-14);
  CHECK(rel(gamma_fn(33.3), 7.487577596522706608e+35) < 1e-13);
  CHECK(rel(gamma_fn(60.0), 1.3868311854568983574e+80) < 1e-13);
  CHECK(rel(gamma_fn(0.5), std::sqrt(std::numbers::pi)) < 1e-15);
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-15));
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(200.0), OverflowError);
  CHECK(rel(log_gamma(200.0), std::lgamma(200.0)) < 1e-14);
  for (int i = 0; i <= 60; ++i) {
    const double x = 0.5 * std::pow(100.0, i / 60.0);
    CAPTURE(x);
    CHECK(std::abs(gamma_fn(x + 1.0) - x * gamma_fn(x)) / gamma_fn(x + 1.0) <= 1e-13);
  }
}

TEST_CASE("lower incomplete gamma") {
  CHECK(rel(lower_incomplete_gamma(2.0, 1.0), 0.2642411176571153568) < 1e-14);
  CHECK(rel(lower_incomplete_gamma(3.5, 2.0), 0.73187696325676831996) < 1e-14);
  CHECK(rel(lower_incomplete_gamma(10.0, 30.0), 362877.41565904690148) < 1e-14);
  CHECK(rel(lower_incomplete_gamma(0.5, 0.1), 0.61199136611177179642) < 1e-14);
  CHECK(rel(lower_incomplete_gamma(50.0, 45.0), 1.5012520153238499914e+62) < 1e-13);
  CHECK(lower_incomplete_gamma(3.0, 0.0) == 0.0);
  CHECK_THROWS_AS(lower_incomplete_gamma(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(lower_incomplete_gamma(1.0, -1.0), DomainError);
  // gamma(1, z) = 1 - e^{-z}
  for (double z : {1e-3, 0.5, 2.0, 10.0, 40.0}) CHECK(rel(lower_incomplete_gamma(1.0, z), -std::expm1(-z)) < 1e-14);
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(3.0, 0) == 1.0);
  CHECK(pochhammer(3.0, 4) == 360.0);
  CHECK(pochhammer(-2.0, 3) == 0.0);
  CHECK_THROWS_AS(pochhammer(1.0, -1), DomainError);
}

TEST_CASE("generalized hypergeometric series") {
  CHECK(rel(pfq({{1.0, 1.0}, {1.5, 2.0, 1.5}}, 0.25).value, 1.0570599382821575442) < 1e-14);
  CHECK(rel(pfq({{1.0}, {1.5, 2.5}}, 9.0).value, 7.9488853177958751801) < 1e-14);
  CHECK(rel(pfq({{0.5, 1.0}, {2.0}}, 0.5).value, 1.1715728752538099024) < 1e-13);
  CHECK(rel(pfq({{1.0, 1.0}, {1.5, 2.0, 3.0}}, -4.0).value, 0.65596918688869804179) < 1e-14);
  CHECK(pfq({{1.0}, {2.0}}, 0.0).value == 1.0);
  CHECK(pfq({{}, {}}, 1.0).value == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(pfq({{1.0}, {-2.0}}, 1.0), DomainError);
  CHECK_THROWS_AS(pfq({{1.0, 1.0, 1.0}, {1.0}}, 0.1), DomainError);
  CHECK_THROWS_AS(pfq({{1.0, 1.0}, {2.0}}, 1.5), DomainError);
}

TEST_CASE("term cap is reported") {
  SeriesOptions opts;
  opts.max_terms = 3;
  CHECK_THROWS_AS(struve_l(0.0, 20.0, opts), ConvergenceError);
  try {
    struve_l(0.0, 20.0, opts);
  } catch (const ConvergenceError& e) {
    CHECK(e.best_estimate() > 0.0);
    CHECK(e.error_bound() > 0.0);
  }
}
