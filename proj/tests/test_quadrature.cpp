#include <doctest.h>

#include <cmath>
#include <numbers>

#include "struve/errors.hpp"
#include "struve/quadrature.hpp"

using struve::integrate_gk15;

TEST_CASE("polynomials up to degree 22 are exact on one panel") {
  for (int p = 0; p <= 22; ++p) {
    const auto r = integrate_gk15([p](double t) { return std::pow(t, p); }, 0.0, 2.0);
    CAPTURE(p);
    CHECK(r.value == doctest::Approx(std::pow(2.0, p + 1) / (p + 1)).epsilon(1e-14));
  }
}

TEST_CASE("smooth and endpoint-singular integrands") {
  CHECK(integrate_gk15([](double t) { return std::sin(t); }, 0.0, std::numbers::pi).value ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(integrate_gk15([](double t) { return std::exp(-t * t); }, -5.0, 5.0).value ==
        doctest::Approx(std::sqrt(std::numbers::pi) * std::erf(5.0)).epsilon(1e-13));
  // nodes never touch t = 0
  const auto r = integrate_gk15([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(r.subdivisions > 1);
}

TEST_CASE("error estimate bounds the true error") {
  const auto r = integrate_gk15([](double t) { return std::cos(40.0 * t) * std::exp(t); }, 0.0, 3.0);
  const double exact = (std::exp(3.0) * (std::cos(120.0) + 40.0 * std::sin(120.0)) - 1.0) / 1601.0;
  CHECK(std::abs(r.value - exact) <= std::max(r.abs_error_estimate, 1e-15));
  CHECK(r.abs_error_estimate <= 1e-12 * std::abs(r.value));
}

TEST_CASE("reversed and empty intervals") {
  auto f = [](double t) { return t * t; };
  CHECK(integrate_gk15(f, 1.0, 0.0).value == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(integrate_gk15(f, 1.0, 1.0).value == 0.0);
}

TEST_CASE("budget exhaustion throws with the best estimate") {
  struve::QuadratureOptions opts;
  opts.max_subdivisions = 3;
  opts.rel_tol = 1e-15;
  auto f = [](double t) { return std::sin(1.0 / (t + 1e-3)); };
  CHECK_THROWS_AS(integrate_gk15(f, 0.0, 1.0, opts), struve::ConvergenceError);
  try {
    integrate_gk15(f, 0.0, 1.0, opts);
  } catch (const struve::ConvergenceError& e) {
    CHECK(std::isfinite(e.best_estimate()));
    CHECK(e.error_bound() > 0.0);
  }
}
