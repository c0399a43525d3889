#pragma once

#include <cmath>

namespace struve {

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section search for the maximum of a function unimodal on [a, b],
/// stopping once the bracket is narrower than x_tol.
template <class F>
GoldenResult golden_section_maximize(F&& f, double a, double b, double x_tol, int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  GoldenResult out;
  while (b - a > x_tol && out.iterations < max_iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++out.iterations;
  }
  if (fc > fd) {
    out.x = c;
    out.value = fc;
  } else {
    out.x = d;
    out.value = fd;
  }
  return out;
}

}  // namespace struve
