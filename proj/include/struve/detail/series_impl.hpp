#pragma once

#include <cmath>
#include <limits>

namespace struve::detail {

inline double ScaledSum::log_value() const { return log_scale + std::log(sum); }

inline double ScaledSum::value() const {
  if (sum == 0.0) return 0.0;
  return std::exp(log_scale) * sum;
}

template <class Ratio>
ScaledSum sum_positive_series(double log_t0, Ratio&& ratio, const SeriesOptions& opts) {
  constexpr double kRescaleAbove = 1e200;
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  ScaledSum out;
  out.log_scale = log_t0;
  double term = 1.0;
  int small_in_a_row = 0;

  for (int k = 0; k < opts.max_terms; ++k) {
    out.sum += term;
    out.terms = k + 1;
    if (term <= opts.term_ratio * out.sum) {
      if (++small_in_a_row == 2) {
        out.stopped = true;
        break;
      }
    } else {
      small_in_a_row = 0;
    }
    term *= ratio(k);
    if (term > kRescaleAbove) {
      out.log_scale += std::log(term);
      out.sum /= term;
      term = 1.0;
    }
  }
  // truncation (terms decay at least geometrically past the stop) + rounding
  out.abs_error = 2.0 * term + kEps * out.sum * std::sqrt(static_cast<double>(out.terms));
  return out;
}

}  // namespace struve::detail
