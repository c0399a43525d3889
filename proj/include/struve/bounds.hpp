#pragma once

// Lower and upper bounds for int_0^x e^{-gamma t} t^{-nu} L_{nu+n}(t) dt, the
// supremum constant D_{nu,n} that gates the damped upper bounds, and the
// induced two-sided bound on x^{nu+1} 2F3(1,1; 3/2, 2, nu+1/2; x^2/4).

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "struve/errors.hpp"
#include "struve/integrals.hpp"

namespace struve {

struct BoundCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// a_{nu,n}, b_{nu,n}, c_{nu,n}. All three vanish when 2nu + n + 1 = 0.
BoundCoefficients coefficients(double nu, double n);

// Undamped bounds on int_0^x L_{nu+n}(t)/t^nu dt.
double lower_bi1(double nu, double x);
double lower_bi2(double nu, double n, double x);
double lower_bi2(double nu, double n, double x, const BoundCoefficients& k);
double upper_bi3(double nu, double n, double x);
double upper_bi3(double nu, double n, double x, const BoundCoefficients& k);

// Damped lower bounds on int_0^x e^{-gamma t} L_nu(t)/t^nu dt, 0 < gamma < 1.
double lower_bi4(double gamma, double nu, double x);
double lower_bi5(double gamma, double nu, double x);

/// (x^nu / L_{nu+n}(x)) int_0^x L_{nu+n}(t)/t^nu dt. Tends to 0 as x -> 0 and
/// to 1 as x -> infinity.
double ratio_fn(double nu, double n, double x);

struct DConstant {
  double nu = 0.0;
  double n = 0.0;
  double value = 0.0;
  double argmax_x = 0.0;
};

/// Thrown when the global scan of ratio_fn finds no interior maximum.
class SolverError : public ConvergenceError {
public:
  using ConvergenceError::ConvergenceError;
};

/// sup_{x>0} ratio_fn(nu, n, x): 200-point log scan over [1e-3, 500], then
/// golden-section refinement on the bracketing cell to an x tolerance of 1e-6.
DConstant d_constant(double nu, double n);

// Damped upper bounds; require 0 < gamma < 1/D. NotApplicableError otherwise.
double upper_bi7(double gamma, double nu, double n, double x, const DConstant& d);
double upper_bi8(double gamma, double nu, double n, double x, const DConstant& d);
double upper_bi8(double gamma, double nu, double n, double x, const DConstant& d,
                 const BoundCoefficients& k);

/// x^{nu+1} / (sqrt(pi) 2^nu Gamma(nu+1/2)) 2F3(1,1; 3/2, 2, nu+1/2; x^2/4), nu > 1/2.
double corollary_middle(double nu, double x);

struct CorollaryBounds {
  double lower = 0.0;
  double upper = 0.0;
};

CorollaryBounds corollary_bounds(double nu, double x);

enum class BoundId { bi1, bi2, bi3, bi4, bi5, bi7, bi8 };

inline constexpr BoundId kAllBounds[] = {BoundId::bi1, BoundId::bi2, BoundId::bi3, BoundId::bi4,
                                         BoundId::bi5, BoundId::bi7, BoundId::bi8};

std::string_view to_string(BoundId id);
bool is_lower(BoundId id);

struct BoundReport {
  IntegralSpec spec;
  double integral = 0.0;
  std::map<BoundId, double> bounds;
  std::map<BoundId, double> rel_errors;
  /// Bounds not evaluated at this point, with the reason.
  std::map<BoundId, std::string> skipped;
};

/// Optional overrides used to evaluate bounds with substituted coefficients.
struct BoundHooks {
  std::optional<BoundCoefficients> coefficients;
};

/// Evaluates the integral at `spec` and every bound that applies there:
/// bi1-bi3 when gamma = 0, bi4/bi5/bi7/bi8 when gamma > 0. bi7/bi8 need `d`.
BoundReport bound_report(const IntegralSpec& spec, const std::optional<DConstant>& d = std::nullopt,
                         const BoundHooks& hooks = {});

}  // namespace struve
