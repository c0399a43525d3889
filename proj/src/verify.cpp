#include "struve/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "struve/errors.hpp"
#include "struve/tables.hpp"

namespace struve {

namespace {

using json = nlohmann::ordered_json;

// Margins are signed and relative: >= 0 means the check holds at that point.
class Tracker {
public:
  explicit Tracker(std::string name) { result_.name = std::move(name); }

  void record(double margin, const std::string& witness) {
    ++result_.evaluated;
    if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
    if (!has_margin_ || margin < result_.worst_margin) {
      has_margin_ = true;
      result_.worst_margin = margin;
      result_.witness = witness;
    }
    if (margin < 0.0) {
      ++result_.failures;
      result_.passed = false;
    }
  }

  void skip(const std::string& params, const std::string& reason) {
    result_.skipped.push_back({params, reason});
  }

  CheckResult take() { return std::move(result_); }

private:
  CheckResult result_;
  bool has_margin_ = false;
};

std::string point(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os.precision(10);
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ' ';
    os << k << '=' << v;
    first = false;
  }
  return os.str();
}

std::string point(const IntegralSpec& s) {
  return point({{"gamma", s.gamma}, {"nu", s.nu}, {"n", s.n}, {"x", s.x}});
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Evaluates fn(i) for i in [0, count) on worker threads; results land in
// index order so the report does not depend on scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn) {
  std::vector<T> out(count);
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) out[i] = fn(i);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

// Outcome of evaluating one grid point: margins to record or a skip reason.
struct PointOutcome {
  std::vector<std::pair<double, std::string>> margins;
  std::vector<SkippedPoint> skipped;
  bool error = false;
};

class Verifier {
public:
  Verifier(const GridConfig& config, const VerifyHooks& hooks) : cfg_(config), hooks_(hooks) {}

  VerificationReport run() {
    VerificationReport report;
    report.tolerances = cfg_.tolerances;
    auto wanted = [&](const std::string& name) {
      return cfg_.checks.empty() ||
             std::find(cfg_.checks.begin(), cfg_.checks.end(), name) != cfg_.checks.end();
    };
    for (const auto& name : check_names()) {
      if (!wanted(name)) continue;
      if (name == "oracle_triangle") report.checks.push_back(oracle_triangle());
      else if (name == "ordering_undamped") report.checks.push_back(ordering_undamped());
      else if (name == "ordering_damped") report.checks.push_back(ordering_damped());
      else if (name == "equality_boundary") report.checks.push_back(equality_boundary());
      else if (name == "tightness_large_x") report.checks.push_back(tightness_large_x());
      else if (name == "tightness_small_x") report.checks.push_back(tightness_small_x());
      else if (name == "d_constant") report.checks.push_back(d_constant_check());
      else if (name == "corollary_chain") report.checks.push_back(corollary_chain());
      else if (name == "monotonicity") report.checks.push_back(monotonicity());
    }
    report.domain_errors = errors_;
    return report;
  }

private:
  double tol(const std::string& key) const { return cfg_.tolerances.at(key); }

  BoundCoefficients coeffs(double nu, double n) const {
    return hooks_.coefficients ? hooks_.coefficients(nu, n) : coefficients(nu, n);
  }

  std::vector<IntegralSpec> full_grid() const {
    std::vector<IntegralSpec> pts;
    for (double g : cfg_.gamma_values)
      for (double nu : cfg_.nu_values)
        for (double n : cfg_.n_values)
          for (double x : cfg_.x_values) pts.push_back({g, nu, n, x});
    return pts;
  }

  std::vector<IntegralSpec> undamped_grid() const {
    std::vector<IntegralSpec> pts;
    for (double nu : cfg_.nu_values)
      for (double n : cfg_.n_values)
        for (double x : cfg_.x_values) pts.push_back({0.0, nu, n, x});
    return pts;
  }

  template <class Fn>
  CheckResult sweep(const std::string& name, const std::vector<IntegralSpec>& pts, Fn&& eval) {
    auto outcomes = parallel_map<PointOutcome>(pts.size(), [&](std::size_t i) {
      PointOutcome o;
      const std::string where = point(pts[i]);
      try {
        validate(pts[i]);
      } catch (const DomainError& e) {
        o.skipped.push_back({where, e.what()});
        return o;
      }
      try {
        eval(pts[i], o);
      } catch (const std::exception& e) {
        o.skipped.push_back({where, std::string("error: ") + e.what()});
        o.error = true;
      }
      return o;
    });
    Tracker t(name);
    for (const auto& o : outcomes) {
      for (const auto& [m, w] : o.margins) t.record(m, w);
      for (const auto& s : o.skipped) t.skip(s.params, s.reason);
      if (o.error) ++errors_;
    }
    return t.take();
  }

  CheckResult oracle_triangle() {
    const double tol_oracle = tol("oracle_rel");
    const double tol_closed = tol("closed_form_rel");
    return sweep("oracle_triangle", full_grid(), [&](const IntegralSpec& s, PointOutcome& o) {
      const double q = integral_quadrature(s).value;
      const std::string where = point(s);
      if (s.gamma > 0.0) {
        const double series = integral_series_oracle(s).value;
        o.margins.push_back({tol_oracle - rel_diff(q, series), where + " quadrature~series"});
        return;
      }
      const double power = integral_power_series(s.nu, s.n, s.x).value;
      o.margins.push_back({tol_oracle - rel_diff(q, power), where + " quadrature~power_series"});
      if (s.n == 0.0) {
        const double closed = integral_closed_form(s.nu, s.x);
        o.margins.push_back({tol_closed - rel_diff(q, closed), where + " quadrature~closed_form"});
        o.margins.push_back({tol_closed - rel_diff(power, closed), where + " power_series~closed_form"});
      }
    });
  }

  CheckResult ordering_undamped() {
    const double slack = tol("ordering_slack");
    return sweep("ordering_undamped", undamped_grid(), [&](const IntegralSpec& s, PointOutcome& o) {
      const double integral = integral_undamped(s.nu, s.n, s.x);
      const std::string where = point(s);
      if (s.n == 0.0)
        o.margins.push_back({(integral - lower_bi1(s.nu, s.x)) / integral + slack, where + " bi1<I"});
      const double edge = -(s.n + 1.0) / 2.0;
      if (s.nu < edge) {
        o.skipped.push_back({where, "bi2/bi3: requires nu >= -(n+1)/2"});
        return;
      }
      if (s.nu == edge) {
        o.skipped.push_back({where, "bi2/bi3: equality order, see equality_boundary"});
        return;
      }
      const BoundCoefficients k = coeffs(s.nu, s.n);
      o.margins.push_back({(integral - lower_bi2(s.nu, s.n, s.x, k)) / integral + slack, where + " bi2<I"});
      o.margins.push_back({(upper_bi3(s.nu, s.n, s.x, k) - integral) / integral + slack, where + " I<bi3"});
    });
  }

  const std::optional<DConstant>& d_for(double nu, double n) {
    for (const auto& [key, d] : d_cache_)
      if (key.first == nu && key.second == n) return d;
    std::optional<DConstant> d;
    if (n > -1.0 && nu > -(n + 1.0) / 2.0) d = d_constant(nu, n);
    d_cache_.push_back({{nu, n}, d});
    return d_cache_.back().second;
  }

  CheckResult ordering_damped() {
    const double slack = tol("ordering_slack");
    std::vector<IntegralSpec> pts;
    for (const auto& s : full_grid())
      if (s.gamma != 0.0) pts.push_back(s);
    // D constants are computed up front; the sweep only reads them.
    for (const auto& s : pts) {
      try {
        d_for(s.nu, s.n);
      } catch (const std::exception&) {
        d_cache_.push_back({{s.nu, s.n}, std::nullopt});
      }
    }
    return sweep("ordering_damped", pts, [&](const IntegralSpec& s, PointOutcome& o) {
      const double integral = integral_quadrature(s).value;
      const std::string where = point(s);
      if (s.n == 0.0) {
        const double b4 = lower_bi4(s.gamma, s.nu, s.x);
        const double b5 = lower_bi5(s.gamma, s.nu, s.x);
        o.margins.push_back({(integral - b4) / integral + slack, where + " bi4<I"});
        o.margins.push_back({(b4 - b5) / integral + slack, where + " bi5<=bi4"});
      } else {
        o.skipped.push_back({where, "bi4/bi5: requires n = 0"});
      }
      const std::optional<DConstant> d = cached_d(s.nu, s.n);
      if (!d) {
        o.skipped.push_back({where, "bi7/bi8: requires nu > -(n+1)/2"});
        return;
      }
      if (!(s.gamma * d->value < 1.0)) {
        o.skipped.push_back({where, "bi7/bi8: gamma >= 1/D"});
        return;
      }
      const double b7 = upper_bi7(s.gamma, s.nu, s.n, s.x, *d);
      const double b8 = upper_bi8(s.gamma, s.nu, s.n, s.x, *d, coeffs(s.nu, s.n));
      o.margins.push_back({(b7 - integral) / integral + slack, where + " I<bi7"});
      o.margins.push_back({(b8 - b7) / integral + slack, where + " bi7<=bi8"});
    });
  }

  std::optional<DConstant> cached_d(double nu, double n) const {
    for (const auto& [key, d] : d_cache_)
      if (key.first == nu && key.second == n) return d;
    return std::nullopt;
  }

  CheckResult equality_boundary() {
    const double rtol = tol("equality_rel");
    std::vector<IntegralSpec> pts;
    for (double n : cfg_.boundary_n_values)
      for (double x : cfg_.boundary_x_values) pts.push_back({0.0, -(n + 1.0) / 2.0, n, x});
    return sweep("equality_boundary", pts, [&](const IntegralSpec& s, PointOutcome& o) {
      const BoundCoefficients k = coeffs(s.nu, s.n);
      const double integral = integral_undamped(s.nu, s.n, s.x);
      const double b2 = lower_bi2(s.nu, s.n, s.x, k);
      const double b3 = upper_bi3(s.nu, s.n, s.x, k);
      const std::string where = point(s);
      o.margins.push_back({rtol - rel_diff(b2, b3), where + " bi2=bi3"});
      o.margins.push_back({rtol - rel_diff(b2, integral), where + " bi2=I"});
    });
  }

  CheckResult tightness_large_x() {
    const double width = tol("tightness_large_x");
    std::vector<IntegralSpec> pts;
    for (double g : {0.0, 0.5})
      for (double nu : {0.0, 1.0}) pts.push_back({g, nu, 0.0, 300.0});
    return sweep("tightness_large_x", pts, [&](const IntegralSpec& s, PointOutcome& o) {
      const std::string where = point(s);
      // lower bounds: ratio in [1 - width, 1]; upper bound: ratio in [1, 1 + width]
      auto lower = [&](double log_ratio, const char* id) {
        const double r = std::exp(log_ratio);
        o.margins.push_back({std::min(r - (1.0 - width), 1.0 - r), where + " " + id + " ratio=" + format_sig(r, 8)});
      };
      auto upper = [&](double log_ratio, const char* id) {
        const double r = std::exp(log_ratio);
        o.margins.push_back({std::min(r - 1.0, 1.0 + width - r), where + " " + id + " ratio=" + format_sig(r, 8)});
      };
      if (s.gamma == 0.0) {
        const double log_i = log_integral_quadrature(s).log_value;
        const BoundCoefficients k = coeffs(s.nu, s.n);
        lower(std::log(lower_bi1(s.nu, s.x)) - log_i, "bi1");
        lower(std::log(lower_bi2(s.nu, s.n, s.x, k)) - log_i, "bi2");
        upper(std::log(upper_bi3(s.nu, s.n, s.x, k)) - log_i, "bi3");
      } else {
        const double log_i = log_integral_quadrature(s).log_value;
        lower(std::log(lower_bi4(s.gamma, s.nu, s.x)) - log_i, "bi4");
        lower(std::log(lower_bi5(s.gamma, s.nu, s.x)) - log_i, "bi5");
      }
    });
  }

  CheckResult tightness_small_x() {
    const double width = tol("tightness_small_x");
    std::vector<IntegralSpec> pts;
    for (double nu : {0.0, 1.0, 3.0})
      for (double n : {0.0, 1.0}) pts.push_back({0.0, nu, n, 1e-2});
    return sweep("tightness_small_x", pts, [&](const IntegralSpec& s, PointOutcome& o) {
      const double integral = integral_undamped(s.nu, s.n, s.x);
      const double r = upper_bi3(s.nu, s.n, s.x, coeffs(s.nu, s.n)) / integral;
      o.margins.push_back({std::min(r - 1.0, 1.0 + width - r), point(s) + " bi3 ratio=" + format_sig(r, 10)});
    });
  }

  CheckResult d_constant_check() {
    const double slack = tol("d_scan_slack");
    std::vector<IntegralSpec> pts;
    for (double nu : cfg_.nu_values)
      for (double n : cfg_.n_values) pts.push_back({0.0, nu, n, 1.0});
    return sweep("d_constant", pts, [&](const IntegralSpec& s, PointOutcome& o) {
      const std::string where = point({{"nu", s.nu}, {"n", s.n}});
      if (!(s.nu > -(s.n + 1.0) / 2.0)) {
        o.skipped.push_back({where, "requires nu > -(n+1)/2"});
        return;
      }
      const DConstant d = d_constant(s.nu, s.n);
      const double cap = 2.0 * (s.nu + s.n + 1.0);
      o.margins.push_back({(cap - d.value) / cap, where + " D<2(nu+n+1) D=" + format_sig(d.value, 8)});
      if (s.nu >= 0.0 && s.n == 0.0)
        o.margins.push_back({d.value - 1.0, where + " D>1 D=" + format_sig(d.value, 8)});
      constexpr int kScan = 400;
      const double step = std::log(500.0 / 1e-3) / (kScan - 1);
      double worst = -std::numeric_limits<double>::infinity();
      double worst_x = 0.0;
      for (int i = 0; i < kScan; ++i) {
        const double x = 1e-3 * std::exp(step * i);
        const double r = ratio_fn(s.nu, s.n, x);
        if (r > worst) {
          worst = r;
          worst_x = x;
        }
      }
      o.margins.push_back({d.value + slack - worst, where + " ratio<=D at x=" + format_sig(worst_x, 8)});
    });
  }

  CheckResult corollary_chain() {
    std::vector<IntegralSpec> pts;
    for (double nu : kTableNu)
      for (double x : kTableX) pts.push_back({0.0, nu, 0.0, x});
    return sweep("corollary_chain", pts, [&](const IntegralSpec& s, PointOutcome& o) {
      const double f = corollary_middle(s.nu, s.x);
      const CorollaryBounds b = corollary_bounds(s.nu, s.x);
      const std::string where = point({{"nu", s.nu}, {"x", s.x}});
      o.margins.push_back({(f - b.lower) / f, where + " lower<F"});
      o.margins.push_back({(b.upper - f) / f, where + " F<upper"});
    });
  }

  CheckResult monotonicity() {
    std::vector<IntegralSpec> pts;
    for (double nu : {0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0})
      for (double x : {1e-3, 0.1, 0.5, 1.0, 5.0, 20.0, 100.0, 400.0}) pts.push_back({0.0, nu, 0.0, x});
    return sweep("monotonicity", pts, [&](const IntegralSpec& s, PointOutcome& o) {
      // both sides carry the same e^{-x}, so the scaled values compare directly
      const SeriesEval lo = struve_l_scaled(s.nu, s.x);
      const SeriesEval hi = struve_l_scaled(s.nu - 1.0, s.x);
      const double gap = hi.value - lo.value;
      const double resolution = lo.abs_error_estimate + hi.abs_error_estimate;
      const std::string where = point({{"nu", s.nu}, {"x", s.x}});
      if (std::abs(gap) <= resolution) {
        // at nu = 1/2 the gap is about 2e^{-x} relative
        o.skipped.push_back({where, "L_nu and L_{nu-1} differ by less than their error estimate"});
        return;
      }
      o.margins.push_back({gap / hi.value, where + " L_nu<L_{nu-1}"});
    });
  }

  const GridConfig& cfg_;
  const VerifyHooks& hooks_;
  std::vector<std::pair<std::pair<double, double>, std::optional<DConstant>>> d_cache_;
  int errors_ = 0;
};

std::vector<double> read_list(const json& j, const char* key) {
  if (!j.is_array()) throw DomainError(std::string("config: '") + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw DomainError(std::string("config: '") + key + "' must hold numbers only");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::map<std::string, double> GridConfig::default_tolerances() {
  return {{"oracle_rel", 1e-9},       {"closed_form_rel", 1e-10},  {"ordering_slack", 1e-12},
          {"equality_rel", 1e-10},    {"tightness_large_x", 0.01}, {"tightness_small_x", 1e-3},
          {"d_scan_slack", 5e-4}};
}

GridConfig GridConfig::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("config: top level must be an object");
  GridConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "nu_values") c.nu_values = read_list(value, "nu_values");
    else if (key == "n_values") c.n_values = read_list(value, "n_values");
    else if (key == "gamma_values") c.gamma_values = read_list(value, "gamma_values");
    else if (key == "x_values") c.x_values = read_list(value, "x_values");
    else if (key == "boundary_n_values") c.boundary_n_values = read_list(value, "boundary_n_values");
    else if (key == "boundary_x_values") c.boundary_x_values = read_list(value, "boundary_x_values");
    else if (key == "checks") {
      if (!value.is_array()) throw DomainError("config: 'checks' must be an array of names");
      c.checks.clear();
      for (const auto& v : value) {
        if (!v.is_string()) throw DomainError("config: 'checks' must hold strings");
        const auto name = v.get<std::string>();
        const auto& all = check_names();
        if (std::find(all.begin(), all.end(), name) == all.end())
          throw DomainError("config: unknown check '" + name + "'");
        c.checks.push_back(name);
      }
    } else if (key == "tolerances") {
      if (!value.is_object()) throw DomainError("config: 'tolerances' must be an object");
      for (const auto& [tk, tv] : value.items()) {
        if (!c.tolerances.contains(tk)) throw DomainError("config: unknown tolerance '" + tk + "'");
        if (!tv.is_number()) throw DomainError("config: tolerance '" + tk + "' must be a number");
        c.tolerances[tk] = tv.get<double>();
      }
    } else {
      throw DomainError("config: unknown key '" + key + "'");
    }
  }
  return c;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "oracle_triangle",   "ordering_undamped", "ordering_damped", "equality_boundary",
      "tightness_large_x", "tightness_small_x", "d_constant",      "corollary_chain",
      "monotonicity"};
  return names;
}

bool VerificationReport::passed() const { return failures() == 0 && domain_errors == 0; }

int VerificationReport::failures() const {
  int f = 0;
  for (const auto& c : checks) f += c.failures;
  return f;
}

VerificationReport run_verification(const GridConfig& config, const VerifyHooks& hooks) {
  return Verifier(config, hooks).run();
}

std::string to_json(const VerificationReport& report) {
  json j;
  j["kind"] = "verification";
  j["passed"] = report.passed();
  j["failures"] = report.failures();
  j["domain_errors"] = report.domain_errors;
  json checks = json::array();
  for (const auto& c : report.checks) {
    json jc;
    jc["name"] = c.name;
    jc["passed"] = c.passed;
    jc["evaluated"] = c.evaluated;
    jc["failures"] = c.failures;
    jc["worst_margin"] = c.worst_margin;
    jc["witness"] = c.witness;
    json skipped = json::array();
    for (const auto& s : c.skipped) skipped.push_back({{"params", s.params}, {"reason", s.reason}});
    jc["skipped"] = skipped;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  json tol = json::object();
  for (const auto& [k, v] : report.tolerances) tol[k] = v;
  j["meta"]["tolerances"] = tol;
  return j.dump(2) + "\n";
}

std::string to_csv(const VerificationReport& report) {
  std::ostringstream os;
  os << "check,passed,evaluated,failures,worst_margin,witness,skipped\n";
  for (const auto& c : report.checks) {
    os << csv_field(c.name) << ',' << (c.passed ? "true" : "false") << ',' << c.evaluated << ','
       << c.failures << ',' << format_sig(c.worst_margin) << ',' << csv_field(c.witness) << ','
       << c.skipped.size() << '\n';
  }
  return os.str();
}

}  // namespace struve
