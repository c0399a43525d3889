#include "cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "struve/bounds.hpp"
#include "struve/errors.hpp"
#include "struve/specfun.hpp"
#include "struve/tables.hpp"
#include "struve/verify.hpp"

namespace struve::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { csv, json };

struct Params {
  std::optional<double> nu, n, gamma, x, s, z;
};

struct Row {
  std::string name;
  double value = 0.0;
  std::optional<double> error;
  std::string note;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

double need(const std::optional<double>& v, const char* flag, const std::string& fn) {
  if (!v) throw UsageError("eval " + fn + ": missing --" + std::string(flag));
  return *v;
}

const std::vector<std::string> kFunctions = {"struve-l", "struve-l-scaled", "integral",
                                             "integral-closed", "integral-series", "bounds",
                                             "corollary", "gamma", "incgamma"};

std::vector<Row> evaluate(const std::string& fn, const Params& p) {
  if (fn == "struve-l" || fn == "struve-l-scaled") {
    const double nu = need(p.nu, "nu", fn), x = need(p.x, "x", fn);
    const SeriesEval r = fn == "struve-l" ? struve_l(nu, x) : struve_l_scaled(nu, x);
    return {{fn, r.value, r.abs_error_estimate, r.converged ? "" : "not converged"}};
  }
  if (fn == "integral") {
    const IntegralSpec s{p.gamma.value_or(0.0), need(p.nu, "nu", fn), p.n.value_or(0.0), need(p.x, "x", fn)};
    validate(s);
    if (s.gamma == 0.0) {
      if (s.n == 0.0) return {{fn, integral_closed_form(s.nu, s.x), std::nullopt, "closed form"}};
      const SeriesEval r = integral_power_series(s.nu, s.n, s.x);
      return {{fn, r.value, r.abs_error_estimate, "power series"}};
    }
    const QuadratureResult q = integral_quadrature(s);
    return {{fn, q.value, q.abs_error_estimate, "quadrature"}};
  }
  if (fn == "integral-closed") {
    return {{fn, integral_closed_form(need(p.nu, "nu", fn), need(p.x, "x", fn)), std::nullopt, ""}};
  }
  if (fn == "integral-series") {
    const IntegralSpec s{p.gamma.value_or(0.0), need(p.nu, "nu", fn), p.n.value_or(0.0), need(p.x, "x", fn)};
    validate(s);
    const SeriesEval r = s.gamma == 0.0 ? integral_power_series(s.nu, s.n, s.x) : integral_series_oracle(s);
    return {{fn, r.value, r.abs_error_estimate, r.converged ? "" : "not converged"}};
  }
  if (fn == "bounds") {
    const IntegralSpec s{p.gamma.value_or(0.0), need(p.nu, "nu", fn), p.n.value_or(0.0), need(p.x, "x", fn)};
    validate(s);
    std::optional<DConstant> d;
    if (s.gamma > 0.0 && s.nu > -(s.n + 1.0) / 2.0) d = d_constant(s.nu, s.n);
    const BoundReport rep = bound_report(s, d);
    std::vector<Row> rows{{"integral", rep.integral, std::nullopt, ""}};
    if (d) rows.push_back({"D", d->value, std::nullopt, ""});
    for (BoundId id : kAllBounds) {
      const std::string name(to_string(id));
      if (auto it = rep.bounds.find(id); it != rep.bounds.end()) {
        rows.push_back({name, it->second, std::nullopt,
                        std::string(is_lower(id) ? "lower" : "upper") +
                            " rel_error=" + format_sig(rep.rel_errors.at(id))});
      } else {
        rows.push_back({name, std::numeric_limits<double>::quiet_NaN(), std::nullopt,
                        "skipped: " + rep.skipped.at(id)});
      }
    }
    return rows;
  }
  if (fn == "corollary") {
    const double nu = need(p.nu, "nu", fn), x = need(p.x, "x", fn);
    const double f = corollary_middle(nu, x);
    const CorollaryBounds b = corollary_bounds(nu, x);
    return {{"lower", b.lower, std::nullopt, "rel_error=" + format_sig((f - b.lower) / f)},
            {"F", f, std::nullopt, ""},
            {"upper", b.upper, std::nullopt, "rel_error=" + format_sig((b.upper - f) / f)}};
  }
  if (fn == "gamma") return {{fn, gamma_fn(need(p.x, "x", fn)), std::nullopt, ""}};
  if (fn == "incgamma") {
    return {{fn, lower_incomplete_gamma(need(p.s, "s", fn), need(p.z, "z", fn)), std::nullopt, ""}};
  }
  throw UsageError("eval: unknown function '" + fn + "'");
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json params_json(const Params& p) {
  json j = json::object();
  auto put = [&](const char* k, const std::optional<double>& v) {
    if (v) j[k] = *v;
  };
  put("gamma", p.gamma);
  put("nu", p.nu);
  put("n", p.n);
  put("x", p.x);
  put("s", p.s);
  put("z", p.z);
  return j;
}

std::string render_eval(const std::string& fn, const Params& p, const std::vector<Row>& rows, Format f) {
  if (f == Format::json) {
    json j;
    j["kind"] = "eval";
    j["function"] = fn;
    j["params"] = params_json(p);
    json arr = json::array();
    for (const auto& r : rows) {
      json jr;
      jr["name"] = r.name;
      jr["value"] = number_or_null(r.value);
      jr["error_estimate"] = r.error ? json(*r.error) : json(nullptr);
      jr["note"] = r.note;
      arr.push_back(jr);
    }
    j["results"] = arr;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "name,value,error_estimate,note\n";
  for (const auto& r : rows) {
    os << csv_field(r.name) << ',' << (std::isfinite(r.value) ? format_sig(r.value) : "") << ','
       << (r.error ? format_sig(*r.error) : "") << ',' << csv_field(r.note) << '\n';
  }
  return os.str();
}

std::string render_dconst(const DConstant& d, Format f) {
  const double bound = 2.0 * (d.nu + d.n + 1.0);
  if (f == Format::csv) {
    return "nu,n,D,argmax_x,upper_bound\n" + format_sig(d.nu) + ',' + format_sig(d.n) + ',' +
           format_fixed(d.value, 4) + ',' + format_fixed(d.argmax_x, 4) + ',' + format_sig(bound) + '\n';
  }
  json j;
  j["kind"] = "dconstant";
  j["nu"] = d.nu;
  j["n"] = d.n;
  j["value"] = round_to_decimals(d.value, 4);
  j["argmax_x"] = round_to_decimals(d.argmax_x, 4);
  j["upper_bound"] = bound;
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + out_path + "'");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + out_path + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modified Struve function integrals: evaluation, bounds and verification"};
  app.name("struve-verify");
  app.require_subcommand(1);

  Params p;
  std::string format_name;
  std::string out_path;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_path, "Output file (default: stdout)");
  };

  std::string fn;
  auto* eval = app.add_subcommand("eval", "Evaluate a function or the bounds at one point");
  eval->add_option("function", fn, "Function name")->required()->check(CLI::IsMember(kFunctions));
  eval->add_option("--nu", p.nu, "Order nu");
  eval->add_option("--n", p.n, "Order shift n");
  eval->add_option("--gamma", p.gamma, "Damping rate gamma");
  eval->add_option("--x", p.x, "Argument / upper limit x");
  eval->add_option("--s", p.s, "Incomplete gamma parameter s");
  eval->add_option("--z", p.z, "Incomplete gamma argument z");
  add_output(eval);

  double d_nu = 0.0, d_n = 0.0;
  auto* dconst = app.add_subcommand("dconst", "Supremum constant D_{nu,n}");
  dconst->add_option("--nu", d_nu, "Order nu")->required();
  dconst->add_option("--n", d_n, "Order shift n");
  add_output(dconst);

  std::string kind;
  auto* table = app.add_subcommand("table", "Relative-error tables and D constants");
  table->add_option("--kind", kind, "table1, table2 or dconstants")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "dconstants"}));
  add_output(table);

  std::string config_path;
  auto* verify = app.add_subcommand("verify", "Run the verification grid");
  verify->add_option("--config", config_path, "JSON grid configuration")->check(CLI::ExistingFile);
  add_output(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  // dconst reports JSON unless --format says otherwise; the rest default to CSV.
  Format format = dconst->parsed() ? Format::json : Format::csv;
  if (!format_name.empty()) format = format_name == "json" ? Format::json : Format::csv;

  try {
    if (eval->parsed()) {
      emit(render_eval(fn, p, evaluate(fn, p), format), out_path, out);
      return kExitOk;
    }
    if (dconst->parsed()) {
      emit(render_dconst(d_constant(d_nu, d_n), format), out_path, out);
      return kExitOk;
    }
    if (table->parsed()) {
      const TableArtifact t = make_table(parse_table_kind(kind));
      emit(format == Format::json ? to_json(t) : to_csv(t), out_path, out);
      return kExitOk;
    }
    const GridConfig cfg = config_path.empty() ? GridConfig{} : GridConfig::from_json(read_file(config_path));
    const VerificationReport rep = run_verification(cfg);
    emit(format == Format::json ? to_json(rep) : to_csv(rep), out_path, out);
    if (!rep.passed()) {
      err << "verify: " << rep.failures() << " failure(s), " << rep.domain_errors << " evaluation error(s)\n";
      return kExitFailure;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace struve::cli
