#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<const char*> args) {
  args.insert(args.begin(), "struve-verify");
  std::ostringstream out, err;
  const int code = struve::cli::run(static_cast<int>(args.size()), args.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("struve_cli_test_" + name);
}

}  // namespace

TEST_CASE("eval struve-l") {
  const Run r = run({"eval", "struve-l", "--nu", "0", "--x", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "name,value,error_estimate,note\nstruve-l,0.710243,5.23057e-16,\n");
  CHECK(run({"eval", "struve-l", "--nu", "0", "--x", "0"}).out.find("struve-l,0,0,") != std::string::npos);
}

TEST_CASE("eval integral as JSON") {
  const Run r = run({"eval", "integral", "--gamma", "0", "--nu", "0", "--n", "0", "--x", "1", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "eval");
  CHECK(j["results"][0]["value"].get<double>() == doctest::Approx(0.33647262864403835965).epsilon(1e-14));
}

TEST_CASE("eval bounds reports skips") {
  const Run r = run({"eval", "bounds", "--gamma", "0.95", "--nu", "0", "--n", "0", "--x", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("bi7,,,skipped: gamma >= 1/D") != std::string::npos);
  CHECK(r.out.find("bi4,") != std::string::npos);
}

TEST_CASE("eval other functions") {
  CHECK(run({"eval", "gamma", "--x", "5"}).out.find("gamma,24,") != std::string::npos);
  CHECK(run({"eval", "incgamma", "--s", "2", "--z", "1"}).out.find("incgamma,0.264241,") != std::string::npos);
  CHECK(run({"eval", "corollary", "--nu", "1", "--x", "0.5"}).out.find("F,0.0806901,") != std::string::npos);
  CHECK(run({"eval", "integral-closed", "--nu", "0", "--x", "1"}).code == 0);
  CHECK(run({"eval", "integral-series", "--gamma", "0.5", "--nu", "0", "--x", "1"}).out.find("0.24191") !=
        std::string::npos);
  CHECK(run({"eval", "struve-l-scaled", "--nu", "0", "--x", "1000"}).out.find("0.0126172") != std::string::npos);
}

TEST_CASE("domain and usage errors") {
  Run r = run({"eval", "struve-l", "--nu", "-2", "--x", "1"});
  CHECK(r.code == struve::cli::kExitFailure);
  CHECK(r.err.find("nu > -3/2") != std::string::npos);
  r = run({"eval", "integral", "--gamma", "1.5", "--nu", "0", "--x", "1"});
  CHECK(r.code == struve::cli::kExitFailure);
  CHECK(r.err.find("gamma < 1") != std::string::npos);
  CHECK(run({"eval", "struve-l", "--x", "1"}).code == struve::cli::kExitUsage);
  CHECK(run({"eval", "nope", "--x", "1"}).code == struve::cli::kExitUsage);
  CHECK(run({"eval", "struve-l", "-x", "1"}).code == struve::cli::kExitUsage);
  CHECK(run({"eval", "struve-l", "--nu", "0", "--x", "1", "--format", "xml"}).code == struve::cli::kExitUsage);
  CHECK(run({}).code == struve::cli::kExitUsage);
  CHECK(run({"dconst", "--nu", "-1", "--n", "0"}).code == struve::cli::kExitFailure);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("dconst") {
  struct Case {
    const char* nu;
    double reference;
  };
  for (const Case& c : {Case{"0", 1.109}, Case{"1", 1.331}, Case{"3", 1.693}}) {
    const Run r = run({"dconst", "--nu", c.nu, "--n", "0"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["kind"] == "dconstant");
    CHECK(std::abs(j["value"].get<double>() - c.reference) <= 1e-3);
    CHECK(j["upper_bound"].get<double>() == 2.0 * (std::stod(c.nu) + 1.0));
  }
  CHECK(run({"dconst", "--nu", "0", "--format", "csv"}).out == "nu,n,D,argmax_x,upper_bound\n0,0,1.1083,5.2044,2\n");
}

TEST_CASE("table to file, deterministic") {
  const auto a = temp_path("t1a.csv"), b = temp_path("t1b.csv");
  CHECK(run({"table", "--kind", "table1", "--out", a.c_str()}).code == 0);
  CHECK(run({"table", "--kind", "table1", "--out", b.c_str()}).code == 0);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.rfind("nu,0.5,5,10,25,50,100,250\n", 0) == 0);
  CHECK(text.find("\n5,") != std::string::npos);
  std::filesystem::remove(a);
  std::filesystem::remove(b);

  const Run j = run({"table", "--kind", "dconstants", "--format", "json"});
  CHECK(nlohmann::json::parse(j.out)["kind"] == "dconstants");
  CHECK(run({"table", "--kind", "table9"}).code == struve::cli::kExitUsage);
  CHECK(run({"table", "--kind", "table1", "--out", "/nonexistent/dir/t.csv"}).code == struve::cli::kExitFailure);
}

TEST_CASE("verify with a config") {
  const auto cfg = temp_path("cfg.json");
  {
    std::ofstream f(cfg);
    f << R"({"nu_values": [0], "n_values": [0], "gamma_values": [0.95], "checks": ["ordering_damped"]})";
  }
  const Run r = run({"verify", "--config", cfg.c_str(), "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["checks"][0]["skipped"][0]["reason"].get<std::string>().find("gamma >= 1/D") != std::string::npos);

  {
    std::ofstream f(cfg);
    f << R"({"checks": ["ordering_undamped"], "nu_values": [0, 1])";
  }
  const Run bad = run({"verify", "--config", cfg.c_str()});
  CHECK(bad.code == struve::cli::kExitFailure);
  CHECK(bad.err.find("config") != std::string::npos);
  std::filesystem::remove(cfg);
  CHECK(run({"verify", "--config", "/nonexistent.json"}).code == struve::cli::kExitUsage);
}

TEST_CASE("verify exit code follows the checks") {
  const auto cfg = temp_path("cfg2.json");
  {
    std::ofstream f(cfg);
    f << R"({"checks": ["tightness_small_x"], "tolerances": {"tightness_small_x": 1e-9}})";
  }
  const Run r = run({"verify", "--config", cfg.c_str()});
  CHECK(r.code == struve::cli::kExitFailure);
  CHECK(r.out.find("tightness_small_x,false") != std::string::npos);
  std::filesystem::remove(cfg);
}
