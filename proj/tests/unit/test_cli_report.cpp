#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "holderlab/config.hpp"
#include "holderlab/error.hpp"
#include "holderlab/report.hpp"

using namespace holderlab;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::parse_error;
}

const char* kBase = R"({
  "schema_version": 1,
  "name": "unit",
  "map": {"name": "shift_simplex", "params": {"p": 1, "alpha": 0.5, "lambda": 0.5}},
  "seed": 12,
  "checks": [
    {"kind": "holder_ratio", "pairs": 500},
    {"kind": "displacement", "strategy": "cesaro_affine", "budget": 100}
  ]
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

std::filesystem::path temp_dir(const std::string& leaf) {
  auto p = std::filesystem::temp_directory_path() / ("holderlab_unit_" + leaf);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config(kBase);
  CHECK(c.name == "unit");
  CHECK(c.map.name == "shift_simplex");
  CHECK(c.map.params.at("lambda") == 0.5);
  REQUIRE(c.checks.size() == 2);
  CHECK(c.checks[0].pairs == 500);
  CHECK(c.checks[1].strategy == DisplacementStrategy::cesaro_affine);
  CHECK(c.checks[0].seed != c.checks[1].seed);
}

TEST_CASE("config schema violations") {
  const std::string base = kBase;
  CHECK(code_of([] { parse_config("{ not json"); }) == ErrorCode::parse_error);
  CHECK(code_of([&] { parse_config(replace(base, "\"seed\": 12,", "")); }) ==
        ErrorCode::parse_error);
  CHECK(code_of([&] { parse_config(replace(base, "\"seed\": 12,", "\"seed\": 12, \"sede\": 1,")); }) ==
        ErrorCode::parse_error);
  CHECK(code_of([&] { parse_config(replace(base, "\"pairs\": 500", "\"pairs\": 0")); }) ==
        ErrorCode::parse_error);
  CHECK(code_of([&] { parse_config(replace(base, "\"pairs\": 500", "\"pairz\": 5")); }) ==
        ErrorCode::parse_error);
  CHECK(code_of([&] { parse_config(replace(base, "\"schema_version\": 1", "\"schema_version\": 9")); }) ==
        ErrorCode::parse_error);
  CHECK(code_of([&] { parse_config(replace(base, "\"name\": \"unit\"", "\"name\": \"\"")); }) ==
        ErrorCode::parse_error);
  CHECK(code_of([&] { parse_config(replace(base, "holder_ratio", "holder")); }) ==
        ErrorCode::invalid_check);
  CHECK(code_of([&] { parse_config(replace(base, "cesaro_affine", "annealing")); }) ==
        ErrorCode::invalid_strategy);
}

TEST_CASE("domain grammar") {
  const auto K = parse_domain(R"({"kind": "ball", "params": {"r": 0.5, "norm": "l2"}, "tol": 1e-10, "breadth": 8})");
  CHECK(K.tol() == 1e-10);
  CHECK(K.breadth() == 8);
  CHECK(std::get<Ball>(K.kind()).r == 0.5);
  CHECK(code_of([] { parse_domain(R"({"kind": "ball", "params": {"r": 0.5}})"); }) ==
        ErrorCode::parse_error);
  CHECK(code_of([] { parse_domain(R"({"kind": "c_interval", "params": {"cap": 0.5, "x": 1}})"); }) ==
        ErrorCode::parse_error);
  CHECK(code_of([] { parse_domain(R"({"kind": "sigma_band", "params": {"delta": 0.5, "q": 0.9}})"); }) ==
        ErrorCode::invalid_parameter);
}

TEST_CASE("exit code mapping") {
  CHECK(exit_code_for(ErrorCode::parse_error) == 2);
  CHECK(exit_code_for(ErrorCode::invalid_check) == 2);
  CHECK(exit_code_for(ErrorCode::invalid_strategy) == 2);
  CHECK(exit_code_for(ErrorCode::invalid_parameter) == 3);
  CHECK(exit_code_for(ErrorCode::unknown_name) == 4);
}

TEST_CASE("report content and determinism") {
  const auto c = parse_config(kBase);
  RunOptions opts;
  opts.timestamp = "fixed";
  const auto a = run_experiment(c, opts);
  opts.threads = 3;
  const auto b = run_experiment(c, opts);
  const std::string ja = report_json(a), jb = report_json(b);
  CHECK(strip_volatile_fields(ja) == strip_volatile_fields(jb));
  CHECK(ja.find("\"schema_version\": 1") != std::string::npos);
  CHECK(ja.find("\"runtime_ms\"") != std::string::npos);
  CHECK(strip_volatile_fields(ja).find("runtime_ms") == std::string::npos);
  CHECK(report_exit_code(a, false) == 0);

  const std::string summary = summary_text(a);
  CHECK(summary.find("lower bound") != std::string::npos);
  CHECK(summary.find("upper bound") != std::string::npos);
  CHECK(summary.find("claimed") != std::string::npos);

  RunOptions reseed;
  reseed.seed = 99;
  const auto d = run_experiment(c, reseed);
  CHECK(d.seed == 99);
}

TEST_CASE("strict escalates only missed soft claims") {
  RunReport r;
  CheckRecord soft{CheckKind::uniform_profile, "x", 1.0, 0.5, Verdict::report_only,
                   Direction::lower_bound, {}, {}, {}, 0.0, true};
  r.checks.push_back(soft);
  CHECK(report_exit_code(r, true) == 0);
  r.checks[0].claim_met = false;
  CHECK(report_exit_code(r, false) == 0);
  CHECK(report_exit_code(r, true) == 5);
  r.checks[0].verdict = Verdict::fail;
  CHECK(report_exit_code(r, false) == 5);
}

TEST_CASE("run_config_file writes both outputs") {
  const auto dir = temp_dir("run");
  const auto cfg = dir / "c.json";
  std::ofstream(cfg) << kBase;
  std::ostringstream out, err;
  RunOptions opts;
  opts.out_dir = dir / "out";
  const auto res = run_config_file(cfg, opts, out, err);
  CHECK(res.exit_code == 0);
  CHECK(std::filesystem::exists(dir / "out" / "unit.report.json"));
  CHECK(std::filesystem::exists(dir / "out" / "unit.summary.txt"));
  CHECK_FALSE(std::filesystem::exists(dir / "out" / "unit.report.json.tmp"));

  std::ofstream(cfg) << replace(kBase, "\"lambda\": 0.5", "\"lambda\": 1.5");
  CHECK(run_config_file(cfg, opts, out, err).exit_code == 3);
  std::ofstream(cfg) << replace(kBase, "shift_simplex", "shift_simplx");
  CHECK(run_config_file(cfg, opts, out, err).exit_code == 4);
  CHECK(err.str().find("shift_simplex") != std::string::npos);
  CHECK(run_config_file(dir / "missing.json", opts, out, err).exit_code == 2);
}

TEST_CASE("listing and describe") {
  const std::string list = catalog_listing();
  CHECK(list.find("hyperconvex") != std::string::npos);
  CHECK(list.find("norming  [oracle]") != std::string::npos);
  CHECK(list == catalog_listing());
  CHECK(describe_construction("c0_family").find("(1-delta)(1-alpha)/(e alpha)") != std::string::npos);
  CHECK(describe_construction("goebel_kirk").find("kappa_n") != std::string::npos);
  CHECK(code_of([] { describe_construction("nope"); }) == ErrorCode::unknown_name);
  for (const auto& e : catalog_entries()) CHECK_FALSE(describe_construction(e.name).empty());
}
