#include "holderlab/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "holderlab/rng.hpp"

namespace holderlab {

namespace {

using ojson = nlohmann::ordered_json;

ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string cell(double v) { return std::isnan(v) ? "-" : format_double(v); }

std::string direction_note(Direction d) {
  switch (d) {
    case Direction::lower_bound: return "lower bound";
    case Direction::upper_bound: return "upper bound";
    case Direction::exact: return "exact";
  }
  return "";
}

std::string pad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_parameter:
    case ErrorCode::invalid_composition:
      return exit_code::parameter_error;
    case ErrorCode::unknown_name:
      return exit_code::unknown_name;
    default:
      return exit_code::config_error;
  }
}

std::string report_json(const RunReport& report) {
  ojson j;
  j["schema_version"] = kReportSchemaVersion;
  j["name"] = report.name;
  j["timestamp"] = report.timestamp;
  ojson map;
  map["name"] = report.map_name;
  map["params"] = ojson::object();
  for (const auto& [k, v] : report.map_params) map["params"][k] = number_or_null(v);
  j["map"] = std::move(map);
  j["domain"] = report.domain;
  j["seed"] = report.seed;
  j["strict"] = report.strict;
  j["checks"] = ojson::array();
  for (const auto& c : report.checks) {
    ojson row;
    row["kind"] = to_string(c.kind);
    row["label"] = c.label;
    row["claimed"] = number_or_null(c.claimed);
    row["measured"] = number_or_null(c.measured);
    row["verdict"] = to_string(c.verdict);
    row["direction"] = to_string(c.direction);
    row["witness"] = ojson::array();
    for (const auto& w : c.witnesses) {
      row["witness"].push_back({{"label", w.label}, {"point", to_literal(w.point)}});
    }
    row["details"] = ojson::object();
    for (const auto& [k, v] : c.details) row["details"][k] = number_or_null(v);
    row["notes"] = ojson::object();
    for (const auto& [k, v] : c.notes) row["notes"][k] = v;
    if (c.claim_met) row["claim_met"] = *c.claim_met;
    row["runtime_ms"] = c.runtime_ms;
    j["checks"].push_back(std::move(row));
  }
  j["exit_code"] = report_exit_code(report, report.strict);
  return j.dump(2) + "\n";
}

std::string strip_volatile_fields(const std::string& report_json_text) {
  ojson j = ojson::parse(report_json_text);
  j.erase("timestamp");
  if (j.contains("checks")) {
    for (auto& c : j["checks"]) c.erase("runtime_ms");
  }
  return j.dump(2) + "\n";
}

std::string summary_text(const RunReport& report) {
  std::ostringstream os;
  os << "experiment " << report.name << "  map " << report.map_name;
  for (const auto& [k, v] : report.map_params) os << ' ' << k << '=' << format_double(v);
  os << "\ndomain " << report.domain << "  seed " << report.seed
     << (report.strict ? "  strict" : "") << "\n\n";

  const std::size_t wk = 20, wc = 24, wm = 24, wd = 13, wv = 13;
  os << pad("check", wk) << pad("claimed", wc) << pad("measured", wm) << pad("direction", wd)
     << pad("verdict", wv) << "ms\n";
  os << std::string(wk + wc + wm + wd + wv + 8, '-') << '\n';
  for (const auto& c : report.checks) {
    std::ostringstream ms;
    ms << std::fixed << std::setprecision(1) << c.runtime_ms;
    os << pad(to_string(c.kind), wk) << pad(cell(c.claimed), wc) << pad(cell(c.measured), wm)
       << pad(direction_note(c.direction), wd) << pad(to_string(c.verdict), wv) << ms.str()
       << '\n';
    os << "    " << c.label << '\n';
    for (const auto& [k, v] : c.notes) os << "    " << k << ": " << v << '\n';
    if (c.verdict == Verdict::fail) {
      for (const auto& w : c.witnesses) os << "    witness " << w.label << " = " << to_literal(w.point) << '\n';
    }
  }
  std::size_t pass = 0, fail = 0, soft = 0;
  for (const auto& c : report.checks) {
    if (c.verdict == Verdict::pass) ++pass;
    else if (c.verdict == Verdict::fail) ++fail;
    else ++soft;
  }
  os << '\n' << pass << " pass, " << fail << " fail, " << soft << " report-only; exit "
     << report_exit_code(report, report.strict) << '\n';
  os << "lower bound: sup over samples, never above the true constant. "
        "upper bound: best witness found, never below the true infimum.\n";
  return os.str();
}

int report_exit_code(const RunReport& report, bool strict) {
  for (const auto& c : report.checks) {
    if (c.verdict == Verdict::fail) return exit_code::check_failure;
    if (strict && c.verdict == Verdict::report_only && c.claim_met == false) {
      return exit_code::check_failure;
    }
  }
  return exit_code::pass;
}

RunReport run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  ExperimentConfig c = config;
  if (options.breadth) c.breadth = options.breadth;
  if (options.seed) {
    c.seed = *options.seed;
    for (std::size_t i = 0; i < c.checks.size(); ++i) c.checks[i].seed = mix_seed(c.seed, i);
  }
  const MapInstance T = instantiate(c);

  RunReport report;
  report.name = c.name;
  report.map_name = T.name;
  report.map_params = T.params;
  report.domain = T.domain.describe();
  report.seed = c.seed;
  report.strict = c.strict || options.strict;
  report.timestamp = options.timestamp.value_or(now_utc());
  for (auto req : c.checks) {
    req.threads = options.threads;
    report.checks.push_back(run_check(T, req));
  }
  return report;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::parse_error, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::parse_error, "write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

RunResult run_config_file(const std::filesystem::path& config_path, const RunOptions& options,
                          std::ostream& out, std::ostream& err) {
  RunResult result;
  try {
    const ExperimentConfig config = load_config(config_path);
    RunReport report = run_experiment(config, options);
    const std::filesystem::path dir = options.out_dir.value_or(config.output);
    result.report_path = dir / (report.name + ".report.json");
    result.summary_path = dir / (report.name + ".summary.txt");
    const std::string summary = summary_text(report);
    write_file_atomic(result.report_path, report_json(report));
    write_file_atomic(result.summary_path, summary);
    out << summary;
    result.exit_code = report_exit_code(report, report.strict);
    result.report = std::move(report);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    result.exit_code = exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    result.exit_code = exit_code::config_error;
  }
  return result;
}

std::string catalog_listing() {
  std::ostringstream os;
  for (const auto& e : catalog_entries()) {
    os << e.name;
    if (e.combinator) os << "  [combinator]";
    if (e.oracle) os << "  [oracle]";
    os << "\n  anchor: " << e.anchor << "\n  params:";
    if (e.params.empty()) os << " none";
    for (const auto& p : e.params) {
      os << ' ' << p.name << '=' << format_double(p.default_value) << " (" << p.constraint << ')';
    }
    for (const auto& r : e.rules) os << "  rule " << r.name << " (" << r.constraint << ')';
    os << "\n  claims: " << e.claims << '\n';
  }
  return os.str();
}

std::string describe_construction(const std::string& name) {
  const CatalogEntry& e = find_entry(name);
  std::ostringstream os;
  os << e.name << (e.combinator ? " (combinator)" : "") << '\n';
  os << "anchor:  " << e.anchor << '\n';
  os << "formula: " << e.formula << '\n';
  os << "domain:  " << e.domain << '\n';
  os << "claims:  " << e.claims << '\n';
  os << "oracle:  " << (e.oracle ? "closed-form iterates available" : "none") << '\n';
  os << "parameters:\n";
  if (e.params.empty()) os << "  none\n";
  for (const auto& p : e.params) {
    os << "  " << p.name << " = " << format_double(p.default_value) << "  (" << p.constraint
       << ")\n";
  }
  for (const auto& r : e.rules) os << "  rule " << r.name << "  (" << r.constraint << ")\n";

  // Combinators need an inner map, so only base constructions get an
  // instantiated claim profile.
  if (!e.combinator) {
    const MapInstance m = make_map(MapSpec{e.name, {}, {}, nullptr, std::nullopt});
    const ClaimProfile& c = m.claims;
    os << "default instance:\n";
    os << "  domain " << m.domain.describe() << ", norm " << m.norm.name() << '\n';
    os << "  alpha " << format_double(c.alpha) << ", constant " << format_double(c.holder_constant)
       << (c.uniform ? ", uniform" : "") << (c.affine ? ", affine" : "")
       << (c.isometry ? ", isometry" : "") << '\n';
    if (!c.holder_hard) os << "  Hölder claim is reported, not enforced\n";
    if (c.classical_lipschitz) {
      os << "  classical Lipschitz " << format_double(*c.classical_lipschitz) << '\n';
    }
    if (c.lower_lipschitz) os << "  lower Lipschitz " << format_double(*c.lower_lipschitz) << '\n';
    if (c.asymptotic) os << "  asymptotic profile: " << c.asymptotic->description << '\n';
    if (c.displacement) {
      os << "  displacement bound: " << c.displacement->formula << " = "
         << format_double(c.displacement->value) << '\n';
    }
    if (c.orbit_decay) os << "  orbit decay rate " << format_double(*c.orbit_decay) << '\n';
    os << "  fixed points: " << to_string(c.fixed_points.kind);
    if (c.fixed_points.kind == FixedPointKind::singleton) {
      os << ' ' << to_literal(c.fixed_points.point);
    }
    os << '\n';
    if (m.witnesses) os << "  witness family: " << m.witnesses->description << '\n';
    for (const auto& n : c.notes) os << "  note: " << n << '\n';
  }
  os << "open questions:\n";
  if (e.open_questions.empty()) os << "  none\n";
  for (const auto& q : e.open_questions) os << "  - " << q << '\n';
  return os.str();
}

}  // namespace holderlab
