#include "holderlab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "holderlab/error.hpp"
#include "holderlab/rng.hpp"

namespace holderlab {

namespace {

using json = nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::parse_error, where + ": " + what);
}

/// Reads fields of one JSON object and rejects whatever was not read.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j.is_object()) schema_error(where_, "expected an object");
  }

  const std::string& where() const { return where_; }
  std::string at(const std::string& key) const { return where_ + "." + key; }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = get(key);
    if (!v) schema_error(where_, "missing required field '" + key + "'");
    return *v;
  }

  std::optional<double> number(const std::string& key) {
    const json* v = get(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) schema_error(at(key), "expected a number");
    return v->get<double>();
  }

  std::optional<std::int64_t> integer(const std::string& key) {
    const json* v = get(key);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) schema_error(at(key), "expected an integer");
    return v->get<std::int64_t>();
  }

  std::optional<std::uint64_t> seed(const std::string& key) {
    const json* v = get(key);
    if (!v) return std::nullopt;
    if (!v->is_number_unsigned()) schema_error(at(key), "expected a nonnegative integer");
    return v->get<std::uint64_t>();
  }

  std::optional<std::string> string(const std::string& key) {
    const json* v = get(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) schema_error(at(key), "expected a string");
    return v->get<std::string>();
  }

  std::optional<bool> boolean(const std::string& key) {
    const json* v = get(key);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) schema_error(at(key), "expected true or false");
    return v->get<bool>();
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) schema_error(where_, "unknown field '" + it.key() + "'");
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

Index positive_index(std::optional<std::int64_t> v, const std::string& where) {
  if (*v < 1) schema_error(where, "must be >= 1");
  return static_cast<Index>(*v);
}

std::map<std::string, double> number_map(const json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object of numbers");
  std::map<std::string, double> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it->is_number()) schema_error(where + "." + it.key(), "expected a number");
    out[it.key()] = it->get<double>();
  }
  return out;
}

std::map<std::string, std::string> string_map(const json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object of strings");
  std::map<std::string, std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it->is_string()) schema_error(where + "." + it.key(), "expected a string");
    out[it.key()] = it->get<std::string>();
  }
  return out;
}

MapSpec parse_map_spec(const json& j, const std::string& where) {
  ObjectReader r(j, where);
  MapSpec spec;
  const auto name = r.string("name");
  if (!name) schema_error(where, "missing required field 'name'");
  spec.name = *name;
  if (const json* p = r.get("params")) spec.params = number_map(*p, r.at("params"));
  if (const json* p = r.get("rules")) spec.rules = string_map(*p, r.at("rules"));
  if (const json* p = r.get("inner")) {
    spec.inner = std::make_shared<MapSpec>(parse_map_spec(*p, r.at("inner")));
  }
  if (auto b = r.integer("breadth")) spec.breadth = positive_index(b, r.at("breadth"));
  r.finish();
  return spec;
}

DomainSpec parse_domain_json(const json& j, const std::string& where) {
  ObjectReader r(j, where);
  const auto kind_field = r.string("kind");
  if (!kind_field) schema_error(where, "missing required field 'kind'");
  const std::string kind = *kind_field;
  std::map<std::string, json> params;
  if (const json* p = r.get("params")) {
    if (!p->is_object()) schema_error(r.at("params"), "expected an object");
    for (auto it = p->begin(); it != p->end(); ++it) params[it.key()] = *it;
  }
  const double tol = r.number("tol").value_or(DomainSpec::kDefaultTol);
  Index breadth = DomainSpec::kDefaultBreadth;
  if (auto b = r.integer("breadth")) breadth = positive_index(b, r.at("breadth"));
  r.finish();

  const std::string pwhere = where + ".params";
  auto num = [&](const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) schema_error(pwhere, "missing parameter '" + key + "'");
    if (!it->second.is_number()) schema_error(pwhere + "." + key, "expected a number");
    const double v = it->second.get<double>();
    params.erase(it);
    return v;
  };
  auto norm_param = [&]() {
    auto it = params.find("norm");
    if (it == params.end()) schema_error(pwhere, "missing parameter 'norm'");
    if (!it->second.is_string()) schema_error(pwhere + ".norm", "expected a norm name");
    const Norm k = parse_norm(it->second.get<std::string>());
    params.erase(it);
    return k;
  };

  DomainKind k = [&]() -> DomainKind {
    if (kind == "ball") {
      const double rad = num("r");
      return Ball{rad, norm_param()};
    }
    if (kind == "positive_ball") {
      const double rad = num("r");
      return PositiveBall{rad, norm_param()};
    }
    if (kind == "simplex") {
      const double p = num("p");
      return Simplex{p, num("mass")};
    }
    if (kind == "sub_simplex") return SubSimplex{num("mass_cap")};
    if (kind == "coefficient_box") return CoefficientBox{num("r")};
    if (kind == "sigma_band") {
      const double d = num("delta");
      return SigmaBand{d, num("q")};
    }
    if (kind == "c_interval") return CInterval{num("cap")};
    schema_error(where + ".kind", "unknown domain kind '" + kind + "'");
  }();
  if (!params.empty()) schema_error(pwhere, "unknown parameter '" + params.begin()->first + "'");
  return DomainSpec(std::move(k), tol, breadth);
}

CheckRequest parse_check(const json& j, const std::string& where) {
  ObjectReader r(j, where);
  CheckRequest req;
  const auto kind = r.string("kind");
  if (!kind) schema_error(where, "missing required field 'kind'");
  req.kind = parse_check_kind(*kind);
  if (auto v = r.integer("samples")) req.samples = positive_index(v, r.at("samples"));
  if (auto v = r.integer("pairs")) req.pairs = positive_index(v, r.at("pairs"));
  if (auto v = r.integer("iterate")) req.iterate = positive_index(v, r.at("iterate"));
  if (const json* v = r.get("n_list")) {
    if (!v->is_array() || v->empty()) schema_error(r.at("n_list"), "expected a nonempty array");
    req.n_list.clear();
    for (const auto& n : *v) {
      if (!n.is_number_integer()) schema_error(r.at("n_list"), "expected integers");
      req.n_list.push_back(positive_index(n.get<std::int64_t>(), r.at("n_list")));
    }
  }
  if (auto v = r.integer("n_max")) req.n_max = positive_index(v, r.at("n_max"));
  if (auto v = r.seed("seed")) req.seed = *v;
  if (auto v = r.number("tolerance")) {
    if (!(*v >= 0.0)) schema_error(r.at("tolerance"), "must be >= 0");
    req.tolerance = *v;
  }
  if (auto v = r.string("strategy")) req.strategy = parse_strategy(*v);
  if (auto v = r.integer("budget")) req.budget = positive_index(v, r.at("budget"));
  if (auto v = r.number("target")) req.target = *v;
  if (auto v = r.number("delta")) req.delta = *v;
  if (auto v = r.string("x0")) req.x0 = parse_literal(*v);
  if (auto v = r.number("exponent")) req.exponent = *v;
  r.finish();
  return req;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  const json j = parse_json(json_text);
  ObjectReader r(j, "config");
  const auto version = r.integer("schema_version");
  if (!version) schema_error("config", "missing required field 'schema_version'");
  if (*version != kConfigSchemaVersion) {
    schema_error(r.at("schema_version"), "unsupported version " + std::to_string(*version));
  }

  ExperimentConfig c;
  c.name = r.string("name").value_or("");
  if (c.name.empty()) schema_error("config", "name must be a nonempty string");
  if (c.name.find_first_of("/\\") != std::string::npos || c.name == "." || c.name == "..") {
    schema_error(r.at("name"), "must be usable as a file name");
  }
  c.map = parse_map_spec(r.require("map"), r.at("map"));
  if (const json* d = r.get("domain")) c.domain = parse_domain_json(*d, r.at("domain"));
  const auto seed = r.seed("seed");
  if (!seed) schema_error("config", "missing required field 'seed'");
  c.seed = *seed;
  if (auto t = r.number("tolerance")) {
    if (!(*t >= 0.0)) schema_error(r.at("tolerance"), "must be >= 0");
    c.tolerance = *t;
  }
  c.output = r.string("output").value_or(".");
  c.strict = r.boolean("strict").value_or(false);
  if (auto b = r.integer("breadth")) c.breadth = positive_index(b, r.at("breadth"));

  const json& checks = r.require("checks");
  if (!checks.is_array() || checks.empty()) schema_error(r.at("checks"), "needs at least one check");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string where = r.at("checks") + "[" + std::to_string(i) + "]";
    CheckRequest req = parse_check(checks[i], where);
    if (!checks[i].contains("seed")) req.seed = mix_seed(c.seed, i);
    c.checks.push_back(std::move(req));
  }
  r.finish();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse_error, "cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

DomainSpec parse_domain(std::string_view json_text) {
  return parse_domain_json(parse_json(json_text), "domain");
}

MapInstance instantiate(const ExperimentConfig& config) {
  MapSpec spec = config.map;
  if (config.breadth) spec.breadth = config.breadth;
  MapInstance m = make_map(spec);
  if (config.domain) {
    m.domain = config.breadth ? config.domain->with_breadth(*config.breadth) : *config.domain;
  }
  if (config.tolerance) m.domain = m.domain.with_tol(*config.tolerance);
  return m;
}

}  // namespace holderlab
