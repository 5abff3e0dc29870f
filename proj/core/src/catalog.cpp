#include "holderlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "holderlab/error.hpp"
#include "holderlab/retraction.hpp"

namespace holderlab {

namespace {

std::string fmt(double v) { return format_double(v); }

void require(bool ok, const std::string& constraint, const std::string& got) {
  if (!ok) {
    throw Error(ErrorCode::invalid_parameter, "constraint " + constraint + " violated (" + got + ")");
  }
}

void require_open_unit(double v, const std::string& name) {
  require(v > 0.0 && v < 1.0, "0 < " + name + " < 1", name + " = " + fmt(v));
}

double powabs(double v, double a) { return std::pow(std::abs(v), a); }

/// Largest index a construction must evaluate when its output is not
/// eventually constant.
Index evaluation_depth(const SeqVec& x, Index breadth) {
  return std::max<Index>(breadth, x.last_index());
}

}  // namespace

SequenceRule parse_sequence_rule(const std::string& name) {
  if (name == "geometric") {
    return {name, [](Index n) { return std::ldexp(1.0, -static_cast<int>(std::min<Index>(n, 1074))); }};
  }
  if (name == "harmonic") {
    return {name, [](Index n) { return 1.0 / static_cast<double>(n + 1); }};
  }
  if (name == "inverse_square") {
    return {name, [](Index n) {
              const double m = static_cast<double>(n + 1);
              return 1.0 / (m * m);
            }};
  }
  throw Error(ErrorCode::unknown_name,
              "unknown sequence rule '" + name + "' (geometric, harmonic, inverse_square)");
}

std::string to_string(FixedPointKind kind) {
  switch (kind) {
    case FixedPointKind::empty: return "empty";
    case FixedPointKind::singleton: return "singleton";
    case FixedPointKind::unknown: return "unknown";
  }
  return "unknown";
}

SeqVec MapInstance::iterate(const SeqVec& x, Index n) const {
  SeqVec y = x;
  for (Index k = 0; k < n; ++k) y = apply(y);
  return y;
}

double MapInstance::param(const std::string& key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  throw Error(ErrorCode::unknown_name, name + " has no parameter '" + key + "'");
}

MapInstance prus_map(double alpha) {
  require_open_unit(alpha, "alpha");
  MapInstance m{"prus", {{"alpha", alpha}}, {},
                DomainSpec(Ball{1.0, Norm::sup()}), Norm::sup(), nullptr, {}, nullptr, std::nullopt};
  m.apply = [alpha](const SeqVec& x) {
    const double head = std::abs(1.0 - powabs(tail_limit(x), alpha));
    return shift_right(x.transform([alpha](double t) { return powabs(t, alpha); }), head);
  };
  m.claims.alpha = alpha;
  m.claims.holder_constant = 1.0;
  m.claims.fixed_points = FixedPointSet::empty();
  return m;
}

MapInstance norming_map(double alpha) {
  require_open_unit(alpha, "alpha");
  MapInstance m{"norming", {{"alpha", alpha}}, {},
                DomainSpec(Ball{1.0, Norm::lp(2.0)}), Norm::lp(2.0), nullptr, {}, nullptr,
                std::nullopt};
  m.apply = [alpha](const SeqVec& x) {
    const double phi = x.coordinate(1);
    return SeqVec::unit(1, std::pow((1.0 + phi * phi) / 2.0, alpha));
  };
  m.claims.alpha = alpha;
  m.claims.holder_constant = 1.0;
  m.claims.classical_lipschitz = alpha * std::pow(2.0, 1.0 - alpha);
  m.claims.fixed_points = FixedPointSet::singleton(SeqVec::unit(1));
  if (alpha == 0.5) {
    m.oracle = [](const SeqVec& x, Index n) {
      if (n == 0) return x;
      const double phi = x.coordinate(1);
      // sum_{i<=n} 2^-i = 1 - 2^-n
      const double scale = std::ldexp(1.0, -static_cast<int>(std::min<Index>(n, 2000)));
      return SeqVec::unit(1, std::sqrt((1.0 - scale) + phi * phi * scale));
    };
  }
  return m;
}

MapInstance baseline_c_map() {
  MapInstance m{"baseline_c", {}, {}, DomainSpec(Ball{1.0, Norm::sup()}), Norm::sup(),
                nullptr, {}, nullptr, std::nullopt};
  m.apply = [](const SeqVec& x) {
    return shift_right(shift_right(abs_retract(x), 0.0), 1.0);
  };
  m.claims.alpha = 1.0;
  m.claims.holder_constant = 1.0;
  m.claims.classical_lipschitz = 1.0;
  m.claims.fixed_points = FixedPointSet::empty();
  return m;
}

MapInstance shift_simplex_map(double p, double alpha, double lambda) {
  require(p >= 1.0, "p >= 1", "p = " + fmt(p));
  require_open_unit(alpha, "alpha");
  require_open_unit(lambda, "lambda");
  const double mass = std::pow(lambda, p / (1.0 - alpha)) / 2.0;
  MapInstance m{"shift_simplex", {{"p", p}, {"alpha", alpha}, {"lambda", lambda}}, {},
                DomainSpec(Simplex{p, mass}), Norm::lp(p), nullptr, {}, nullptr, std::nullopt};
  m.apply = [](const SeqVec& x) { return shift_right(x); };
  m.claims.alpha = alpha;
  m.claims.holder_constant = lambda;
  m.claims.uniform = true;
  m.claims.classical_lipschitz = 1.0;
  m.claims.affine = true;
  m.claims.isometry = true;
  m.claims.fixed_points = FixedPointSet::empty();
  m.claims.displacement = DisplacementBound{0.0, "0 (affine self-map of a convex set)"};
  m.witnesses = WitnessFamily{
      [mass](Index n) {
        std::vector<double> v(static_cast<std::size_t>(n), mass / static_cast<double>(n));
        return SeqVec::from_dense(v);
      },
      [mass, p](Index n) { return mass / static_cast<double>(n) * std::pow(2.0, 1.0 / p); },
      "x_n = (r/n)(e_1 + ... + e_n), ||x_n - F x_n||_p = 2^(1/p) r/n"};
  return m;
}

MapInstance affine_mixing_map(double L, double lambda, double alpha, const std::string& gamma_rule) {
  require(L > 1.0, "L > 1", "L = " + fmt(L));
  require(lambda > 1.0 / L && lambda <= 1.0, "1/L < lambda <= 1", "lambda = " + fmt(lambda));
  require_open_unit(alpha, "alpha");
  const SequenceRule gamma = parse_sequence_rule(gamma_rule);
  for (Index n = 1; n <= 64; ++n) {
    const double g = gamma.at(n);
    require(g > 0.0 && g < 1.0, "gamma_n in (0,1)", "gamma_" + std::to_string(n) + " = " + fmt(g));
  }
  const double mass = 0.5 * std::pow(lambda / L, 1.0 / (1.0 - alpha));
  MapInstance m{"affine_mixing", {{"L", L}, {"lambda", lambda}, {"alpha", alpha}},
                {{"gamma", gamma_rule}}, DomainSpec(Simplex{1.0, mass}), Norm::lp(1.0),
                nullptr, {}, nullptr, std::nullopt};
  m.apply = [g = gamma.at](const SeqVec& x) {
    if (x.tail() != 0.0) throw Error(ErrorCode::not_in_space, "affine_mixing needs tail 0");
    // Coordinate n of T x is (1 - g_n) t_n + g_(n-1) t_(n-1); only n in the
    // support or one past it can be nonzero.
    std::vector<Index> idx;
    idx.reserve(x.support().size() * 2);
    for (const auto& e : x.support()) {
      if (idx.empty() || idx.back() != e.index) idx.push_back(e.index);
      idx.push_back(e.index + 1);
    }
    std::vector<Entry> out;
    out.reserve(idx.size());
    for (Index n : idx) {
      double v = (1.0 - g(n)) * x.coordinate(n);
      if (n > 1) v += g(n - 1) * x.coordinate(n - 1);
      out.push_back({n, v});
    }
    return SeqVec::from_sorted(std::move(out), 0.0);
  };
  m.claims.alpha = alpha;
  m.claims.holder_constant = lambda;
  m.claims.classical_lipschitz = 1.0;
  m.claims.lower_lipschitz = 1.0 / L;
  m.claims.affine = true;
  m.claims.fixed_points = FixedPointSet::empty();
  m.claims.displacement = DisplacementBound{0.0, "0 (affine self-map of a convex set)"};
  return m;
}

double deficiency_lambda(double alpha) {
  return 0.5 * std::pow(0.5, (2.0 - alpha) / (1.0 - alpha));
}

MapInstance deficiency_map(double p, double alpha) {
  require(p >= 1.0, "p >= 1", "p = " + fmt(p));
  require_open_unit(alpha, "alpha");
  const double lambda = deficiency_lambda(alpha);
  const Norm k = Norm::lp(p);
  MapInstance m{"deficiency", {{"p", p}, {"alpha", alpha}, {"lambda", lambda}}, {},
                DomainSpec(Ball{lambda, k}), k, nullptr, {}, nullptr, std::nullopt};
  m.apply = [lambda, k](const SeqVec& x) {
    if (x.tail() != 0.0) throw Error(ErrorCode::not_in_space, "deficiency needs tail 0");
    std::vector<Entry> out;
    out.reserve(x.support().size() + 1);
    out.push_back({1, lambda - norm(x, k)});
    for (const auto& e : x.support()) {
      if (e.index > std::numeric_limits<Index>::max() / 2) {
        throw Error(ErrorCode::invalid_index, "deficiency image index 2*" +
                                                  std::to_string(e.index) + " overflows");
      }
      out.push_back({2 * e.index, e.value});
    }
    return SeqVec::from_sorted(std::move(out), 0.0);
  };
  m.claims.alpha = alpha;
  m.claims.holder_constant = 1.0;
  m.claims.fixed_points = FixedPointSet::empty();
  m.claims.displacement =
      DisplacementBound{std::pow(0.5, (2.0 - alpha) / (1.0 - alpha)), "(1/2)^((2-alpha)/(1-alpha))"};
  return m;
}

MapInstance goebel_kirk_map(double alpha) {
  require_open_unit(alpha, "alpha");
  MapInstance m{"goebel_kirk", {{"alpha", alpha}}, {}, DomainSpec(Ball{1.0, Norm::lp(2.0)}),
                Norm::lp(2.0), nullptr, {}, nullptr, std::nullopt};
  m.apply = [alpha](const SeqVec& x) {
    if (x.tail() != 0.0) throw Error(ErrorCode::not_in_space, "goebel_kirk needs tail 0");
    // F(t) = (0, t_1^alpha, A_2 t_2, A_3 t_3, ...) applied to the positive part.
    std::vector<Entry> out;
    out.reserve(x.support().size());
    for (const auto& e : x.support()) {
      if (e.value <= 0.0) continue;
      const double i = static_cast<double>(e.index);
      const double v = e.index == 1 ? std::pow(e.value, alpha) : (1.0 - 1.0 / (i * i)) * e.value;
      out.push_back({e.index + 1, v});
    }
    return SeqVec::from_sorted(std::move(out), 0.0);
  };
  m.claims.alpha = alpha;
  m.claims.holder_constant = 2.0;
  m.claims.fixed_points = FixedPointSet::singleton(SeqVec());
  const double c = std::pow(2.0, 1.0 - alpha);
  m.claims.asymptotic = AsymptoticProfile{
      [c](Index n) { return c * static_cast<double>(n + 1) / static_cast<double>(n); },
      "kappa_n 2^(1-alpha), kappa_n = 2 prod_{i=2..n} (1 - 1/i^2) = (n+1)/n"};
  m.claims.notes.push_back("not Lipschitz (t_1 -> t_1^alpha at 0)");
  return m;
}

namespace {

SeqVec hyperconvex_step(const SeqVec& x, double cap, double alpha) {
  const double t1 = x.coordinate(1);
  const double t2 = x.coordinate(2);
  return shift_right(shift_right(x, t2 * powabs(t1, alpha)), cap);
}

}  // namespace

MapInstance hyperconvex_map(double N, double alpha) {
  require_open_unit(alpha, "alpha");
  require(N >= 1.0 && std::floor(N) == N, "N a positive integer", "N = " + fmt(N));
  require(std::pow(N, alpha) >= 2.0, "2 <= N^alpha",
          "N^alpha = " + fmt(std::pow(N, alpha)) + " with N = " + fmt(N) + ", alpha = " + fmt(alpha));
  const double cap = 1.0 / N;
  MapInstance m{"hyperconvex", {{"N", N}, {"alpha", alpha}}, {}, DomainSpec(CInterval{cap}),
                Norm::sup(), nullptr, {}, nullptr, std::nullopt};
  m.apply = [cap, alpha](const SeqVec& x) { return hyperconvex_step(x, cap, alpha); };
  // F^m(x) = (1/N, t_2 (t_1/N^(m-1))^alpha, ..., 1/N, t_2 t_1^alpha, t_1, t_2, ...)
  m.oracle = [cap, N, alpha](const SeqVec& x, Index n) {
    if (n == 0) return x;
    const double t1 = x.coordinate(1);
    const double t2 = x.coordinate(2);
    std::vector<Entry> out;
    out.reserve(static_cast<std::size_t>(2 * n) + x.support().size());
    for (Index j = n - 1; j >= 0; --j) {
      const Index pos = 2 * (n - 1 - j) + 1;
      out.push_back({pos, cap});
      out.push_back({pos + 1, t2 * std::pow(std::abs(t1) / std::pow(N, static_cast<double>(j)), alpha)});
    }
    for (const auto& e : x.support()) out.push_back({e.index + 2 * n, e.value});
    std::vector<Entry> kept;
    kept.reserve(out.size());
    for (const auto& e : out) {
      if (e.value != x.tail()) kept.push_back(e);
    }
    return SeqVec::from_sorted(std::move(kept), x.tail());
  };
  m.claims.alpha = alpha;
  m.claims.holder_constant = 1.0;
  m.claims.uniform = true;
  m.claims.scaling_decay = true;
  m.claims.fixed_points = FixedPointSet::empty();
  m.claims.displacement = DisplacementBound{0.0, "0 (via F_lambda(x) = F(lambda x), lambda -> 1)"};
  return m;
}

MapInstance c0_family_map(double delta, double q, double alpha, Index breadth) {
  require_open_unit(delta, "delta");
  require(q > 0.0 && q < 1.0 - delta, "0 < q < 1 - delta", "q = " + fmt(q));
  require(alpha > 0.0 && alpha <= 1.0, "0 < alpha <= 1", "alpha = " + fmt(alpha));
  const double ceiling = 1.0 - delta;
  MapInstance m{"c0_family", {{"delta", delta}, {"q", q}, {"alpha", alpha}}, {},
                DomainSpec(SigmaBand{delta, q}, DomainSpec::kDefaultTol, breadth), Norm::sup(),
                nullptr, {}, nullptr, std::nullopt};
  m.apply = [ceiling, alpha](const SeqVec& x) {
    if (x.tail() != 0.0) throw Error(ErrorCode::not_in_space, "c0_family needs tail 0");
    return shift_right(x.transform([&](double t) { return ceiling * powabs(t, alpha); }), ceiling);
  };
  m.claims.alpha = alpha;
  m.claims.holder_constant = 1.0;
  if (alpha < 1.0) {
    m.claims.fixed_points = FixedPointSet::empty();
    m.claims.displacement = DisplacementBound{ceiling * (1.0 - alpha) / (std::numbers::e * alpha),
                                              "(1-delta)(1-alpha)/(e alpha)"};
  } else {
    std::vector<double> z;
    for (Index i = 1; i <= breadth; ++i) z.push_back(std::pow(ceiling, static_cast<double>(i)));
    m.claims.fixed_points = FixedPointSet::singleton(
        SeqVec::from_dense(z), std::pow(ceiling, static_cast<double>(breadth + 1)));
    m.claims.displacement = DisplacementBound{0.0, "0 (fixed point sum (1-delta)^i e_i)"};
  }
  return m;
}

MapInstance affine_cube_map(double r, const std::string& beta_rule, double alpha, double lambda,
                            Index breadth) {
  require(r > 0.0, "r > 0", "r = " + fmt(r));
  require_open_unit(alpha, "alpha");
  require(lambda > 0.0 && lambda <= 1.0, "0 < lambda <= 1", "lambda = " + fmt(lambda));
  require(std::pow(2.0 * r, 1.0 - alpha) <= lambda, "(2r)^(1-alpha) <= lambda",
          "(2r)^(1-alpha) = " + fmt(std::pow(2.0 * r, 1.0 - alpha)) + ", lambda = " + fmt(lambda));
  const SequenceRule beta = parse_sequence_rule(beta_rule);
  for (Index n = 1; n <= 64; ++n) {
    const double b = beta.at(n);
    require(b > 0.0 && b < 1.0 && beta.at(n + 1) <= b, "beta_n in (0,1) decreasing",
            "beta_" + std::to_string(n) + " = " + fmt(b));
  }
  MapInstance m{"affine_cube", {{"r", r}, {"alpha", alpha}, {"lambda", lambda}},
                {{"beta", beta_rule}}, DomainSpec(CoefficientBox{r}, DomainSpec::kDefaultTol, breadth),
                Norm::sup(), nullptr, {}, nullptr, std::nullopt};
  m.apply = [r, breadth, b = beta.at](const SeqVec& x) {
    if (x.tail() != 0.0) throw Error(ErrorCode::not_in_space, "affine_cube needs tail 0");
    // F_n = (1 - beta_n) t_n + r beta_n; coordinates past the evaluation
    // depth are truncated to 0.
    const Index depth = evaluation_depth(x, breadth);
    std::vector<Entry> out;
    out.reserve(static_cast<std::size_t>(depth));
    for (Index n = 1; n <= depth; ++n) {
      const double bn = b(n);
      out.push_back({n, (1.0 - bn) * x.coordinate(n) + r * bn});
    }
    return SeqVec::from_sorted(std::move(out), 0.0);
  };
  m.claims.alpha = alpha;
  m.claims.holder_constant = lambda;
  m.claims.uniform = true;
  m.claims.classical_lipschitz = 1.0;
  m.claims.affine = true;
  m.claims.fixed_points = FixedPointSet::empty();
  m.claims.displacement = DisplacementBound{0.0, "0 (x_m = r(e_1 + ... + e_m) moves by r beta_(m+1))"};
  m.claims.notes.push_back("coordinates beyond max(breadth, support) are truncated; residual r beta_(depth+1)");
  m.witnesses = WitnessFamily{
      [r](Index n) {
        std::vector<double> v(static_cast<std::size_t>(n), r);
        return SeqVec::from_dense(v);
      },
      [r, b = beta.at](Index n) { return r * b(n + 1); },
      "x_m = r(e_1 + ... + e_m), ||x_m - F x_m|| = r beta_(m+1)"};
  return m;
}

MapInstance renormed_l1_isometry(double alpha) {
  require_open_unit(alpha, "alpha");
  MapInstance m{"renormed_l1", {{"alpha", alpha}}, {}, DomainSpec(SubSimplex{1.0}),
                Norm::max_pos_neg_l1(), nullptr, {}, nullptr, std::nullopt};
  m.apply = [](const SeqVec& x) {
    if (x.tail() != 0.0) throw Error(ErrorCode::not_in_space, "renormed_l1 needs tail 0");
    double sum = 0.0;
    for (const auto& e : x.support()) sum += e.value;
    return shift_right(x, 1.0 - sum);
  };
  m.claims.alpha = alpha;
  m.claims.holder_constant = 1.0;
  m.claims.uniform = true;
  m.claims.classical_lipschitz = 1.0;
  m.claims.isometry = true;
  m.claims.fixed_points = FixedPointSet::empty();
  return m;
}

double l1_composite_radius(double alpha, double lambda) {
  const double theta = std::sqrt(alpha);
  return 0.25 * std::pow(lambda / std::pow(8.0, theta), 1.0 / (1.0 - theta));
}

MapInstance l1_ball_composite(double alpha, double lambda) {
  require_open_unit(alpha, "alpha");
  require_open_unit(lambda, "lambda");
  const double r = l1_composite_radius(alpha, lambda);
  const Norm l1 = Norm::lp(1.0);
  MapInstance m{"l1_ball_composite", {{"alpha", alpha}, {"lambda", lambda}, {"r", r}}, {},
                DomainSpec(Ball{1.0, l1}), l1, nullptr, {}, nullptr, std::nullopt};
  // T = F o R_1 o R_2 o G: radial retraction onto B(r), sphere retraction,
  // coordinatewise |.|, right shift.
  m.apply = [r, l1](const SeqVec& x) {
    return shift_right(abs_retract(l1_sphere_retract(radial_retract(x, r, l1), r)));
  };
  m.claims.alpha = alpha;
  m.claims.holder_constant = 1.0;
  m.claims.uniform = true;
  m.claims.holder_hard = false;
  m.claims.uniform_hard = false;
  m.claims.fixed_points = FixedPointSet::empty();
  m.claims.displacement = DisplacementBound{0.0, "0 (x_n = (r/n)(e_1 + ... + e_n) moves by 2r/n)"};
  m.witnesses = WitnessFamily{
      [r](Index n) {
        std::vector<double> v(static_cast<std::size_t>(n), r / static_cast<double>(n));
        return SeqVec::from_dense(v);
      },
      [r](Index n) { return 2.0 * r / static_cast<double>(n); },
      "x_n = (r/n)(e_1 + ... + e_n), ||x_n - T x_n||_1 = 2r/n"};
  return m;
}

MapInstance lambda_scale(const MapInstance& F, double lambda) {
  require_open_unit(lambda, "lambda");
  if (!F.domain.star_shaped()) {
    throw Error(ErrorCode::invalid_composition,
                "lambda_scale needs a domain closed under x -> s x; " + F.domain.kind_name() +
                    " is not");
  }
  MapInstance m = F;
  m.name = "lambda_scale(" + F.name + ")";
  m.params.insert(m.params.begin(), {"lambda", lambda});
  m.apply = [inner = F.apply, lambda](const SeqVec& x) { return inner(lambda * x); };
  m.oracle = nullptr;
  m.witnesses.reset();
  m.claims.holder_constant = F.claims.holder_constant * std::pow(lambda, F.claims.alpha);
  m.claims.uniform = false;
  m.claims.asymptotic.reset();
  m.claims.fixed_points = FixedPointSet::unknown();
  m.claims.displacement.reset();
  m.claims.affine = false;
  m.claims.isometry = false;
  m.claims.lower_lipschitz.reset();
  if (F.claims.classical_lipschitz) m.claims.classical_lipschitz = *F.claims.classical_lipschitz * lambda;
  if (F.claims.scaling_decay) m.claims.orbit_decay = lambda;
  m.claims.scaling_decay = false;
  return m;
}

namespace {

/// sup ||x|| over the domain, in the instance norm.
std::optional<double> radius_bound(const MapInstance& T) {
  const DomainSpec& K = T.domain;
  if (const auto* s = std::get_if<SubSimplex>(&K.kind())) return s->mass_cap;
  if (!(T.norm == K.natural_norm())) return std::nullopt;
  return std::visit(
      [](const auto& k) -> std::optional<double> {
        using K_t = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K_t, Ball> || std::is_same_v<K_t, PositiveBall> ||
                      std::is_same_v<K_t, CoefficientBox>) {
          return k.r;
        } else if constexpr (std::is_same_v<K_t, Simplex>) {
          return k.mass;
        } else if constexpr (std::is_same_v<K_t, SigmaBand>) {
          return 1.0 - k.delta;
        } else if constexpr (std::is_same_v<K_t, CInterval>) {
          return k.cap;
        } else {
          return k.mass_cap;
        }
      },
      K.kind());
}

}  // namespace

MapInstance holderize(const MapInstance& T, double epsilon, double alpha) {
  require_open_unit(epsilon, "epsilon");
  require_open_unit(alpha, "alpha");
  if (!T.claims.classical_lipschitz || *T.claims.classical_lipschitz > 1.0) {
    throw Error(ErrorCode::invalid_composition, "holderize needs a nonexpansive map; " + T.name +
                                                     " has no classical constant <= 1");
  }
  const auto radius = radius_bound(T);
  if (!radius || *radius > 1.0) {
    throw Error(ErrorCode::invalid_composition,
                "holderize needs a domain inside the unit ball; " + T.domain.describe());
  }
  const double diam = T.domain.diameter(T.norm).value_or(2.0 * *radius);
  MapInstance m = T;
  m.name = "holderize(" + T.name + ")";
  m.params.insert(m.params.begin(), {{"epsilon", epsilon}, {"alpha", alpha}});
  m.apply = [inner = T.apply, k = T.norm, epsilon, alpha](const SeqVec& x) {
    const double s = std::pow(norm(x, k), alpha);
    const double c = epsilon * s / (4.0 * (1.0 + s));
    return axpy(c, x, 1.0 - c, inner(x));
  };
  m.oracle = nullptr;
  m.witnesses.reset();
  m.claims.alpha = alpha;
  m.claims.holder_constant = epsilon + std::pow(diam, 1.0 - alpha);
  m.claims.holder_hard = true;
  m.claims.uniform = false;
  m.claims.asymptotic.reset();
  m.claims.classical_lipschitz.reset();
  m.claims.lower_lipschitz.reset();
  m.claims.affine = false;
  m.claims.isometry = false;
  m.claims.orbit_decay.reset();
  m.claims.scaling_decay = false;
  if (m.claims.displacement) {
    m.claims.displacement->formula = "<= d(T, K) = " + m.claims.displacement->formula;
  }
  m.claims.notes.push_back("||T(x) - T_eps(x)|| <= eps = " + fmt(epsilon));
  return m;
}

MapInstance lift_to_ball(const MapInstance& F, double r, double alpha, double lambda) {
  require_open_unit(alpha, "alpha");
  require(lambda > 0.0 && lambda <= 1.0, "0 < lambda <= 1", "lambda = " + fmt(lambda));
  require(r > 0.0, "r > 0", "r = " + fmt(r));
  const auto* ball = std::get_if<Ball>(&F.domain.kind());
  if (ball == nullptr || ball->r != 1.0 || !(ball->norm == F.norm)) {
    throw Error(ErrorCode::invalid_composition,
                "lift_to_ball needs F defined on the unit ball of its norm; got " +
                    F.domain.describe());
  }
  const double rpow = std::pow(r, 1.0 - alpha);
  if (F.claims.classical_lipschitz) {
    const double L = *F.claims.classical_lipschitz;
    require(2.0 * L * rpow <= lambda, "2 L r^(1-alpha) <= lambda",
            "2 L r^(1-alpha) = " + fmt(2.0 * L * rpow) + ", lambda = " + fmt(lambda));
  } else if (F.claims.alpha == alpha) {
    const double L = F.claims.holder_constant;
    const double lhs = std::pow(2.0, alpha) * L * rpow;
    require(lhs <= lambda, "2^alpha L r^(1-alpha) <= lambda",
            "2^alpha L r^(1-alpha) = " + fmt(lhs) + ", lambda = " + fmt(lambda));
  } else {
    throw Error(ErrorCode::invalid_composition,
                "lift_to_ball needs F Lipschitz or alpha-Hölder with the same alpha");
  }
  MapInstance m = F;
  m.name = "lift_to_ball(" + F.name + ")";
  m.params.insert(m.params.begin(), {{"r", r}, {"alpha", alpha}, {"lambda", lambda}});
  m.apply = [inner = F.apply, k = F.norm, r](const SeqVec& x) {
    return r * inner((1.0 / r) * radial_retract(x, r, k));
  };
  m.oracle = nullptr;
  m.witnesses.reset();
  m.claims.alpha = alpha;
  m.claims.holder_constant = lambda;
  m.claims.holder_hard = true;
  m.claims.uniform = F.claims.uniform;
  m.claims.asymptotic.reset();
  m.claims.classical_lipschitz.reset();
  m.claims.lower_lipschitz.reset();
  m.claims.orbit_decay.reset();
  m.claims.scaling_decay = false;
  m.claims.fixed_points = F.claims.fixed_points.kind == FixedPointKind::empty
                              ? FixedPointSet::empty()
                              : FixedPointSet::unknown();
  if (F.claims.displacement) {
    m.claims.displacement = DisplacementBound{r * F.claims.displacement->value,
                                              "r * (" + F.claims.displacement->formula + ")"};
  }
  return m;
}

MapInstance retraction_map(const std::string& name, double r, const Norm& k) {
  require(r > 0.0, "r > 0", "r = " + fmt(r));
  double claimed = 0.0;
  for (const auto& tag : retraction_tags()) {
    if (tag.name == name) claimed = tag.claimed_lipschitz;
  }
  MapInstance m{name, {{"r", r}}, {{"norm", k.name()}}, DomainSpec(Ball{1.0, k}), k,
                nullptr, {}, nullptr, std::nullopt};
  if (name == "radial") {
    m.apply = [r, k](const SeqVec& x) { return radial_retract(x, r, k); };
  } else if (name == "abs") {
    m.apply = [](const SeqVec& x) { return abs_retract(x); };
  } else if (name == "positive_part") {
    m.apply = [](const SeqVec& x) { return positive_part(x); };
  } else if (name == "clamp") {
    m.domain = DomainSpec(PositiveBall{1.0, k});
    m.apply = [r](const SeqVec& x) { return clamp_retract(x, r); };
  } else if (name == "l1_sphere") {
    if (!(k == Norm::lp(1.0))) {
      throw Error(ErrorCode::invalid_parameter, "l1_sphere retraction needs norm l1");
    }
    m.domain = DomainSpec(Ball{r, k});
    m.apply = [r](const SeqVec& x) { return l1_sphere_retract(x, r); };
  } else {
    throw Error(ErrorCode::unknown_name, "unknown retraction '" + name + "'");
  }
  if (name == "abs" || name == "positive_part") m.params.clear();
  m.claims.alpha = 1.0;
  m.claims.holder_constant = claimed;
  m.claims.classical_lipschitz = claimed;
  m.claims.fixed_points = FixedPointSet::unknown();
  return m;
}

ScalarRule parse_scalar_rule(const std::string& name) {
  if (name == "half_square") {
    return {name, [](double t) { return t * t / 2.0; }, 0.0};
  }
  throw Error(ErrorCode::unknown_name, "unknown scalar rule '" + name + "' (half_square)");
}

ScalarOrbit banach_alpha_gt1_iterate(const ScalarRule& rule, double x0, double L, double alpha,
                                     Index n) {
  require(alpha > 1.0, "alpha > 1", "alpha = " + fmt(alpha));
  require_open_unit(L, "L");
  require(n >= 0, "n >= 0", "n = " + std::to_string(n));
  require(std::abs(rule.apply(x0) - x0) <= 1.0, "|T(x0) - x0| <= 1",
          "|T(x0) - x0| = " + fmt(std::abs(rule.apply(x0) - x0)));
  ScalarOrbit out;
  out.points.push_back(x0);
  for (Index k = 0; k < n; ++k) out.points.push_back(rule.apply(out.points.back()));
  for (std::size_t k = 0; k + 1 < out.points.size(); ++k) {
    out.displacements.push_back(std::abs(out.points[k + 1] - out.points[k]));
  }
  for (double x : out.points) out.errors.push_back(std::abs(x - rule.fixed_point));
  for (std::size_t k = 0; k + 1 < out.displacements.size(); ++k) {
    const double bound = L * std::pow(out.displacements[k], alpha);
    if (out.displacements[k + 1] > bound * (1.0 + 1e-15)) ++out.recursion_violations;
  }
  for (std::size_t k = 0; k < out.displacements.size(); ++k) {
    if (out.displacements[k] < 1e-15) {
      out.converged = true;
      out.converged_at = static_cast<Index>(k);
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Registry

namespace {

std::vector<CatalogEntry> build_entries() {
  std::vector<CatalogEntry> e;
  e.push_back({"prus", "limit-functional map on eventually constant sequences",
               "T(x) = (|1 - |lim x|^alpha|, |t_1|^alpha, |t_2|^alpha, ...)",
               {{"alpha", 0.5, "0 < alpha < 1"}}, {}, "ball(r=1, sup)",
               "alpha-Hölder nonexpansive (L = 1); F(T) empty; T^n(0) = n ones", false, false,
               {"only the restriction of a Banach limit to convergent sequences is modeled"}});
  e.push_back({"norming", "norming-functional map with a unique fixed point",
               "T(x) = ((1 + t_1^2)/2)^alpha e_1",
               {{"alpha", 0.5, "0 < alpha < 1"}}, {}, "ball(r=1, l2)",
               "alpha-Hölder nonexpansive; classical Lipschitz alpha 2^(1-alpha); F(T) = {e_1}; "
               "closed form T^n for alpha = 1/2",
               true, false, {}});
  e.push_back({"baseline_c", "nonexpansive fixed-point-free map of the ball of c",
               "F(t_1, t_2, ...) = (1, 0, |t_1|, |t_2|, ...)", {}, {}, "ball(r=1, sup)",
               "1-Lipschitz; F(T) empty; inner map for lift_to_ball", false, false, {}});
  e.push_back({"shift_simplex", "right shift on a small simplex of l_p",
               "F(t_1, t_2, ...) = (0, t_1, t_2, ...)",
               {{"p", 1.0, "p >= 1"}, {"alpha", 0.5, "0 < alpha < 1"},
                {"lambda", 0.5, "0 < lambda < 1"}},
               {}, "simplex(p, mass = lambda^(p/(1-alpha))/2)",
               "uniformly alpha-Hölder lambda-contractive; affine; F(T) empty; d(T,K) = 0", false,
               false, {}});
  e.push_back({"affine_mixing", "affine mixing map on an l1 simplex",
               "T(x) = (1-g_1) t_1 e_1 + sum_{n>=2} ((1-g_n) t_n + g_(n-1) t_(n-1)) e_n",
               {{"L", 2.0, "L > 1"}, {"lambda", 0.75, "1/L < lambda <= 1"},
                {"alpha", 0.5, "0 < alpha < 1"}},
               {{"gamma", 0.0, "geometric (default) | harmonic | inverse_square"}},
               "simplex(p=1, mass = (lambda/L)^(1/(1-alpha))/2)",
               "||Tx - Ty|| <= lambda ||x-y||^alpha; lower bound ||x-y||/L reported only; affine; "
               "F(T) empty",
               false, false,
               {"dependence of the lower bound L^-1 ||x-y|| <= ||Tx-Ty|| on the mixing weights is "
                "not specified; measured and reported only"}});
  e.push_back({"deficiency", "norm-deficiency map on a small l_p ball",
               "T(x) = (lambda - ||x||_p) e_1 + sum t_i e_(2i)",
               {{"p", 2.0, "p >= 1"}, {"alpha", 0.5, "0 < alpha < 1"}}, {},
               "ball(r = lambda, l_p), lambda = (1/2)^((2-alpha)/(1-alpha))/2",
               "alpha-Hölder nonexpansive; F(T) empty; d(T,K) <= (1/2)^((2-alpha)/(1-alpha))", false,
               false, {}});
  e.push_back({"goebel_kirk", "Hölder variant of the Goebel-Kirk asymptotically nonexpansive map",
               "T = F o positive_part, F(t) = (0, t_1^alpha, A_2 t_2, A_3 t_3, ...), A_i = 1 - 1/i^2",
               {{"alpha", 0.5, "0 < alpha < 1"}}, {}, "ball(r=1, l2)",
               "||T^n x - T^n y|| <= kappa_n 2^(1-alpha) ||x-y||^alpha, kappa_n = (n+1)/n; "
               "F(T) = {0}; not Lipschitz",
               false, false,
               {"the positive unit ball is not mapped into itself: t_1^alpha exceeds t_1 on (0,1)"}});
  e.push_back({"hyperconvex", "fixed-point-free map of an order interval of c",
               "F(x) = (1/N, t_2 t_1^alpha, t_1, t_2, t_3, ...)",
               {{"N", 4.0, "integer with 2 <= N^alpha"}, {"alpha", 0.5, "0 < alpha < 1"}}, {},
               "c_interval(cap = 1/N)",
               "uniformly alpha-Hölder nonexpansive; F(T) empty; d(T,K) = 0 via lambda scaling; "
               "closed form F^(n+1)",
               true, false, {}});
  e.push_back({"c0_family", "family T_alpha on a coefficient band of c0",
               "T_alpha(x) = (1-delta) e_1 + sum (1-delta) t_i^alpha e_(i+1)",
               {{"delta", 0.5, "0 < delta < 1"}, {"q", 0.25, "0 < q < 1 - delta"},
                {"alpha", 0.9, "0 < alpha <= 1"}},
               {}, "sigma_band(delta, q): t_1 = 1-delta, q^i <= t_i <= 1-delta",
               "alpha-Hölder nonexpansive; d(T,K) <= (1-delta)(1-alpha)/(e alpha); alpha = 1 fixes "
               "sum (1-delta)^i e_i up to residual (1-delta)^(breadth+1)",
               false, false,
               {"the displacement bound carries the factor (1-delta); without it the bound is "
                "looser", "band membership is checked only up to breadth"}});
  e.push_back({"affine_cube", "affine diagonal map on a coefficient box of c0",
               "F(x) = sum ((1-beta_n) t_n + r beta_n) e_n",
               {{"r", 0.125, "(2r)^(1-alpha) <= lambda"}, {"alpha", 0.5, "0 < alpha < 1"},
                {"lambda", 0.5, "0 < lambda <= 1"}},
               {{"beta", 0.0, "harmonic (default) | geometric | inverse_square"}},
               "coefficient_box(r) in c0",
               "uniformly alpha-Hölder lambda-contractive; affine; F(T) empty; d(T,K) = 0", false,
               false,
               {"the variant on c with the summing basis is not implemented: invariance of the "
                "positive ball is unclear for negative coefficients"}});
  e.push_back({"renormed_l1", "isometry of a renormed l1 simplex",
               "T(x) = (1 - sum t_i, t_1, t_2, ...), ||x|| = max(||x+||_1, ||x-||_1)",
               {{"alpha", 0.5, "0 < alpha < 1"}}, {}, "sub_simplex(mass_cap = 1)",
               "isometry; uniformly alpha-Hölder nonexpansive for every alpha; F(T) empty", false,
               false, {}});
  e.push_back({"l1_ball_composite", "fixed-point-free map of the l1 unit ball",
               "T = shift o abs o l1_sphere(r) o radial(r), r = (lambda/8^theta)^(1/(1-theta))/4, "
               "theta = sqrt(alpha)",
               {{"alpha", 0.5, "0 < alpha < 1"}, {"lambda", 0.5, "0 < lambda < 1"}}, {},
               "ball(r=1, l1)",
               "F(T) empty; d(T,K) = 0; uniform Hölder profile ||T^n x - T^n y|| <= ||x-y||^alpha "
               "reported only",
               false, false,
               {"the constant bookkeeping through the retractions is not spelled out; the profile "
                "is measured, not enforced"}});
  e.push_back({"lambda_scale", "scaled map F_lambda(x) = F(lambda x)", "F_lambda(x) = F(lambda x)",
               {{"lambda", 0.9, "0 < lambda < 1"}}, {}, "domain of the inner map (star-shaped)",
               "constant L lambda^alpha; for hyperconvex ||F^n x - F^(n+1) x|| <= lambda^n", false,
               true, {}});
  e.push_back({"holderize", "Hölder perturbation of a nonexpansive map",
               "T_eps(x) = c x + (1-c) T(x), c = eps ||x||^alpha / (4 (1 + ||x||^alpha))",
               {{"epsilon", 0.1, "0 < epsilon < 1"}, {"alpha", 0.5, "0 < alpha < 1"}}, {},
               "domain of the inner map (inside the unit ball)",
               "alpha-Hölder with constant eps + diam^(1-alpha); same fixed points; "
               "||T - T_eps|| <= eps",
               false, true, {}});
  e.push_back({"lift_to_ball", "conjugated lift of a map to the whole unit ball",
               "T(x) = r F(R(x)/r), R the radial retraction onto B(r)",
               {{"r", 0.0625, "2 L r^(1-alpha) <= lambda (Lipschitz F) or 2^alpha L r^(1-alpha) <= "
                              "lambda (Hölder F)"},
                {"alpha", 0.5, "0 < alpha < 1"}, {"lambda", 0.5, "0 < lambda <= 1"}},
               {}, "ball(r=1) of the inner norm",
               "alpha-Hölder lambda-contractive; F(T) empty when F(F) is empty; displacement "
               "scales by r",
               false, true, {}});
  for (const auto& tag : retraction_tags()) {
    if (tag.name == "q") continue;
    const bool has_r = tag.name == "radial" || tag.name == "clamp" || tag.name == "l1_sphere";
    std::vector<ParamSchema> params;
    if (has_r) params.push_back({"r", tag.name == "l1_sphere" ? 1.0 : 0.5, "r > 0"});
    std::string default_norm = tag.name == "clamp" ? "sup" : (tag.name == "radial" || tag.name == "positive_part") ? "l2" : "l1";
    e.push_back({tag.name, "retraction " + tag.source_set + " -> " + tag.target_set,
                 "retraction '" + tag.name + "'", params,
                 {{"norm", 0.0, "sup | l<p> | max_pos_neg_l1 (default " + default_norm + ")"}},
                 tag.source_set, fmt(tag.claimed_lipschitz) + "-Lipschitz", false, false, {}});
  }
  return e;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

double take(std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  params.erase(it);
  return v;
}

std::string take_rule(std::map<std::string, std::string>& rules, const std::string& key,
                      const std::string& fallback) {
  auto it = rules.find(key);
  if (it == rules.end()) return fallback;
  std::string v = it->second;
  rules.erase(it);
  return v;
}

void reject_leftovers(const std::string& name, const std::map<std::string, double>& params,
                      const std::map<std::string, std::string>& rules) {
  for (const auto& [k, v] : params) {
    throw Error(ErrorCode::parse_error, "unknown parameter '" + k + "' for map '" + name + "'");
  }
  for (const auto& [k, v] : rules) {
    throw Error(ErrorCode::parse_error, "unknown rule '" + k + "' for map '" + name + "'");
  }
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = build_entries();
  return entries;
}

std::vector<std::string> suggest_names(const std::string& name) {
  std::vector<std::pair<std::size_t, std::string>> scored;
  for (const auto& e : catalog_entries()) {
    const std::size_t d = edit_distance(name, e.name);
    const bool prefix = !name.empty() && (e.name.rfind(name, 0) == 0 || name.rfind(e.name, 0) == 0);
    if (d <= 3 || prefix) scored.emplace_back(prefix ? 0 : d, e.name);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> out;
  for (auto& [d, n] : scored) out.push_back(std::move(n));
  return out;
}

const CatalogEntry& find_entry(const std::string& name) {
  for (const auto& e : catalog_entries()) {
    if (e.name == name) return e;
  }
  std::string msg = "unknown construction '" + name + "'";
  const auto close = suggest_names(name);
  if (!close.empty()) {
    msg += "; did you mean";
    for (std::size_t i = 0; i < close.size(); ++i) msg += (i ? ", " : " ") + close[i];
    msg += "?";
  } else {
    msg += "; 'list' shows every name";
  }
  throw Error(ErrorCode::unknown_name, msg);
}

MapInstance make_map(const MapSpec& spec) {
  find_entry(spec.name);
  auto params = spec.params;
  auto rules = spec.rules;
  const Index breadth = spec.breadth.value_or(DomainSpec::kDefaultBreadth);
  const std::string& n = spec.name;

  auto need_inner = [&]() -> MapInstance {
    if (!spec.inner) {
      throw Error(ErrorCode::parse_error, "combinator '" + n + "' needs an inner map");
    }
    MapSpec inner = *spec.inner;
    if (!inner.breadth) inner.breadth = spec.breadth;
    return make_map(inner);
  };
  if (spec.inner && n != "lambda_scale" && n != "holderize" && n != "lift_to_ball") {
    throw Error(ErrorCode::parse_error, "map '" + n + "' does not take an inner map");
  }

  MapInstance m = [&]() -> MapInstance {
    if (n == "prus") return prus_map(take(params, "alpha", 0.5));
    if (n == "norming") return norming_map(take(params, "alpha", 0.5));
    if (n == "baseline_c") return baseline_c_map();
    if (n == "shift_simplex") {
      const double p = take(params, "p", 1.0);
      const double a = take(params, "alpha", 0.5);
      return shift_simplex_map(p, a, take(params, "lambda", 0.5));
    }
    if (n == "affine_mixing") {
      const double L = take(params, "L", 2.0);
      const double lam = take(params, "lambda", 0.75);
      const double a = take(params, "alpha", 0.5);
      return affine_mixing_map(L, lam, a, take_rule(rules, "gamma", "geometric"));
    }
    if (n == "deficiency") {
      const double p = take(params, "p", 2.0);
      return deficiency_map(p, take(params, "alpha", 0.5));
    }
    if (n == "goebel_kirk") return goebel_kirk_map(take(params, "alpha", 0.5));
    if (n == "hyperconvex") {
      const double N = take(params, "N", 4.0);
      return hyperconvex_map(N, take(params, "alpha", 0.5));
    }
    if (n == "c0_family") {
      const double d = take(params, "delta", 0.5);
      const double q = take(params, "q", 0.25);
      return c0_family_map(d, q, take(params, "alpha", 0.9), breadth);
    }
    if (n == "affine_cube") {
      const double r = take(params, "r", 0.125);
      const double a = take(params, "alpha", 0.5);
      const double lam = take(params, "lambda", 0.5);
      return affine_cube_map(r, take_rule(rules, "beta", "harmonic"), a, lam, breadth);
    }
    if (n == "renormed_l1") return renormed_l1_isometry(take(params, "alpha", 0.5));
    if (n == "l1_ball_composite") {
      const double a = take(params, "alpha", 0.5);
      return l1_ball_composite(a, take(params, "lambda", 0.5));
    }
    if (n == "lambda_scale") {
      const double lam = take(params, "lambda", 0.9);
      return lambda_scale(need_inner(), lam);
    }
    if (n == "holderize") {
      const double eps = take(params, "epsilon", 0.1);
      return holderize(need_inner(), eps, take(params, "alpha", 0.5));
    }
    if (n == "lift_to_ball") {
      const double r = take(params, "r", 0.0625);
      const double a = take(params, "alpha", 0.5);
      return lift_to_ball(need_inner(), r, a, take(params, "lambda", 0.5));
    }
    // Retractions.
    const std::string fallback_norm =
        n == "clamp" ? "sup" : (n == "radial" || n == "positive_part") ? "l2" : "l1";
    const Norm k = parse_norm(take_rule(rules, "norm", fallback_norm));
    const double r = (n == "abs" || n == "positive_part")
                         ? 1.0
                         : take(params, "r", n == "l1_sphere" ? 1.0 : 0.5);
    return retraction_map(n, r, k);
  }();
  reject_leftovers(n, params, rules);
  if (spec.breadth) m.domain = m.domain.with_breadth(*spec.breadth);
  return m;
}

std::vector<MapInstance> default_instances() {
  return {prus_map(),         norming_map(),      baseline_c_map(),       shift_simplex_map(),
          affine_mixing_map(), deficiency_map(),  goebel_kirk_map(),      hyperconvex_map(),
          c0_family_map(),    affine_cube_map(),  renormed_l1_isometry(), l1_ball_composite()};
}

}  // namespace holderlab
