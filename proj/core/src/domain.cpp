#include "holderlab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "holderlab/error.hpp"
#include "holderlab/rng.hpp"

namespace holderlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::invalid_parameter,
                std::string(what) + " must be a finite value > 0, got " + format_double(v));
  }
}

bool is_lp(const Norm& n) { return n.kind() != Norm::Kind::sup; }

}  // namespace

DomainSpec::DomainSpec(DomainKind kind, double tol, Index breadth)
    : kind_(std::move(kind)), tol_(tol), breadth_(breadth) {
  if (!(tol >= 0.0)) throw Error(ErrorCode::invalid_parameter, "tol must be >= 0");
  if (breadth < 1) throw Error(ErrorCode::invalid_budget, "breadth must be >= 1");
  std::visit(overloaded{
                 [](const Ball& b) { require_positive(b.r, "ball radius r"); },
                 [](const PositiveBall& b) { require_positive(b.r, "ball radius r"); },
                 [](const Simplex& s) {
                   if (!(s.p >= 1.0)) {
                     throw Error(ErrorCode::invalid_parameter, "simplex p must be >= 1");
                   }
                   require_positive(s.mass, "simplex mass");
                 },
                 [](const SubSimplex& s) { require_positive(s.mass_cap, "mass_cap"); },
                 [](const CoefficientBox& b) { require_positive(b.r, "box cap r"); },
                 [](const SigmaBand& b) {
                   if (!(b.delta > 0.0 && b.delta < 1.0)) {
                     throw Error(ErrorCode::invalid_parameter, "sigma band needs delta in (0,1)");
                   }
                   if (!(b.q > 0.0 && b.q < 1.0 - b.delta)) {
                     throw Error(ErrorCode::invalid_parameter,
                                 "sigma band needs 0 < q < 1 - delta (sigma_1 = q < 1 - delta)");
                   }
                 },
                 [](const CInterval& c) { require_positive(c.cap, "interval cap"); },
             },
             kind_);
}

std::string DomainSpec::kind_name() const {
  return std::visit(overloaded{
                        [](const Ball&) { return std::string("ball"); },
                        [](const PositiveBall&) { return std::string("positive_ball"); },
                        [](const Simplex&) { return std::string("simplex"); },
                        [](const SubSimplex&) { return std::string("sub_simplex"); },
                        [](const CoefficientBox&) { return std::string("coefficient_box"); },
                        [](const SigmaBand&) { return std::string("sigma_band"); },
                        [](const CInterval&) { return std::string("c_interval"); },
                    },
                    kind_);
}

std::string DomainSpec::describe() const {
  const auto f = format_double;
  return std::visit(
      overloaded{
          [&](const Ball& b) { return "ball(r=" + f(b.r) + ", " + b.norm.name() + ")"; },
          [&](const PositiveBall& b) {
            return "positive_ball(r=" + f(b.r) + ", " + b.norm.name() + ")";
          },
          [&](const Simplex& s) {
            return "simplex(p=" + f(s.p) + ", mass=" + f(s.mass) + "): t_i >= 0, sum t_i = mass";
          },
          [&](const SubSimplex& s) {
            return "sub_simplex(mass_cap=" + f(s.mass_cap) + "): t_i >= 0, sum t_i <= mass_cap";
          },
          [&](const CoefficientBox& b) {
            return "coefficient_box(r=" + f(b.r) + "): 0 <= t_n <= r in c0";
          },
          [&](const SigmaBand& b) {
            return "sigma_band(delta=" + f(b.delta) + ", q=" + f(b.q) +
                   "): t_1 = 1-delta, q^i <= t_i <= 1-delta, checked on i <= " +
                   std::to_string(breadth_);
          },
          [&](const CInterval& c) {
            return "c_interval(cap=" + f(c.cap) + "): 0 <= t_n <= cap in c";
          },
      },
      kind_);
}

Norm DomainSpec::natural_norm() const {
  return std::visit(overloaded{
                        [](const Ball& b) { return b.norm; },
                        [](const PositiveBall& b) { return b.norm; },
                        [](const Simplex& s) { return Norm::lp(s.p); },
                        [](const SubSimplex&) { return Norm::lp(1.0); },
                        [](const CoefficientBox&) { return Norm::sup(); },
                        [](const SigmaBand&) { return Norm::sup(); },
                        [](const CInterval&) { return Norm::sup(); },
                    },
                    kind_);
}

bool DomainSpec::star_shaped() const noexcept {
  return !std::holds_alternative<Simplex>(kind_) && !std::holds_alternative<SigmaBand>(kind_);
}

std::optional<double> DomainSpec::diameter(const Norm& in) const {
  if (const auto* s = std::get_if<SubSimplex>(&kind_);
      s != nullptr && in.kind() == Norm::Kind::max_pos_neg_l1) {
    return s->mass_cap;
  }
  if (!(in == natural_norm())) return std::nullopt;
  return std::visit(
      overloaded{
          [](const Ball& b) -> std::optional<double> { return 2.0 * b.r; },
          [](const PositiveBall& b) -> std::optional<double> {
            // Two orthogonal boundary points; exact for sup and l1, an upper
            // bound otherwise.
            if (b.norm.kind() == Norm::Kind::sup) return b.r;
            return 2.0 * b.r;
          },
          [](const Simplex& s) -> std::optional<double> {
            return std::pow(2.0, 1.0 / s.p) * s.mass;
          },
          [](const SubSimplex& s) -> std::optional<double> { return 2.0 * s.mass_cap; },
          [](const CoefficientBox& b) -> std::optional<double> { return b.r; },
          [](const SigmaBand& b) -> std::optional<double> { return 1.0 - b.delta - b.q * b.q; },
          [](const CInterval& c) -> std::optional<double> { return c.cap; },
      },
      kind_);
}

double band_floor(const SigmaBand& band, Index i) {
  return std::pow(band.q, static_cast<double>(i));
}

bool contains(const DomainSpec& domain, const SeqVec& x) {
  const double tol = domain.tol();
  auto all_in = [&](double lo, double hi) {
    for (const auto& e : x.support()) {
      if (!(e.value >= lo - tol && e.value <= hi + tol)) return false;
    }
    return true;
  };
  auto in_ball = [&](double r, const Norm& n) {
    if (is_lp(n) && x.tail() != 0.0) return false;
    return norm(x, n) <= r + tol;
  };
  return std::visit(
      overloaded{
          [&](const Ball& b) { return in_ball(b.r, b.norm); },
          [&](const PositiveBall& b) {
            if (!(x.tail() >= -tol)) return false;
            for (const auto& e : x.support()) {
              if (!(e.value >= -tol)) return false;
            }
            return in_ball(b.r, b.norm);
          },
          [&](const Simplex& s) {
            if (x.tail() != 0.0) return false;
            double sum = 0.0;
            for (const auto& e : x.support()) {
              if (!(e.value >= -tol)) return false;
              sum += e.value;
            }
            return std::abs(sum - s.mass) <= tol;
          },
          [&](const SubSimplex& s) {
            if (x.tail() != 0.0) return false;
            double sum = 0.0;
            for (const auto& e : x.support()) {
              if (!(e.value >= -tol)) return false;
              sum += e.value;
            }
            return sum <= s.mass_cap + tol;
          },
          [&](const CoefficientBox& b) { return x.tail() == 0.0 && all_in(0.0, b.r); },
          [&](const SigmaBand& b) {
            if (x.tail() != 0.0) return false;
            const double ceiling = 1.0 - b.delta;
            if (std::abs(x.coordinate(1) - ceiling) > tol) return false;
            auto ok = [&](Index i, double v) {
              return v >= band_floor(b, i) - tol && v <= ceiling + tol;
            };
            for (Index i = 2; i <= domain.breadth(); ++i) {
              if (!ok(i, x.coordinate(i))) return false;
            }
            for (const auto& e : x.support()) {
              if (e.index > domain.breadth() && !ok(e.index, e.value)) return false;
            }
            return true;
          },
          [&](const CInterval& c) {
            return x.tail() >= -tol && x.tail() <= c.cap + tol && all_in(0.0, c.cap);
          },
      },
      domain.kind());
}

namespace {

std::vector<Index> pick_support(Rng& rng, Index breadth) {
  const Index k = rng.uniform_int(1, breadth);
  std::vector<Index> idx(static_cast<std::size_t>(breadth));
  std::iota(idx.begin(), idx.end(), Index{1});
  if (rng.bernoulli(0.5)) {
    idx.resize(static_cast<std::size_t>(k));
    return idx;
  }
  for (Index j = 0; j < k; ++j) {
    auto swap_with = rng.uniform_int(j, breadth - 1);
    std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(swap_with)]);
  }
  idx.resize(static_cast<std::size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

/// Value in [lo, hi], snapped to an endpoint with probability snap.
double box_value(Rng& rng, double lo, double hi, double snap) {
  if (rng.bernoulli(snap)) return rng.bernoulli(0.5) ? lo : hi;
  return rng.uniform(lo, hi);
}

/// Nonzero direction on the chosen support, normalized to unit norm.
std::vector<Entry> unit_direction(Rng& rng, const std::vector<Index>& support, const Norm& n,
                                  bool positive) {
  std::vector<Entry> entries;
  entries.reserve(support.size());
  const bool heavy = rng.bernoulli(0.5);
  for (Index i : support) {
    double v = heavy ? rng.exponential() : rng.uniform();
    if (!positive && rng.bernoulli(0.5)) v = -v;
    entries.push_back({i, v});
  }
  double len = norm(SeqVec::from_sorted(entries, 0.0), n);
  if (len == 0.0) {
    entries.assign(1, {support.front(), 1.0});
    len = 1.0;
  }
  for (auto& e : entries) e.value /= len;
  return entries;
}

SeqVec sample_ball(Rng& rng, double r, const Norm& n, Index breadth, bool positive) {
  auto support = pick_support(rng, breadth);
  if (n.kind() == Norm::Kind::sup) {
    std::vector<Entry> entries;
    const double lo = positive ? 0.0 : -r;
    for (Index i : support) entries.push_back({i, box_value(rng, lo, r, 0.25)});
    double tail = rng.bernoulli(0.5) ? box_value(rng, lo, r, 0.25) : 0.0;
    return SeqVec::from_sorted(std::move(entries), tail);
  }
  auto entries = unit_direction(rng, support, n, positive);
  double radius = rng.bernoulli(0.25) ? r : r * rng.uniform();
  for (auto& e : entries) e.value *= radius;
  SeqVec x = SeqVec::from_sorted(std::move(entries), 0.0);
  // Rounding can push the norm a hair past r; pull it back onto the sphere.
  double len = norm(x, n);
  if (len > r) x = (r / len) * x;
  return x;
}

SeqVec sample_simplex(Rng& rng, double mass, Index breadth) {
  auto support = pick_support(rng, breadth);
  std::vector<double> w;
  w.reserve(support.size());
  double total = 0.0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    w.push_back(rng.exponential());
    total += w.back();
  }
  std::vector<Entry> entries;
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < support.size(); ++k) {
    double v = mass * (w[k] / total);
    acc += v;
    entries.push_back({support[k], v});
  }
  entries.push_back({support.back(), std::max(0.0, mass - acc)});
  return SeqVec::from_sorted(std::move(entries), 0.0);
}

}  // namespace

SeqVec sample(const DomainSpec& domain, std::uint64_t seed, Index breadth) {
  if (breadth < 1) throw Error(ErrorCode::invalid_budget, "sample breadth must be >= 1");
  Rng rng(seed);
  return std::visit(
      overloaded{
          [&](const Ball& b) { return sample_ball(rng, b.r, b.norm, breadth, false); },
          [&](const PositiveBall& b) { return sample_ball(rng, b.r, b.norm, breadth, true); },
          [&](const Simplex& s) { return sample_simplex(rng, s.mass, breadth); },
          [&](const SubSimplex& s) {
            const double u = rng.uniform();
            if (u < 0.125) return SeqVec();
            const double mass = u < 0.375 ? s.mass_cap : s.mass_cap * rng.uniform();
            if (mass == 0.0) return SeqVec();
            return sample_simplex(rng, mass, breadth);
          },
          [&](const CoefficientBox& b) {
            std::vector<Entry> entries;
            for (Index i : pick_support(rng, breadth)) {
              entries.push_back({i, box_value(rng, 0.0, b.r, 0.25)});
            }
            return SeqVec::from_sorted(std::move(entries), 0.0);
          },
          [&](const SigmaBand& b) {
            const Index depth = std::max(breadth, domain.breadth());
            const double ceiling = 1.0 - b.delta;
            std::vector<Entry> entries;
            entries.push_back({1, ceiling});
            for (Index i = 2; i <= depth; ++i) {
              entries.push_back({i, box_value(rng, band_floor(b, i), ceiling, 0.25)});
            }
            return SeqVec::from_sorted(std::move(entries), 0.0);
          },
          [&](const CInterval& c) {
            std::vector<Entry> entries;
            for (Index i : pick_support(rng, breadth)) {
              entries.push_back({i, box_value(rng, 0.0, c.cap, 0.25)});
            }
            double tail = rng.bernoulli(0.5) ? box_value(rng, 0.0, c.cap, 0.5) : 0.0;
            return SeqVec::from_sorted(std::move(entries), tail);
          },
      },
      domain.kind());
}

std::vector<SeqVec> canonical_points(const DomainSpec& domain) {
  const Index n = domain.breadth();
  auto barycenter = [n](double mass) {
    std::vector<double> v(static_cast<std::size_t>(n), mass / static_cast<double>(n));
    return SeqVec::from_dense(v);
  };
  return std::visit(
      overloaded{
          [&](const Ball& b) {
            std::vector<SeqVec> pts{SeqVec(), SeqVec::unit(1, b.r), SeqVec::unit(1, -b.r),
                                    SeqVec::unit(2, b.r)};
            if (b.norm.kind() == Norm::Kind::sup) {
              pts.emplace_back(b.r);
              pts.emplace_back(-b.r);
              pts.push_back(SeqVec({{1, -b.r}}, b.r));
            } else {
              SeqVec pair({{1, 1.0}, {2, -1.0}});
              pts.push_back((b.r / norm(pair, b.norm)) * pair);
            }
            return pts;
          },
          [&](const PositiveBall& b) {
            std::vector<SeqVec> pts{SeqVec(), SeqVec::unit(1, b.r), SeqVec::unit(2, b.r)};
            if (b.norm.kind() == Norm::Kind::sup) pts.emplace_back(b.r);
            return pts;
          },
          [&](const Simplex& s) {
            return std::vector<SeqVec>{SeqVec::unit(1, s.mass), SeqVec::unit(n, s.mass),
                                       barycenter(s.mass)};
          },
          [&](const SubSimplex& s) {
            return std::vector<SeqVec>{SeqVec(), SeqVec::unit(1, s.mass_cap),
                                       barycenter(s.mass_cap)};
          },
          [&](const CoefficientBox& b) {
            std::vector<double> full(static_cast<std::size_t>(n), b.r);
            return std::vector<SeqVec>{SeqVec(), SeqVec::unit(1, b.r), SeqVec::from_dense(full)};
          },
          [&](const SigmaBand& b) {
            const double ceiling = 1.0 - b.delta;
            std::vector<double> floor_pt;
            std::vector<double> ceiling_pt;
            std::vector<double> geometric;
            for (Index i = 1; i <= n; ++i) {
              floor_pt.push_back(i == 1 ? ceiling : band_floor(b, i));
              ceiling_pt.push_back(ceiling);
              geometric.push_back(std::pow(ceiling, static_cast<double>(i)));
            }
            return std::vector<SeqVec>{SeqVec::from_dense(floor_pt), SeqVec::from_dense(ceiling_pt),
                                       SeqVec::from_dense(geometric)};
          },
          [&](const CInterval& c) {
            SeqVec alternating({{1, c.cap}, {3, c.cap}, {5, c.cap}}, 0.0);
            return std::vector<SeqVec>{SeqVec(), SeqVec(c.cap), SeqVec::unit(1, c.cap),
                                       alternating};
          },
      },
      domain.kind());
}

}  // namespace holderlab
