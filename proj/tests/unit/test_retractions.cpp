#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "holderlab/error.hpp"
#include "holderlab/retraction.hpp"
#include "holderlab/rng.hpp"

using namespace holderlab;

namespace {

const Norm L1 = Norm::lp(1.0);

SeqVec random_signed(Rng& rng, Index n, bool positive = false) {
  std::vector<Entry> e;
  for (Index i = 1; i <= n; ++i) {
    if (rng.bernoulli(0.6)) e.push_back({i, positive ? rng.uniform() : rng.uniform(-1.0, 1.0)});
  }
  if (e.empty()) e.push_back({1, positive ? 0.5 : -0.5});
  return SeqVec(std::move(e));
}

/// Random vector with l1 norm exactly `len` (up to rounding).
SeqVec with_l1(Rng& rng, double len) {
  const SeqVec x = random_signed(rng, 10);
  return (len / norm(x, L1)) * x;
}

double max_ratio(const std::function<std::pair<SeqVec, SeqVec>(Rng&)>& pair,
                 const std::function<SeqVec(const SeqVec&)>& f, const Norm& k, int n = 10000) {
  Rng rng(21);
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto [x, y] = pair(rng);
    const double d = distance(x, y, k);
    if (d < 1e-13) continue;
    best = std::max(best, distance(f(x), f(y), k) / d);
  }
  return best;
}

}  // namespace

TEST_CASE("tags carry the claimed constants") {
  const auto tags = retraction_tags();
  REQUIRE(tags.size() == 6);
  const double expected[] = {2, 1, 1, 1, 8, 3};
  for (std::size_t i = 0; i < tags.size(); ++i) {
    CHECK(tags[i].claimed_lipschitz == expected[i]);
    CHECK(tags[i].claimed_lipschitz >= 1.0);
  }
}

TEST_CASE("radial retraction") {
  CHECK(radial_retract(SeqVec::unit(1), 0.5, Norm::lp(2.0)) == SeqVec::unit(1, 0.5));
  const SeqVec inside({{1, 0.1}, {3, -0.2}});
  CHECK(radial_retract(inside, 0.5, Norm::lp(2.0)) == inside);
  for (const Norm& k : {Norm::sup(), Norm::lp(1.0), Norm::lp(2.0)}) {
    const double m = max_ratio(
        [](Rng& r) { return std::pair{3.0 * random_signed(r, 6), 3.0 * random_signed(r, 6)}; },
        [&](const SeqVec& x) { return radial_retract(x, 0.5, k); }, k);
    MESSAGE("radial " << k.name() << " measured " << m);
    CHECK(m <= 2.0);
  }
}

TEST_CASE("abs and positive part") {
  CHECK(abs_retract(SeqVec({{1, 1.0}, {2, -1.0}})) == SeqVec({{1, 1.0}, {2, 1.0}}));
  CHECK(abs_retract(SeqVec({{1, -1.0}}, -0.5)) == SeqVec({{1, 1.0}}, 0.5));
  CHECK(positive_part(SeqVec({{1, -1.0}, {2, 2.0}})) == SeqVec::unit(2, 2.0));
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const SeqVec x = random_signed(rng, 8, true);
    CHECK(abs_retract(x) == x);
    CHECK(positive_part(x) == x);
  }
  auto pairs = [](Rng& r) { return std::pair{random_signed(r, 8), random_signed(r, 8)}; };
  CHECK(max_ratio(pairs, abs_retract, L1) <= 1.0);
  CHECK(max_ratio(pairs, positive_part, Norm::lp(2.0)) <= 1.0);
}

TEST_CASE("clamp") {
  const double r = 0.25;
  CHECK(clamp_retract(SeqVec({{1, 2 * r}, {2, r / 2}}), r) == SeqVec({{1, r}, {2, r / 2}}));
  const SeqVec box({{1, 0.1}, {4, 0.25}});
  CHECK(clamp_retract(box, r) == box);
  try {
    clamp_retract(SeqVec::unit(2, -0.1), r);
    FAIL("expected domain-violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain_violation);
  }
  const double m = max_ratio(
      [](Rng& g) { return std::pair{random_signed(g, 8, true), random_signed(g, 8, true)}; },
      [&](const SeqVec& x) { return clamp_retract(x, r); }, Norm::sup());
  CHECK(m <= 1.0);
}

TEST_CASE("iota, mu and Q worked example") {
  const auto d = iota_mu_q(SeqVec({{1, 0.6}, {2, 0.3}}), 1.0);
  CHECK(d.iota == 2);
  // mu |t_2| + 0 = 1 - 0.9 by hand.
  CHECK(std::abs(d.mu - 1.0 / 3.0) <= 1e-15);
  CHECK(distance(d.q, SeqVec::unit(2, 0.1), L1) <= 1e-15);
  CHECK(q_map(SeqVec({{1, 0.6}, {2, 0.4}}), 1.0).is_zero());
  CHECK_THROWS_AS(iota_mu_q(SeqVec::unit(1, 0.2), 1.0), Error);
  CHECK_THROWS_AS(q_map(SeqVec::unit(1, 1.5), 1.0), Error);
}

TEST_CASE("iota and mu satisfy their defining conditions") {
  Rng rng(4);
  for (int i = 0; i < 5000; ++i) {
    const double r = 1.0;
    const SeqVec x = with_l1(rng, rng.uniform(0.5, 0.999));
    const auto d = iota_mu_q(x, r);
    const double gap = r - norm(x, L1);
    auto after = [&](Index j) {
      double s = 0.0;
      for (const auto& e : x.support()) {
        if (e.index > j) s += std::abs(e.value);
      }
      return s;
    };
    CHECK(after(d.iota) < gap);
    if (d.iota > 1) CHECK_FALSE(after(d.iota - 1) < gap);
    CHECK(d.mu > 0.0);
    CHECK(d.mu <= 1.0);
    CHECK(std::abs(d.mu * std::abs(x.coordinate(d.iota)) + after(d.iota) - gap) <= 1e-12);
  }
}

TEST_CASE("Q is 3-Lipschitz on sampled pairs") {
  const double m = max_ratio(
      [](Rng& g) {
        const SeqVec x = with_l1(g, g.uniform(0.5, 1.0));
        const double s = std::exp(g.uniform(std::log(1e-6), 0.0));
        SeqVec y = axpy(1.0 - s, x, s, with_l1(g, g.uniform(0.5, 1.0)));
        if (norm(y, L1) < 0.5) y = (0.5 / norm(y, L1)) * y;
        return std::pair{x, y};
      },
      [](const SeqVec& x) { return q_map(x, 1.0); }, L1);
  MESSAGE("Q measured " << m);
  CHECK(m <= 3.0);
}

TEST_CASE("l1 sphere retraction") {
  const double r = 0.75;
  CHECK(l1_sphere_retract(SeqVec(), r) == SeqVec::unit(1, r));
  CHECK_THROWS_AS(l1_sphere_retract(SeqVec::unit(1, 1.0), r), Error);
  Rng rng(8);
  for (int i = 0; i < 10000; ++i) {
    const SeqVec x = with_l1(rng, rng.uniform(0.0, r));
    const SeqVec y = l1_sphere_retract(x, r);
    REQUIRE(std::abs(norm(y, L1) - r) <= 1e-12);
    CHECK(distance(l1_sphere_retract(y, r), y, L1) <= 1e-12);
  }
  // Branches agree near r/2.
  for (int i = 0; i < 2000; ++i) {
    const SeqVec x = with_l1(rng, r / 2 + rng.uniform(0.0, 1e-9));
    const double gap = distance(l1_sphere_inner_branch(x, r), l1_sphere_outer_branch(x, r), L1);
    CHECK(gap <= 1e-8);
  }
  const SeqVec half = with_l1(rng, r / 2);
  CHECK(std::abs(norm(l1_sphere_retract(half, r), L1) - r) <= 1e-12);
}

TEST_CASE("l1 sphere retraction is 8-Lipschitz on sampled pairs") {
  const double r = 1.0;
  const double m = max_ratio(
      [&](Rng& g) {
        const SeqVec x = with_l1(g, g.uniform(0.0, r));
        const double s = std::exp(g.uniform(std::log(1e-6), 0.0));
        return std::pair{x, axpy(1.0 - s, x, s, with_l1(g, g.uniform(0.0, r)))};
      },
      [&](const SeqVec& x) { return l1_sphere_retract(x, r); }, L1);
  MESSAGE("sphere measured " << m);
  CHECK(m <= 8.0);
}
