#include <doctest.h>

#include <cmath>
#include <vector>

#include "holderlab/error.hpp"
#include "holderlab/rng.hpp"
#include "holderlab/seq_vec.hpp"

using namespace holderlab;

namespace {

// Dense reference: coordinates 1..n followed by the tail.
struct Dense {
  std::vector<double> v;
  double tail = 0.0;
};

Dense dense(const SeqVec& x, Index n) {
  Dense d;
  for (Index i = 1; i <= n; ++i) d.v.push_back(x.coordinate(i));
  d.tail = x.tail();
  return d;
}

double ref_norm(const Dense& d, const std::string& kind, double p = 1.0) {
  if (kind == "sup") {
    double m = std::abs(d.tail);
    for (double t : d.v) m = std::max(m, std::abs(t));
    return m;
  }
  if (kind == "lp") {
    double s = 0.0;
    for (double t : d.v) s += std::pow(std::abs(t), p);
    return std::pow(s, 1.0 / p);
  }
  double pos = 0.0, neg = 0.0;
  for (double t : d.v) (t > 0 ? pos : neg) += std::abs(t);
  return std::max(pos, neg);
}

SeqVec random_vec(Rng& rng, bool with_tail) {
  std::vector<Entry> e;
  const Index n = rng.uniform_int(0, 12);
  for (Index i = 1; i <= n; ++i) {
    if (rng.bernoulli(0.7)) e.push_back({i, rng.uniform(-2.0, 2.0)});
  }
  return SeqVec(std::move(e), with_tail ? rng.uniform(-1.0, 1.0) : 0.0);
}

}  // namespace

TEST_CASE("coordinate follows the representation rule") {
  CHECK(SeqVec({{1, 0.5}}).coordinate(1) == 0.5);
  CHECK(SeqVec({{1, 0.5}}, 0.25).coordinate(7) == 0.25);
  CHECK(SeqVec({{2, 1.0}}).coordinate(1) == 0.0);
  CHECK_THROWS_AS(SeqVec().coordinate(0), Error);
  try {
    SeqVec().coordinate(0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_index);
  }
}

TEST_CASE("canonical form drops entries equal to the tail") {
  const SeqVec x({{1, 1.0}, {3, 0.5}, {5, 1.0}}, 1.0);
  REQUIRE(x.support().size() == 1);
  CHECK(x.support()[0] == Entry{3, 0.5});
  CHECK(SeqVec({{4, 2.0}, {1, 3.0}}) == SeqVec({{1, 3.0}, {4, 2.0}}));
  CHECK_THROWS_AS(SeqVec({{1, 1.0}, {1, 2.0}}), Error);
  CHECK_THROWS_AS(SeqVec({{0, 1.0}}), Error);
}

TEST_CASE("norm examples") {
  CHECK(norm(SeqVec({{1, 1.0}, {2, -1.0}}), Norm::max_pos_neg_l1()) == 1.0);
  CHECK(norm(SeqVec({{1, 0.6}, {2, 0.3}}), Norm::lp(1.0)) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(norm(SeqVec({{1, 0.9}}, 0.25), Norm::sup()) == 0.9);
  CHECK(norm(SeqVec(0.25), Norm::sup()) == 0.25);
  try {
    norm(SeqVec(0.5), Norm::lp(2.0));
    FAIL("expected not-in-space");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_in_space);
  }
  CHECK_THROWS_AS(norm(SeqVec(0.5), Norm::max_pos_neg_l1()), Error);
  CHECK_THROWS_AS(Norm::lp(0.5), Error);
}

TEST_CASE("axpy examples") {
  CHECK(axpy(1.0, SeqVec::unit(1), -1.0, SeqVec::unit(1)).is_zero());
  CHECK(axpy(0.5, SeqVec::unit(1), 0.5, SeqVec::unit(2)) == SeqVec({{1, 0.5}, {2, 0.5}}));
  const SeqVec r = axpy(1.0, SeqVec(1.0), -1.0, SeqVec({{1, 0.0}}, 1.0));
  CHECK(r == SeqVec::unit(1));
  CHECK(r.tail() == 0.0);
}

TEST_CASE("tail limit and shift") {
  const std::vector<double> ones(5, 1.0);
  CHECK(tail_limit(SeqVec::from_dense(ones)) == 0.0);
  CHECK(tail_limit(SeqVec(1.0)) == 1.0);
  CHECK(tail_limit(SeqVec({{1, 0.3}}, 0.25)) == 0.25);
  CHECK(shift_right(SeqVec({{1, 2.0}}, 0.5), 7.0) == SeqVec({{1, 7.0}, {2, 2.0}}, 0.5));
}

TEST_CASE("c basis expansion examples and round trip") {
  auto e = c_basis_coefficients(SeqVec(1.0));
  CHECK(e.e0_coeff == 1.0);
  CHECK(e.coeffs.is_zero());
  e = c_basis_coefficients(SeqVec::unit(1));
  CHECK(e.e0_coeff == 0.0);
  CHECK(e.coeffs == SeqVec::unit(1));
  e = c_basis_coefficients(SeqVec({{1, 0.0}}, 1.0));
  CHECK(e.e0_coeff == 1.0);
  CHECK(e.coeffs == SeqVec::unit(1, -1.0));

  Rng rng(11);
  for (int k = 0; k < 2000; ++k) {
    // Dyadic values keep the subtraction exact, so the round trip is bit-equal.
    std::vector<Entry> ent;
    for (Index i = 1; i <= 8; ++i) {
      if (rng.bernoulli(0.5)) ent.push_back({i, std::ldexp(static_cast<double>(rng.uniform_int(-64, 64)), -5)});
    }
    const SeqVec x(ent, std::ldexp(static_cast<double>(rng.uniform_int(-32, 32)), -5));
    CHECK(from_c_basis(c_basis_coefficients(x)) == x);
  }
}

TEST_CASE("literal round trip") {
  const SeqVec x({{1, 0.1}, {4, -2.5}}, 0.25);
  CHECK(to_literal(x) == "{1:0.1, 4:-2.5; tail:0.25}");
  CHECK(parse_literal(to_literal(x)) == x);
  CHECK(parse_literal("{}") == SeqVec());
  CHECK(parse_literal("{; tail:1}") == SeqVec(1.0));
  CHECK_THROWS_AS(parse_literal("{2:1, 1:1}"), Error);
  CHECK_THROWS_AS(parse_literal("1:1"), Error);
  Rng rng(5);
  for (int k = 0; k < 500; ++k) {
    const SeqVec y = random_vec(rng, true);
    CHECK(parse_literal(to_literal(y)) == y);
  }
}

TEST_CASE("structural equality matches coordinate probes") {
  Rng rng(3);
  for (int k = 0; k < 2000; ++k) {
    const SeqVec x = random_vec(rng, rng.bernoulli(0.5));
    // Rebuild from coordinates in reverse order with duplicates of the tail.
    std::vector<Entry> e;
    for (Index i = 16; i >= 1; --i) e.push_back({i, x.coordinate(i)});
    const SeqVec y(e, x.tail());
    CHECK(x == y);
    CHECK(SeqVec(std::vector<Entry>(x.support().begin(), x.support().end()), x.tail()) == x);
  }
}

TEST_CASE("norms agree with a dense reference and satisfy the axioms") {
  Rng rng(7);
  const Norm kinds[] = {Norm::sup(), Norm::lp(1.0), Norm::lp(2.0), Norm::lp(3.5),
                        Norm::max_pos_neg_l1()};
  for (int k = 0; k < 10000; ++k) {
    for (const Norm& n : kinds) {
      const bool tail = n.kind() == Norm::Kind::sup && rng.bernoulli(0.5);
      const SeqVec x = random_vec(rng, tail), y = random_vec(rng, tail);
      const Dense dx = dense(x, 12);
      const double ref = n.kind() == Norm::Kind::sup  ? ref_norm(dx, "sup")
                         : n.kind() == Norm::Kind::lp ? ref_norm(dx, "lp", n.p())
                                                      : ref_norm(dx, "mpn");
      const double nx = norm(x, n);
      CHECK(nx == doctest::Approx(ref).epsilon(1e-13));
      CHECK(nx >= 0.0);
      CHECK((nx == 0.0) == x.is_zero());
      const double a = rng.uniform(-3.0, 3.0);
      CHECK(std::abs(norm(a * x, n) - std::abs(a) * nx) <= 1e-14 * std::abs(a) * nx + 1e-300);
      CHECK(norm(x + y, n) <= nx + norm(y, n) + 1e-12);
    }
  }
}

TEST_CASE("max_pos_neg_l1 sits between half the l1 norm and the l1 norm") {
  Rng rng(9);
  for (int k = 0; k < 10000; ++k) {
    const SeqVec x = random_vec(rng, false);
    const double m = norm(x, Norm::max_pos_neg_l1());
    const double l1 = norm(x, Norm::lp(1.0));
    CHECK(m <= l1 + 1e-15);
    CHECK(l1 <= 2.0 * m + 1e-15);
  }
}

TEST_CASE("parse_norm") {
  CHECK(parse_norm("sup") == Norm::sup());
  CHECK(parse_norm("l2") == Norm::lp(2.0));
  CHECK(parse_norm("l1.5") == Norm::lp(1.5));
  CHECK(parse_norm("max_pos_neg_l1") == Norm::max_pos_neg_l1());
  CHECK_THROWS_AS(parse_norm("l"), Error);
  CHECK_THROWS_AS(parse_norm("l0.5"), Error);
}

TEST_CASE("mix_seed is deterministic and spreads streams") {
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
  CHECK(mix_seed(1, 2) != mix_seed(1, 3));
  CHECK(mix_seed(1, 2) != mix_seed(2, 2));
  Rng a(42), b(42);
  for (int k = 0; k < 100; ++k) CHECK(a.uniform() == b.uniform());
}
