#include <doctest.h>

#include <cmath>
#include <vector>

#include "holderlab/domain.hpp"
#include "holderlab/error.hpp"
#include "holderlab/rng.hpp"

using namespace holderlab;

namespace {

std::vector<DomainSpec> all_kinds() {
  return {
      DomainSpec(Ball{1.0, Norm::sup()}),          DomainSpec(Ball{0.5, Norm::lp(2.0)}),
      DomainSpec(Ball{1.0, Norm::lp(1.0)}),        DomainSpec(PositiveBall{1.0, Norm::lp(2.0)}),
      DomainSpec(PositiveBall{2.0, Norm::sup()}),  DomainSpec(Simplex{1.0, 0.125}),
      DomainSpec(Simplex{2.0, 0.3}),               DomainSpec(SubSimplex{1.0}),
      DomainSpec(CoefficientBox{0.125}),           DomainSpec(SigmaBand{0.5, 0.25}),
      DomainSpec(CInterval{0.25}),
  };
}

// Membership by direct constraint evaluation on coordinates 1..n plus tail.
bool ref_simplex(const SeqVec& x, double mass, Index n) {
  double s = 0.0;
  for (Index i = 1; i <= n; ++i) {
    if (x.coordinate(i) < 0.0) return false;
    s += x.coordinate(i);
  }
  return x.tail() == 0.0 && std::abs(s - mass) <= 1e-12;
}

}  // namespace

TEST_CASE("contains examples") {
  CHECK(contains(DomainSpec(Simplex{1.0, 0.125}), SeqVec::unit(1, 0.125)));
  CHECK_FALSE(contains(DomainSpec(Simplex{1.0, 0.125}), SeqVec::unit(1, 0.2)));
  CHECK(contains(DomainSpec(CInterval{0.25}), SeqVec(0.25)));
  CHECK_FALSE(contains(DomainSpec(CInterval{0.25}), SeqVec(0.3)));

  // The geometric witness is a band member; the truncated 2^-i with a zero
  // tail beyond breadth is judged only up to breadth.
  const DomainSpec band(SigmaBand{0.5, 0.25}, 1e-12, 64);
  std::vector<double> xs;
  for (Index i = 1; i <= 64; ++i) xs.push_back(std::pow(0.5, static_cast<double>(i)));
  CHECK(contains(band, SeqVec::from_dense(xs)));
  xs.resize(10);
  CHECK_FALSE(contains(band, SeqVec::from_dense(xs)));
}

TEST_CASE("constructor validation") {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::parse_error;
  };
  CHECK(code([] { DomainSpec(Ball{0.0, Norm::sup()}); }) == ErrorCode::invalid_parameter);
  CHECK(code([] { DomainSpec(SigmaBand{0.5, 0.5}); }) == ErrorCode::invalid_parameter);
  CHECK(code([] { DomainSpec(SigmaBand{1.5, 0.1}); }) == ErrorCode::invalid_parameter);
  CHECK(code([] { DomainSpec(Simplex{0.5, 1.0}); }) == ErrorCode::invalid_parameter);
  CHECK(code([] { DomainSpec(CInterval{0.25}, 1e-12, 0); }) == ErrorCode::invalid_budget);
  CHECK(code([] { sample(DomainSpec(CInterval{0.25}), 1, 0); }) == ErrorCode::invalid_budget);
}

TEST_CASE("SigmaBand floor chain") {
  const SigmaBand b{0.5, 0.25};
  for (Index i = 1; i < 64; ++i) {
    CHECK(band_floor(b, i + 1) <= (1.0 - b.delta) * band_floor(b, i));
  }
}

TEST_CASE("samples are members, deterministic and bounded by breadth") {
  for (const auto& K : all_kinds()) {
    CAPTURE(K.describe());
    for (std::uint64_t s = 0; s < 10000; ++s) {
      const SeqVec x = sample(K, s, 16);
      REQUIRE(contains(K, x));
      if (!std::holds_alternative<SigmaBand>(K.kind())) CHECK(x.last_index() <= 16);
    }
    CHECK(sample(K, 99, 16) == sample(K, 99, 16));
  }
}

TEST_CASE("simplex samples match an independent constraint check") {
  const DomainSpec K(Simplex{1.0, 0.3});
  for (std::uint64_t s = 0; s < 2000; ++s) {
    CHECK(ref_simplex(sample(K, s, 20), 0.3, 20));
  }
}

TEST_CASE("simplex sampler reaches faces of every dimension") {
  const DomainSpec K(Simplex{1.0, 1.0});
  std::vector<int> seen(9, 0);
  for (std::uint64_t s = 0; s < 4000; ++s) {
    seen[static_cast<std::size_t>(sample(K, s, 8).support().size())]++;
  }
  for (std::size_t d = 1; d <= 8; ++d) CHECK(seen[d] > 0);
}

TEST_CASE("convexity probe") {
  for (const auto& K : all_kinds()) {
    CAPTURE(K.describe());
    Rng rng(17);
    const int triples = std::holds_alternative<SigmaBand>(K.kind()) ? 2000 : 10000;
    for (int k = 0; k < triples; ++k) {
      const SeqVec x = sample(K, mix_seed(1, k), 12);
      const SeqVec y = sample(K, mix_seed(2, k), 12);
      const double t = rng.uniform();
      REQUIRE(contains(K, axpy(t, x, 1.0 - t, y)));
    }
  }
}

TEST_CASE("canonical points") {
  for (const auto& K : all_kinds()) {
    CAPTURE(K.describe());
    const auto pts = canonical_points(K);
    CHECK_FALSE(pts.empty());
    for (const auto& p : pts) CHECK(contains(K, p));
  }
  auto has = [](const std::vector<SeqVec>& pts, const SeqVec& x) {
    for (const auto& p : pts) {
      if (p == x) return true;
    }
    return false;
  };
  CHECK(has(canonical_points(DomainSpec(Simplex{1.0, 0.125})), SeqVec::unit(1, 0.125)));
  CHECK(has(canonical_points(DomainSpec(CInterval{0.25})), SeqVec()));
  CHECK(has(canonical_points(DomainSpec(CInterval{0.25})), SeqVec(0.25)));
  std::vector<double> geo;
  for (Index i = 1; i <= 64; ++i) geo.push_back(std::pow(0.5, static_cast<double>(i)));
  CHECK(has(canonical_points(DomainSpec(SigmaBand{0.5, 0.25})), SeqVec::from_dense(geo)));
}

TEST_CASE("star shape and diameters") {
  CHECK(DomainSpec(Ball{1.0, Norm::sup()}).star_shaped());
  CHECK(DomainSpec(CInterval{0.25}).star_shaped());
  CHECK_FALSE(DomainSpec(Simplex{1.0, 0.5}).star_shaped());
  CHECK(DomainSpec(Ball{1.0, Norm::lp(2.0)}).diameter(Norm::lp(2.0)).value() == 2.0);
}
