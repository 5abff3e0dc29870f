#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "holderlab/catalog.hpp"
#include "holderlab/error.hpp"

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

SeqVec ones(Index n, double v = 1.0) { return SeqVec::from_dense(std::vector<double>(n, v)); }

}  // namespace

TEST_CASE("prus") {
  const auto T = prus_map(0.5);
  CHECK(T(SeqVec()) == SeqVec::unit(1));
  CHECK(T.iterate(SeqVec(), 5) == ones(5));
  CHECK(T(SeqVec(1.0)) == SeqVec({{1, 0.0}}, 1.0));
  // x = 0, y = e1: |T0 - Te1|_sup / |e1|^alpha = 1.
  CHECK(distance(T(SeqVec()), T(SeqVec::unit(1)), Norm::sup()) == 1.0);
  CHECK(T.claims.fixed_points.kind == FixedPointKind::empty);
  CHECK(code_of([] { prus_map(1.0); }) == ErrorCode::invalid_parameter);
}

TEST_CASE("norming") {
  const auto T = norming_map(0.5);
  CHECK(norm(T(SeqVec()), Norm::lp(2.0)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(distance(T(SeqVec::unit(1)), SeqVec::unit(1), Norm::sup()) <= 1e-15);
  CHECK(T.iterate(SeqVec(), 2).coordinate(1) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
  CHECK(T.has_oracle());
  CHECK_FALSE(norming_map(0.3).has_oracle());
  CHECK(*T.claims.classical_lipschitz == doctest::Approx(0.5 * std::sqrt(2.0)));
  CHECK(T.claims.fixed_points.point == SeqVec::unit(1));
}

TEST_CASE("baseline_c") {
  const auto F = baseline_c_map();
  CHECK(F(SeqVec()) == SeqVec::unit(1));
  CHECK(F(SeqVec::unit(1)) == SeqVec({{1, 1.0}, {3, 1.0}}));
  CHECK(F(SeqVec(-0.5)) == SeqVec({{1, 1.0}, {2, 0.0}}, 0.5));
}

TEST_CASE("shift_simplex") {
  const auto F = shift_simplex_map(1.0, 0.5, 0.5);
  const auto& K = std::get<Simplex>(F.domain.kind());
  CHECK(K.mass == 0.125);
  const double r = K.mass;
  for (Index n : {1, 2, 7, 50}) {
    const SeqVec xn = ones(n, r / static_cast<double>(n));
    // Independent: x_n - F x_n has entries r/n at 1 and -r/n at n+1.
    CHECK(std::abs(distance(xn, F(xn), Norm::lp(1.0)) - 2.0 * r / static_cast<double>(n)) <=
          1e-15);
    CHECK(F.witnesses->displacement(n) == doctest::Approx(2.0 * r / static_cast<double>(n)));
  }
  CHECK(code_of([] { shift_simplex_map(0.5, 0.5, 0.5); }) == ErrorCode::invalid_parameter);
}

TEST_CASE("affine_mixing") {
  const auto T = affine_mixing_map(2.0, 0.75, 0.5, "geometric");
  const double m = std::get<Simplex>(T.domain.kind()).mass;
  CHECK(m == doctest::Approx(0.5 * std::pow(0.375, 2.0)));
  const SeqVec y = T(SeqVec::unit(1, m));
  CHECK(y.coordinate(1) == doctest::Approx(m * 0.5));
  CHECK(y.coordinate(2) == doctest::Approx(m * 0.5));
  for (std::uint64_t s = 0; s < 200; ++s) {
    const SeqVec x = sample(T.domain, s);
    CHECK(std::abs(norm(T(x), Norm::lp(1.0)) - norm(x, Norm::lp(1.0))) <= 1e-14);
  }
  CHECK(code_of([] { affine_mixing_map(2.0, 0.4, 0.5, "geometric"); }) ==
        ErrorCode::invalid_parameter);
  CHECK(code_of([] { affine_mixing_map(2.0, 0.75, 0.5, "nope"); }) == ErrorCode::unknown_name);
}

TEST_CASE("deficiency") {
  // Largest lambda with (2 lambda)^(1/2) 2^(3/2) <= 1 is 1/16.
  CHECK(deficiency_lambda(0.5) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
  const auto T = deficiency_map(2.0, 0.5);
  CHECK(T.claims.displacement->value == doctest::Approx(0.125).epsilon(1e-15));
  const double lam = deficiency_lambda(0.5);
  CHECK(distance(T(SeqVec::unit(1, lam)), SeqVec::unit(2, lam), Norm::sup()) <= 1e-18);
  CHECK(distance(SeqVec::unit(1, lam), T(SeqVec::unit(1, lam)), Norm::lp(2.0)) ==
        doctest::Approx(lam * std::sqrt(2.0)));
  for (double a : {0.2, 0.5, 0.8}) {
    const double l = deficiency_lambda(a);
    CHECK(std::pow(2.0 * l, 1.0 - a) * std::pow(2.0, 2.0 - a) == doctest::Approx(1.0));
  }
}

TEST_CASE("goebel_kirk") {
  const auto T = goebel_kirk_map(0.5);
  CHECK(T(SeqVec()).is_zero());
  CHECK(T(SeqVec::unit(1)) == SeqVec::unit(2));
  const auto& prof = *T.claims.asymptotic;
  // kappa_n as an explicit product.
  for (Index n = 1; n <= 20; ++n) {
    double kappa = 2.0;
    for (Index i = 2; i <= n; ++i) kappa *= 1.0 - 1.0 / static_cast<double>(i * i);
    CHECK(prof.bound(n) == doctest::Approx(kappa * std::sqrt(2.0)).epsilon(1e-14));
  }
  CHECK(prof.bound(2) == doctest::Approx(1.5 * std::sqrt(2.0)));
}

TEST_CASE("hyperconvex") {
  const auto F = hyperconvex_map(4.0, 0.5);
  CHECK(F(SeqVec()) == SeqVec::unit(1, 0.25));
  CHECK(F(SeqVec(0.25)) == SeqVec({{2, 0.125}}, 0.25));
  const SeqVec x(0.25);
  CHECK(distance(F.oracle(x, 3), F.iterate(x, 3), Norm::sup()) <= 1e-14);
  try {
    hyperconvex_map(2.0, 0.5);
    FAIL("expected invalid-parameter");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_parameter);
    CHECK(std::string(e.what()).find("2 <= N^alpha") != std::string::npos);
  }
  CHECK(code_of([] { hyperconvex_map(4.5, 0.9); }) == ErrorCode::invalid_parameter);
}

TEST_CASE("lambda_scale") {
  const auto F = lambda_scale(hyperconvex_map(4.0, 0.5), 0.5);
  CHECK(distance(SeqVec(), F(SeqVec()), Norm::sup()) == 0.25);
  CHECK(*F.claims.orbit_decay == 0.5);
  CHECK(code_of([] { lambda_scale(shift_simplex_map(), 0.5); }) ==
        ErrorCode::invalid_composition);
}

TEST_CASE("c0_family") {
  const double e = std::exp(1.0);
  const auto T = c0_family_map(0.5, 0.25, 0.9, 64);
  CHECK(T.claims.displacement->value == doctest::Approx(0.5 * 0.1 / (0.9 * e)).epsilon(1e-14));
  std::vector<double> w;
  for (Index i = 1; i <= 64; ++i) w.push_back(std::pow(0.5, static_cast<double>(i)));
  const SeqVec xs = SeqVec::from_dense(w);
  const double d = distance(xs, T(xs), Norm::sup());
  // Coordinate i+1 of the difference is (1/2)(2^-(0.9 i) - 2^-i); max at i = 2.
  CHECK(d == doctest::Approx(0.5 * (std::pow(2.0, -1.8) - 0.25)).epsilon(1e-13));
  CHECK(d == doctest::Approx(0.01859).epsilon(1e-3));

  const auto T1 = c0_family_map(0.5, 0.25, 1.0, 64);
  CHECK(distance(xs, T1(xs), Norm::sup()) <= std::pow(0.5, 65) + 1e-18);

  // sup_{0<t<1} t^alpha |ln t| on a grid agrees with 1/(e alpha).
  for (double a : {0.5, 0.9, 0.99}) {
    double best = 0.0;
    for (double t = 1e-6; t < 1.0; t += 1e-6) best = std::max(best, std::pow(t, a) * -std::log(t));
    CHECK(best == doctest::Approx(1.0 / (e * a)).epsilon(1e-9));
  }
  // Continuity in alpha on a band member.
  const SeqVec x = sample(T.domain, 3);
  const auto Ta = c0_family_map(0.5, 0.25, 0.8), Tb = c0_family_map(0.5, 0.25, 0.85);
  CHECK(distance(Ta(x), Tb(x), Norm::sup()) <= 0.25 * 0.05 + 1e-15);
}

TEST_CASE("affine_cube") {
  const auto F = affine_cube_map(0.125, "harmonic", 0.5, 0.5, 64);
  for (Index m : {1, 3, 10}) {
    const SeqVec xm = ones(m, 0.125);
    CHECK(distance(xm, F(xm), Norm::sup()) == 0.125 / static_cast<double>(m + 2));
  }
  CHECK(code_of([] { affine_cube_map(0.3, "harmonic", 0.5, 0.5); }) ==
        ErrorCode::invalid_parameter);
}

TEST_CASE("renormed_l1") {
  const auto T = renormed_l1_isometry();
  CHECK(T(SeqVec()) == SeqVec::unit(1));
  CHECK(T(SeqVec::unit(1)) == SeqVec::unit(2));
  CHECK(distance(T(SeqVec()), T(SeqVec::unit(1)), Norm::max_pos_neg_l1()) == 1.0);
}

TEST_CASE("l1_ball_composite") {
  const auto T = l1_ball_composite(0.5, 0.5);
  const double theta = std::sqrt(0.5);
  const double r = 0.25 * std::pow(0.5 / std::pow(8.0, theta), 1.0 / (1.0 - theta));
  CHECK(l1_composite_radius(0.5, 0.5) == doctest::Approx(r).epsilon(1e-15));
  CHECK(distance(T(SeqVec()), SeqVec::unit(2, r), Norm::lp(1.0)) <= 1e-15);
  for (Index n : {1, 4, 9}) {
    const SeqVec xn = ones(n, r / static_cast<double>(n));
    CHECK(distance(T(xn), shift_right(xn), Norm::lp(1.0)) <= 1e-15);
    CHECK(std::abs(distance(xn, T(xn), Norm::lp(1.0)) - 2.0 * r / static_cast<double>(n)) <=
          1e-14);
  }
  CHECK_FALSE(T.claims.holder_hard);
}

TEST_CASE("holderize") {
  const auto base = baseline_c_map();
  const auto T = holderize(base, 0.1, 0.5);
  CHECK(T(SeqVec()) == base(SeqVec()));
  for (std::uint64_t s = 0; s < 500; ++s) {
    const SeqVec x = sample(T.domain, s);
    CHECK(distance(T(x), base(x), Norm::sup()) <= 0.1);
  }
  CHECK(code_of([] { holderize(baseline_c_map(), 1.5); }) == ErrorCode::invalid_parameter);
}

TEST_CASE("lift_to_ball") {
  const auto T = lift_to_ball(baseline_c_map(), 1.0 / 16.0, 0.5, 0.5);
  CHECK(T(SeqVec()) == SeqVec::unit(1, 1.0 / 16.0));
  CHECK(code_of([] { lift_to_ball(baseline_c_map(), 0.1, 0.5, 0.5); }) ==
        ErrorCode::invalid_parameter);
}

TEST_CASE("alpha > 1 scalar model") {
  const auto rule = parse_scalar_rule("half_square");
  const auto o = banach_alpha_gt1_iterate(rule, 1.0, 0.5, 2.0, 4);
  REQUIRE(o.points.size() >= 4);
  CHECK(o.points[0] == 1.0);
  CHECK(o.points[1] == 0.5);
  CHECK(o.points[2] == 0.125);
  CHECK(o.points[3] == 1.0 / 128.0);
  // The distance to the fixed point obeys e_(k+1) = e_k^2 / 2 exactly.
  for (std::size_t k = 0; k + 1 < o.errors.size(); ++k) {
    CHECK(o.errors[k + 1] == o.errors[k] * o.errors[k] / 2.0);
  }
  // t^2/2 is not 2-Hölder with constant 1/2 on [0, 1], so the displacement
  // bound rho_(k+1) <= rho_k^2 / 2 fails at the first steps: rho_0 = 1/2,
  // rho_1 = 3/8.
  CHECK(o.displacements[0] == 0.5);
  CHECK(o.displacements[1] == 0.375);
  CHECK(o.recursion_violations > 0);
  CHECK(rule.apply(0.0) == 0.0);
  CHECK(code_of([&] { banach_alpha_gt1_iterate(rule, 1.0, 0.5, 0.5, 4); }) ==
        ErrorCode::invalid_parameter);
}

TEST_CASE("registry") {
  const auto& entries = catalog_entries();
  CHECK(entries.size() >= 15);
  CHECK(find_entry("hyperconvex").name == "hyperconvex");
  try {
    find_entry("hyperconvx");
    FAIL("expected unknown-name");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unknown_name);
    CHECK(std::string(e.what()).find("hyperconvex") != std::string::npos);
  }
  MapSpec spec{"hyperconvex", {{"N", 9.0}, {"alpha", 0.5}}, {}, nullptr, std::nullopt};
  CHECK(make_map(spec).param("N") == 9.0);
  spec.params["bogus"] = 1.0;
  CHECK(code_of([&] { make_map(spec); }) == ErrorCode::parse_error);
  MapSpec scaled{"lambda_scale", {{"lambda", 0.9}}, {},
                 std::make_shared<MapSpec>(MapSpec{"hyperconvex", {}, {}, nullptr, std::nullopt}),
                 std::nullopt};
  CHECK(make_map(scaled)(SeqVec()) == SeqVec::unit(1, 0.25));
  CHECK(default_instances().size() == 12);
  MapSpec retract{"l1_sphere", {{"r", 0.5}}, {}, nullptr, std::nullopt};
  CHECK(make_map(retract)(SeqVec()) == SeqVec::unit(1, 0.5));
}
