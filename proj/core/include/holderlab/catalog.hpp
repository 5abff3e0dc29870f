#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "holderlab/domain.hpp"
#include "holderlab/seq_vec.hpp"

namespace holderlab {

/// A null sequence n -> s_n (n >= 1) selected by name.
struct SequenceRule {
  std::string name;
  std::function<double(Index)> at;
};

/// "geometric" (2^-n), "harmonic" (1/(n+1)), "inverse_square" (1/(n+1)^2).
SequenceRule parse_sequence_rule(const std::string& name);

enum class FixedPointKind { empty, singleton, unknown };

struct FixedPointSet {
  FixedPointKind kind = FixedPointKind::unknown;
  SeqVec point;
  /// Bound on ||z - T z|| caused by representing z with finite support.
  double residual = 0.0;

  static FixedPointSet empty() { return {FixedPointKind::empty, {}, 0.0}; }
  static FixedPointSet unknown() { return {FixedPointKind::unknown, {}, 0.0}; }
  static FixedPointSet singleton(SeqVec z, double residual = 0.0) {
    return {FixedPointKind::singleton, std::move(z), residual};
  }
};

std::string to_string(FixedPointKind kind);

/// n -> bound such that ||T^n x - T^n y|| <= bound * ||x - y||^alpha.
struct AsymptoticProfile {
  std::function<double(Index)> bound;
  std::string description;
};

struct DisplacementBound {
  double value;
  std::string formula;
};

/// Constants asserted for a construction.
struct ClaimProfile {
  double alpha = 0.5;
  double holder_constant = 1.0;
  /// The Hölder bound holds for every iterate T^n.
  bool uniform = false;
  /// Hölder claims that fail make the run fail; otherwise they are reported.
  bool holder_hard = true;
  bool uniform_hard = true;
  std::optional<AsymptoticProfile> asymptotic;
  std::optional<DisplacementBound> displacement;
  FixedPointSet fixed_points = FixedPointSet::unknown();
  /// Classical (exponent 1) Lipschitz constant, when one is asserted.
  std::optional<double> classical_lipschitz;
  /// Lower Lipschitz constant c with c ||x - y|| <= ||Tx - Ty||; report only.
  std::optional<double> lower_lipschitz;
  bool affine = false;
  bool isometry = false;
  /// ||F^n x - F^(n+1) x|| <= lambda^n along every orbit.
  std::optional<double> orbit_decay;
  /// lambda_scale of this map inherits the orbit-decay claim.
  bool scaling_decay = false;
  std::vector<std::string> notes;
};

using MapFn = std::function<SeqVec(const SeqVec&)>;
using IterateOracle = std::function<SeqVec(const SeqVec&, Index)>;

/// Explicit approximate fixed points x_n with their exact displacement.
struct WitnessFamily {
  std::function<SeqVec(Index)> point;
  std::function<double(Index)> displacement;
  std::string description;
};

struct MapInstance {
  std::string name;
  std::vector<std::pair<std::string, double>> params;
  std::map<std::string, std::string> rules;
  DomainSpec domain;
  Norm norm;
  MapFn apply;
  ClaimProfile claims;
  IterateOracle oracle;
  std::optional<WitnessFamily> witnesses;

  SeqVec operator()(const SeqVec& x) const { return apply(x); }
  /// n-fold application; n = 0 returns x.
  SeqVec iterate(const SeqVec& x, Index n) const;
  double param(const std::string& key) const;
  bool has_oracle() const noexcept { return static_cast<bool>(oracle); }
};

// Constructions. All throw invalid-parameter on violated constraints.

MapInstance prus_map(double alpha = 0.5);
MapInstance norming_map(double alpha = 0.5);
MapInstance baseline_c_map();
MapInstance shift_simplex_map(double p = 1.0, double alpha = 0.5, double lambda = 0.5);
MapInstance affine_mixing_map(double L = 2.0, double lambda = 0.75, double alpha = 0.5,
                              const std::string& gamma_rule = "geometric");
MapInstance deficiency_map(double p = 2.0, double alpha = 0.5);
MapInstance goebel_kirk_map(double alpha = 0.5);
MapInstance hyperconvex_map(double N = 4.0, double alpha = 0.5);
MapInstance c0_family_map(double delta = 0.5, double q = 0.25, double alpha = 0.9,
                          Index breadth = DomainSpec::kDefaultBreadth);
MapInstance affine_cube_map(double r = 0.125, const std::string& beta_rule = "harmonic",
                            double alpha = 0.5, double lambda = 0.5,
                            Index breadth = DomainSpec::kDefaultBreadth);
MapInstance renormed_l1_isometry(double alpha = 0.5);
MapInstance l1_ball_composite(double alpha = 0.5, double lambda = 0.5);

/// Radius r = (lambda / 8^theta)^(1/(1-theta)) / 4 with theta = sqrt(alpha).
double l1_composite_radius(double alpha, double lambda);
/// lambda = (1/2)^((2-alpha)/(1-alpha)) / 2, the largest value with
/// (2 lambda)^(1-alpha) 2^(2-alpha) <= 1.
double deficiency_lambda(double alpha);

// Combinators.

/// F_lambda(x) = F(lambda x). F's domain must be star-shaped about 0.
MapInstance lambda_scale(const MapInstance& F, double lambda);
/// T_eps(x) = c x + (1 - c) T(x), c = eps ||x||^alpha / (4 (1 + ||x||^alpha)).
/// T must be classically nonexpansive on a subset of the unit ball.
MapInstance holderize(const MapInstance& T, double epsilon, double alpha = 0.5);
/// x -> r F(R(x) / r) on the unit ball, R the radial retraction onto B(r).
MapInstance lift_to_ball(const MapInstance& F, double r, double alpha, double lambda);

/// The retractions as maps on their source sets, for configs.
MapInstance retraction_map(const std::string& name, double r, const Norm& norm);

// One-dimensional model for exponents alpha > 1.

struct ScalarRule {
  std::string name;
  std::function<double(double)> apply;
  double fixed_point;
};

/// "half_square": t -> t^2 / 2 on [0, 1], fixed point 0.
ScalarRule parse_scalar_rule(const std::string& name);

struct ScalarOrbit {
  std::vector<double> points;
  /// rho_k = |x_(k+1) - x_k|
  std::vector<double> displacements;
  /// e_k = |x_k - fixed point|
  std::vector<double> errors;
  /// Steps k with rho_(k+1) > L rho_k^alpha (beyond 1e-15 relative slack).
  Index recursion_violations = 0;
  bool converged = false;
  /// First k with rho_k < 1e-15, or -1.
  Index converged_at = -1;
};

/// Requires alpha > 1, 0 < L < 1, |T(x0) - x0| <= 1 and n >= 0.
ScalarOrbit banach_alpha_gt1_iterate(const ScalarRule& rule, double x0, double L, double alpha,
                                     Index n);

// Registry.

struct MapSpec {
  std::string name;
  std::map<std::string, double> params;
  std::map<std::string, std::string> rules;
  std::shared_ptr<MapSpec> inner;
  std::optional<Index> breadth;
};

struct ParamSchema {
  std::string name;
  double default_value;
  std::string constraint;
};

struct CatalogEntry {
  std::string name;
  std::string anchor;
  std::string formula;
  std::vector<ParamSchema> params;
  std::vector<ParamSchema> rules;  // default_value unused; constraint lists options
  std::string domain;
  std::string claims;
  bool oracle = false;
  bool combinator = false;
  std::vector<std::string> open_questions;
};

/// Every construction in a fixed order.
const std::vector<CatalogEntry>& catalog_entries();
/// Throws unknown-name with close-match suggestions.
const CatalogEntry& find_entry(const std::string& name);
/// Names within edit distance 3 (or sharing a prefix) of `name`.
std::vector<std::string> suggest_names(const std::string& name);

/// Builds an instance; unknown parameter names throw parse-error.
MapInstance make_map(const MapSpec& spec);

/// Default instances of every non-combinator construction.
std::vector<MapInstance> default_instances();

}  // namespace holderlab
