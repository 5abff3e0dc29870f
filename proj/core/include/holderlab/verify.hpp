#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "holderlab/catalog.hpp"

namespace holderlab {

enum class CheckKind {
  holder_ratio,
  invariance,
  orbit,
  displacement,
  uniform_profile,
  asymptotic_profile,
  oracle_compare,
  approx_fixed_set,
  fixed_point,
  constancy,
};

enum class Verdict { pass, fail, report_only };

/// How the measured value relates to the true quantity.
enum class Direction {
  /// Sup over samples: never above the true constant.
  lower_bound,
  /// Min over witnesses: never below the true infimum.
  upper_bound,
  /// Deterministic evaluation (oracle deviations, counts).
  exact,
};

std::string to_string(CheckKind kind);
std::string to_string(Verdict verdict);
std::string to_string(Direction direction);
/// Throws invalid-check for unknown names.
CheckKind parse_check_kind(const std::string& name);

enum class DisplacementStrategy { sample_min, orbit_min, lambda_scaling, cesaro_affine };
std::string to_string(DisplacementStrategy strategy);
/// Throws invalid-strategy for unknown names.
DisplacementStrategy parse_strategy(const std::string& name);

struct CheckRequest {
  CheckKind kind = CheckKind::holder_ratio;
  /// Points for invariance, orbit, approx_fixed_set, oracle_compare and
  /// constancy; a per-kind default when unset.
  std::optional<Index> samples;
  /// Pairs for ratio estimates.
  Index pairs = 10000;
  Index iterate = 1;
  std::vector<Index> n_list{1, 2, 5, 10, 20};
  Index n_max = 20;
  std::uint64_t seed = 0;
  /// Relative slack for ratio checks (default 1e-9), absolute slack
  /// otherwise (default 1e-12).
  std::optional<double> tolerance;
  DisplacementStrategy strategy = DisplacementStrategy::sample_min;
  Index budget = 1000;
  /// displacement: pass iff the estimate is at most this value.
  std::optional<double> target;
  double delta = 1.0;
  std::optional<SeqVec> x0;
  /// Ratio exponent; defaults to the claimed alpha. 1 measures the
  /// classical Lipschitz constant.
  std::optional<double> exponent;
  /// Worker threads; 0 picks the hardware concurrency (capped at 8).
  unsigned threads = 0;
};

struct NamedPoint {
  std::string label;
  SeqVec point;
};

struct CheckRecord {
  CheckKind kind;
  std::string label;
  /// NaN when the check asserts no value.
  double claimed;
  double measured;
  Verdict verdict;
  Direction direction;
  std::vector<NamedPoint> witnesses;
  std::vector<std::pair<std::string, double>> details;
  std::vector<std::pair<std::string, std::string>> notes;
  double runtime_ms = 0.0;
  /// For report-only rows that still carry a claim: whether the
  /// measurement stayed within it. Strict runs fail on false.
  std::optional<bool> claim_met;

  double detail(const std::string& key) const;
};

// Ratio estimation.

using Sampler = std::function<SeqVec(std::uint64_t)>;

struct RatioEstimate {
  double sup_ratio = 0.0;
  double inf_ratio = 0.0;
  SeqVec sup_x, sup_y;
  SeqVec inf_x, inf_y;
  Index evaluated = 0;
  Index skipped = 0;
};

struct RatioProblem {
  MapFn map;
  Sampler sampler;
  /// Fixed points whose pairs are always evaluated.
  std::vector<SeqVec> anchors;
  Norm norm = Norm::sup();
  double exponent = 1.0;
  /// Draw every other pair as a near pair; off gives independent pairs only.
  bool near_pairs = true;
};

/// Sup and inf over sampled pairs of ||f^n x - f^n y|| / ||x - y||^exponent
/// for each n in n_list (n >= 1). Half the random pairs are independent
/// draws, half are near pairs y = x + s (z - x) with s log-uniform in
/// [1e-6, 1]. Pairs closer than 1e-13 are skipped. The result does not
/// depend on the worker count.
std::vector<RatioEstimate> estimate_ratio_profile(const RatioProblem& problem,
                                                  const std::vector<Index>& n_list, Index pairs,
                                                  std::uint64_t seed, unsigned threads = 0);

RatioProblem ratio_problem(const MapInstance& T, std::optional<double> exponent = std::nullopt);

RatioEstimate estimate_holder_ratio(const MapInstance& T, Index pairs, std::uint64_t seed,
                                    Index iterate = 1,
                                    std::optional<double> exponent = std::nullopt,
                                    unsigned threads = 0);

// Orbits and displacement.

struct OrbitTrace {
  std::vector<SeqVec> iterates;
  /// ||T^k x0 - T^(k+1) x0|| for k < n
  std::vector<double> displacements;
  double max_norm = 0.0;
};

/// x0 outside the domain throws domain-violation.
OrbitTrace orbit(const MapInstance& T, const SeqVec& x0, Index n);

struct DisplacementEstimate {
  double upper = 0.0;
  SeqVec witness;
  Index evaluated = 0;
  std::vector<std::pair<std::string, double>> details;
};

/// Upper estimate of inf ||x - T x|| over the domain.
DisplacementEstimate estimate_displacement(const MapInstance& T, DisplacementStrategy strategy,
                                           Index budget, std::uint64_t seed,
                                           std::optional<SeqVec> x0 = std::nullopt);

/// Lambda schedule used by lambda_scaling.
inline constexpr double kLambdaSchedule[] = {0.5, 0.9, 0.99, 0.999};
inline constexpr double kLambdaTarget = 1e-4;
inline constexpr Index kLambdaStepCap = 10000;

// Checks.

CheckRecord check_holder_ratio(const MapInstance& T, const CheckRequest& req);
CheckRecord check_invariance(const MapInstance& T, const CheckRequest& req);
CheckRecord check_orbit(const MapInstance& T, const CheckRequest& req);
CheckRecord check_displacement(const MapInstance& T, const CheckRequest& req);
CheckRecord check_uniform_profile(const MapInstance& T, const CheckRequest& req);
CheckRecord check_asymptotic_profile(const MapInstance& T, const CheckRequest& req);
CheckRecord approx_fixed_set_check(const MapInstance& T, const CheckRequest& req);
CheckRecord oracle_compare(const MapInstance& T, const CheckRequest& req);
CheckRecord check_fixed_point(const MapInstance& T, const CheckRequest& req);
/// For claimed alpha > 1: all outputs on canonical points and samples agree.
CheckRecord constancy_probe(const MapInstance& T, const CheckRequest& req);

CheckRecord run_check(const MapInstance& T, const CheckRequest& req);

}  // namespace holderlab
