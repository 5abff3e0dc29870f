#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "holderlab/seq_vec.hpp"

namespace holderlab {

/// Closed ball of radius r in the given norm.
struct Ball {
  double r;
  Norm norm;
};

/// Nonnegative part of Ball(r, norm).
struct PositiveBall {
  double r;
  Norm norm;
};

/// {t_i >= 0, sum t_i = mass} inside l_p.
struct Simplex {
  double p;
  double mass;
};

/// {t_i >= 0, sum t_i <= mass_cap} inside l_1.
struct SubSimplex {
  double mass_cap;
};

/// {0 <= t_n <= r} inside c_0.
struct CoefficientBox {
  double r;
};

/// {t_1 = 1 - delta, q^i <= t_i <= 1 - delta} inside c_0, where the floor
/// sigma_i = q^i satisfies sigma_{i+1} <= (1 - delta) sigma_i.
struct SigmaBand {
  double delta;
  double q;
};

/// {0 <= t_n <= cap} inside c; the tail counts as a coordinate.
struct CInterval {
  double cap;
};

using DomainKind =
    std::variant<Ball, PositiveBall, Simplex, SubSimplex, CoefficientBox, SigmaBand, CInterval>;

/// A named convex set K together with the membership tolerance and the
/// truncation breadth used when sampling it.
///
/// SigmaBand has no finitely supported members. Its members are stored with
/// explicit support on 1..breadth and tail 0, and membership checks the band
/// on indices <= breadth plus any stored index beyond it; unstored deeper
/// coordinates are not checked.
class DomainSpec {
 public:
  static constexpr double kDefaultTol = 1e-12;
  static constexpr Index kDefaultBreadth = 64;

  explicit DomainSpec(DomainKind kind, double tol = kDefaultTol,
                      Index breadth = kDefaultBreadth);

  const DomainKind& kind() const noexcept { return kind_; }
  double tol() const noexcept { return tol_; }
  Index breadth() const noexcept { return breadth_; }

  DomainSpec with_breadth(Index breadth) const { return DomainSpec(kind_, tol_, breadth); }
  DomainSpec with_tol(double tol) const { return DomainSpec(kind_, tol, breadth_); }

  /// "ball", "positive_ball", "simplex", "sub_simplex", "coefficient_box",
  /// "sigma_band", "c_interval".
  std::string kind_name() const;
  /// Human-readable set description with parameters.
  std::string describe() const;
  /// The norm the set is measured in.
  Norm natural_norm() const;
  /// True when 0 is a member and K is closed under x -> s*x for s in [0, 1].
  bool star_shaped() const noexcept;
  /// Diameter (or an upper bound for it) in the given norm, when known in
  /// closed form; nullopt otherwise.
  std::optional<double> diameter(const Norm& in) const;

 private:
  DomainKind kind_;
  double tol_;
  Index breadth_;
};

/// sigma_i = q^i for a SigmaBand.
double band_floor(const SigmaBand& band, Index i);

bool contains(const DomainSpec& domain, const SeqVec& x);

/// Deterministic member of K with support inside 1..breadth (SigmaBand
/// members always fill 1..max(breadth, domain.breadth())).
SeqVec sample(const DomainSpec& domain, std::uint64_t seed, Index breadth);
inline SeqVec sample(const DomainSpec& domain, std::uint64_t seed) {
  return sample(domain, seed, domain.breadth());
}

/// Small deterministic set of members: vertices, barycenters and the named
/// witnesses of each set.
std::vector<SeqVec> canonical_points(const DomainSpec& domain);

}  // namespace holderlab
