#pragma once

#include <span>
#include <string>

#include "holderlab/seq_vec.hpp"

namespace holderlab {

/// A named Lipschitz retraction with its claimed constant.
struct RetractionTag {
  std::string name;
  double claimed_lipschitz;
  std::string source_set;
  std::string target_set;
};

/// The six retractions in config order: radial, abs, positive_part, clamp,
/// l1_sphere, plus the auxiliary map Q used by l1_sphere.
std::span<const RetractionTag> retraction_tags();

/// Identity on the r-ball, x -> r x / ||x|| outside it. 2-Lipschitz in any norm.
SeqVec radial_retract(const SeqVec& x, double r, const Norm& k);

/// Coordinatewise |t_j|.
SeqVec abs_retract(const SeqVec& x);

/// Coordinatewise max(t_j, 0).
SeqVec positive_part(const SeqVec& x);

/// Coordinatewise min(t_j, r) on the positive cone; a negative coordinate
/// throws domain-violation.
SeqVec clamp_retract(const SeqVec& x, double r);

/// iota(x) = min{ j : sum_{k>j} |t_k| < r - ||x||_1 },
/// mu(x) chosen so that mu |t_iota| + sum_{k>iota} |t_k| = r - ||x||_1,
/// q = mu t_iota e_iota + sum_{k>iota} t_k e_k.
struct QDecomposition {
  Index iota;
  double mu;
  SeqVec q;
};

/// Requires r/2 <= ||x||_1 < r and a zero tail.
QDecomposition iota_mu_q(const SeqVec& x, double r);

/// Q on the closure of {r/2 <= ||x||_1 <= r}: the decomposition's q inside,
/// 0 on the sphere ||x||_1 = r.
SeqVec q_map(const SeqVec& x, double r);

/// Retraction of the l1 ball B(r) onto the sphere S(r):
///   (r - 2||x||) e_1 + 2 S(x)     if ||x||_1 <= r/2,
///   (I - Q)(x) + 2 S(Q(x))         if r/2 < ||x||_1 <= r,
/// with S the right shift. Inputs with ||x||_1 > r (beyond a relative 1e-12)
/// throw domain-violation.
SeqVec l1_sphere_retract(const SeqVec& x, double r);

/// Evaluates only the second branch; exposed to check branch agreement at
/// ||x||_1 = r/2.
SeqVec l1_sphere_outer_branch(const SeqVec& x, double r);
/// Evaluates only the first branch.
SeqVec l1_sphere_inner_branch(const SeqVec& x, double r);

}  // namespace holderlab
