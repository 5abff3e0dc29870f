#include "holderlab/retraction.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "holderlab/error.hpp"

namespace holderlab {

namespace {

const Norm kL1 = Norm::lp(1.0);
constexpr double kBoundaryRel = 1e-12;

void require_l1(const SeqVec& x, const char* op) {
  if (x.tail() != 0.0) {
    throw Error(ErrorCode::not_in_space, std::string(op) + " needs an l1 vector (tail 0)");
  }
}

}  // namespace

std::span<const RetractionTag> retraction_tags() {
  static const std::array<RetractionTag, 6> tags{{
      {"radial", 2.0, "B_X", "B_X(r)"},
      {"abs", 1.0, "X", "positive cone"},
      {"positive_part", 1.0, "X", "positive cone"},
      {"clamp", 1.0, "positive cone", "coefficient box [0, r]"},
      {"l1_sphere", 8.0, "B_l1(r)", "S_l1(r)"},
      {"q", 3.0, "closure of {r/2 <= ||x||_1 < r}", "B_l1"},
  }};
  return tags;
}

SeqVec radial_retract(const SeqVec& x, double r, const Norm& k) {
  if (!(r > 0.0)) throw Error(ErrorCode::invalid_parameter, "radial retraction needs r > 0");
  const double len = norm(x, k);
  if (len <= r) return x;
  return (r / len) * x;
}

SeqVec abs_retract(const SeqVec& x) {
  return x.transform([](double v) { return std::abs(v); });
}

SeqVec positive_part(const SeqVec& x) {
  return x.transform([](double v) { return v > 0.0 ? v : 0.0; });
}

SeqVec clamp_retract(const SeqVec& x, double r) {
  if (x.tail() < 0.0) throw Error(ErrorCode::domain_violation, "clamp needs a nonnegative tail");
  for (const auto& e : x.support()) {
    if (e.value < 0.0) {
      throw Error(ErrorCode::domain_violation,
                  "clamp needs nonnegative coordinates; t_" + std::to_string(e.index) + " = " +
                      format_double(e.value));
    }
  }
  return x.transform([r](double v) { return std::min(v, r); });
}

QDecomposition iota_mu_q(const SeqVec& x, double r) {
  require_l1(x, "iota_mu_q");
  const auto entries = x.support();
  // suffix[k] = sum of |t| over entries strictly after position k.
  std::vector<double> suffix(entries.size() + 1, 0.0);
  for (std::size_t k = entries.size(); k-- > 0;) {
    suffix[k] = suffix[k + 1] + std::abs(entries[k].value);
  }
  // Same summation as norm() so the range test agrees with q_map.
  const double total = norm(x, kL1);
  // The lower edge gets the same relative slack as the sphere in q_map.
  if (!(total >= r / 2.0 * (1.0 - kBoundaryRel) && total < r)) {
    throw Error(ErrorCode::domain_violation,
                "iota_mu_q needs r/2 <= ||x||_1 < r; got ||x||_1 = " + format_double(total));
  }
  const double gap = r - total;

  // The tail sum after j only drops at support indices, so the minimum is
  // either j = 1 or a stored index.
  std::size_t pos = 0;  // first entry with index > iota
  Index iota = 1;
  double after = 0.0;
  {
    std::size_t k = 0;
    while (k < entries.size() && entries[k].index <= 1) ++k;
    after = suffix[k];
    pos = k;
  }
  if (!(after < gap)) {
    for (std::size_t k = 0; k < entries.size(); ++k) {
      if (entries[k].index <= 1) continue;
      if (suffix[k + 1] < gap) {
        iota = entries[k].index;
        after = suffix[k + 1];
        pos = k + 1;
        break;
      }
    }
  }

  const double t_iota = x.coordinate(iota);
  double mu = 1.0;
  double head = 0.0;
  if (t_iota != 0.0) {
    const double want = gap - after;  // = mu * |t_iota|
    mu = want / std::abs(t_iota);
    if (mu > 1.0) mu = 1.0;
    head = std::copysign(std::min(want, std::abs(t_iota)), t_iota);
  }

  std::vector<Entry> q;
  q.reserve(entries.size() - pos + 1);
  if (head != 0.0) q.push_back({iota, head});
  for (std::size_t k = pos; k < entries.size(); ++k) q.push_back(entries[k]);
  return {iota, mu, SeqVec::from_sorted(std::move(q), 0.0)};
}

SeqVec q_map(const SeqVec& x, double r) {
  require_l1(x, "q_map");
  const double len = norm(x, kL1);
  if (len >= r) {
    if (len > r * (1.0 + kBoundaryRel)) {
      throw Error(ErrorCode::domain_violation, "Q is defined only for ||x||_1 <= r");
    }
    return SeqVec();
  }
  return iota_mu_q(x, r).q;
}

SeqVec l1_sphere_inner_branch(const SeqVec& x, double r) {
  require_l1(x, "l1_sphere_retract");
  const double len = norm(x, kL1);
  return axpy(1.0, SeqVec::unit(1, r - 2.0 * len), 2.0, shift_right(x));
}

SeqVec l1_sphere_outer_branch(const SeqVec& x, double r) {
  const SeqVec q = q_map(x, r);
  return axpy(1.0, x - q, 2.0, shift_right(q));
}

SeqVec l1_sphere_retract(const SeqVec& x, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::invalid_parameter, "sphere retraction needs r > 0");
  require_l1(x, "l1_sphere_retract");
  const double len = norm(x, kL1);
  if (len > r * (1.0 + kBoundaryRel)) {
    throw Error(ErrorCode::domain_violation,
                "l1_sphere_retract needs ||x||_1 <= r; got " + format_double(len));
  }
  if (len <= r / 2.0) return l1_sphere_inner_branch(x, r);
  return l1_sphere_outer_branch(x, r);
}

}  // namespace holderlab
