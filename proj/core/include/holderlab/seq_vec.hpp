#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace holderlab {

using Index = std::int64_t;

struct Entry {
  Index index;
  double value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// An eventually-constant real sequence (t_1, t_2, ...).
///
/// Coordinates listed in the support take their stored value; every other
/// coordinate equals the tail. The representation is canonical: support
/// indices are strictly increasing and >= 1, and no stored value equals the
/// tail (compared with exact floating-point equality). Structural equality is
/// therefore coordinatewise equality.
class SeqVec {
 public:
  SeqVec() = default;
  explicit SeqVec(double tail) : tail_(tail) {}
  /// Entries may come in any order; duplicate or non-positive indices throw.
  SeqVec(std::vector<Entry> entries, double tail = 0.0);

  /// Entries must already be strictly ascending; values equal to the tail are
  /// dropped. Linear time.
  static SeqVec from_sorted(std::vector<Entry> entries, double tail = 0.0);
  /// scale * e_i
  static SeqVec unit(Index i, double scale = 1.0);
  /// values[k] becomes coordinate k + 1.
  static SeqVec from_dense(std::span<const double> values, double tail = 0.0);

  double coordinate(Index i) const;
  double operator()(Index i) const { return coordinate(i); }

  double tail() const noexcept { return tail_; }
  std::span<const Entry> support() const noexcept { return entries_; }
  /// Largest stored index, 0 for an empty support.
  Index last_index() const noexcept {
    return entries_.empty() ? 0 : entries_.back().index;
  }
  bool is_zero() const noexcept { return entries_.empty() && tail_ == 0.0; }

  /// Coordinatewise f; the tail becomes f(tail).
  template <class F>
  SeqVec transform(F&& f) const {
    SeqVec out;
    out.tail_ = f(tail_);
    out.entries_.reserve(entries_.size());
    for (const auto& e : entries_) {
      double v = f(e.value);
      if (v != out.tail_) out.entries_.push_back({e.index, v});
    }
    return out;
  }

  friend bool operator==(const SeqVec&, const SeqVec&) = default;

 private:
  std::vector<Entry> entries_;
  double tail_ = 0.0;
};

/// Norm selector: sup-norm, p-norm with p >= 1, or max(||x+||_1, ||x-||_1).
class Norm {
 public:
  enum class Kind { sup, lp, max_pos_neg_l1 };

  static Norm sup() { return Norm(Kind::sup, 0.0); }
  static Norm lp(double p);
  static Norm max_pos_neg_l1() { return Norm(Kind::max_pos_neg_l1, 0.0); }

  Kind kind() const noexcept { return kind_; }
  /// Exponent of an lp norm, 0 otherwise.
  double p() const noexcept { return p_; }
  std::string name() const;

  friend bool operator==(const Norm&, const Norm&) = default;

 private:
  Norm(Kind kind, double p) : kind_(kind), p_(p) {}
  Kind kind_;
  double p_;
};

/// Parses "sup", "max_pos_neg_l1", "l<p>" (e.g. "l1", "l2", "l1.5").
Norm parse_norm(std::string_view text);

double norm(const SeqVec& x, const Norm& k);
double distance(const SeqVec& x, const SeqVec& y, const Norm& k);

/// a*x + b*y, coordinatewise.
SeqVec axpy(double a, const SeqVec& x, double b, const SeqVec& y);

inline SeqVec operator+(const SeqVec& x, const SeqVec& y) { return axpy(1.0, x, 1.0, y); }
inline SeqVec operator-(const SeqVec& x, const SeqVec& y) { return axpy(1.0, x, -1.0, y); }
inline SeqVec operator*(double a, const SeqVec& x) {
  return x.transform([a](double v) { return a * v; });
}

/// (head, t_1, t_2, ...); the tail is unchanged.
SeqVec shift_right(const SeqVec& x, double head = 0.0);

/// The limit of the sequence, which is its tail. On convergent sequences
/// every Banach limit agrees with this value.
inline double tail_limit(const SeqVec& x) noexcept { return x.tail(); }

/// Expansion in the Schauder basis of c: x = e0_coeff * (1, 1, ...) + coeffs.
struct CBasisExpansion {
  double e0_coeff;
  SeqVec coeffs;
};

CBasisExpansion c_basis_coefficients(const SeqVec& x);
SeqVec from_c_basis(const CBasisExpansion& expansion);

/// `{i1:v1, i2:v2; tail:t}`; the tail clause is omitted when the tail is 0.
/// Values are printed in shortest round-trip form.
std::string to_literal(const SeqVec& x);
SeqVec parse_literal(std::string_view text);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace holderlab
