#include "holderlab/seq_vec.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <system_error>

#include "holderlab/error.hpp"

namespace holderlab {

SeqVec::SeqVec(std::vector<Entry> entries, double tail) : tail_(tail) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k].index < 1) {
      throw Error(ErrorCode::invalid_index,
                  "support index " + std::to_string(entries[k].index) + " < 1");
    }
    if (k > 0 && entries[k].index == entries[k - 1].index) {
      throw Error(ErrorCode::invalid_index,
                  "duplicate support index " + std::to_string(entries[k].index));
    }
  }
  entries.erase(std::remove_if(entries.begin(), entries.end(),
                               [tail](const Entry& e) { return e.value == tail; }),
                entries.end());
  entries_ = std::move(entries);
}

SeqVec SeqVec::from_sorted(std::vector<Entry> entries, double tail) {
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k].index < 1 || (k > 0 && entries[k].index <= entries[k - 1].index)) {
      throw Error(ErrorCode::invalid_index, "support indices must be ascending and >= 1");
    }
  }
  std::erase_if(entries, [tail](const Entry& e) { return e.value == tail; });
  SeqVec out(tail);
  out.entries_ = std::move(entries);
  return out;
}

SeqVec SeqVec::unit(Index i, double scale) { return SeqVec({{i, scale}}, 0.0); }

SeqVec SeqVec::from_dense(std::span<const double> values, double tail) {
  std::vector<Entry> entries;
  entries.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] != tail) entries.push_back({static_cast<Index>(k + 1), values[k]});
  }
  SeqVec out(tail);
  out.entries_ = std::move(entries);
  return out;
}

double SeqVec::coordinate(Index i) const {
  if (i < 1) throw Error(ErrorCode::invalid_index, "coordinate index must be >= 1");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, Index idx) { return e.index < idx; });
  if (it != entries_.end() && it->index == i) return it->value;
  return tail_;
}

Norm Norm::lp(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::invalid_parameter, "lp norm requires finite p >= 1");
  }
  return Norm(Kind::lp, p);
}

std::string Norm::name() const {
  switch (kind_) {
    case Kind::sup: return "sup";
    case Kind::max_pos_neg_l1: return "max_pos_neg_l1";
    case Kind::lp: return "l" + format_double(p_);
  }
  return "?";
}

Norm parse_norm(std::string_view text) {
  if (text == "sup" || text == "linf") return Norm::sup();
  if (text == "max_pos_neg_l1") return Norm::max_pos_neg_l1();
  if (text.size() > 1 && text.front() == 'l') {
    double p = 0.0;
    auto rest = text.substr(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), p);
    if (ec == std::errc() && ptr == rest.data() + rest.size()) return Norm::lp(p);
  }
  throw Error(ErrorCode::parse_error, "unknown norm '" + std::string(text) + "'");
}

namespace {

void require_zero_tail(const SeqVec& x, const Norm& k) {
  if (x.tail() != 0.0) {
    throw Error(ErrorCode::not_in_space,
                "norm " + k.name() + " needs a zero tail, got " + format_double(x.tail()));
  }
}

}  // namespace

double norm(const SeqVec& x, const Norm& k) {
  switch (k.kind()) {
    case Norm::Kind::sup: {
      double m = std::abs(x.tail());
      for (const auto& e : x.support()) m = std::max(m, std::abs(e.value));
      return m;
    }
    case Norm::Kind::lp: {
      require_zero_tail(x, k);
      const double p = k.p();
      double s = 0.0;
      if (p == 1.0) {
        for (const auto& e : x.support()) s += std::abs(e.value);
        return s;
      }
      if (p == 2.0) {
        for (const auto& e : x.support()) s += e.value * e.value;
        return std::sqrt(s);
      }
      for (const auto& e : x.support()) s += std::pow(std::abs(e.value), p);
      return std::pow(s, 1.0 / p);
    }
    case Norm::Kind::max_pos_neg_l1: {
      require_zero_tail(x, k);
      double pos = 0.0;
      double neg = 0.0;
      for (const auto& e : x.support()) {
        if (e.value > 0.0) pos += e.value;
        else neg -= e.value;
      }
      return std::max(pos, neg);
    }
  }
  return 0.0;
}

double distance(const SeqVec& x, const SeqVec& y, const Norm& k) {
  return norm(x - y, k);
}

SeqVec axpy(double a, const SeqVec& x, double b, const SeqVec& y) {
  const double tail = a * x.tail() + b * y.tail();
  auto xs = x.support();
  auto ys = y.support();
  std::vector<Entry> out;
  out.reserve(xs.size() + ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  auto push = [&](Index idx, double v) {
    if (v != tail) out.push_back({idx, v});
  };
  while (i < xs.size() || j < ys.size()) {
    if (j == ys.size() || (i < xs.size() && xs[i].index < ys[j].index)) {
      push(xs[i].index, a * xs[i].value + b * y.tail());
      ++i;
    } else if (i == xs.size() || ys[j].index < xs[i].index) {
      push(ys[j].index, a * x.tail() + b * ys[j].value);
      ++j;
    } else {
      push(xs[i].index, a * xs[i].value + b * ys[j].value);
      ++i;
      ++j;
    }
  }
  return SeqVec::from_sorted(std::move(out), tail);
}

SeqVec shift_right(const SeqVec& x, double head) {
  std::vector<Entry> out;
  out.reserve(x.support().size() + 1);
  out.push_back({1, head});
  for (const auto& e : x.support()) out.push_back({e.index + 1, e.value});
  return SeqVec::from_sorted(std::move(out), x.tail());
}

CBasisExpansion c_basis_coefficients(const SeqVec& x) {
  const double t = x.tail();
  return {t, x.transform([t](double v) { return v - t; })};
}

SeqVec from_c_basis(const CBasisExpansion& expansion) {
  const double t = expansion.e0_coeff;
  return expansion.coeffs.transform([t](double v) { return v + t; });
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string to_literal(const SeqVec& x) {
  std::string s = "{";
  bool first = true;
  for (const auto& e : x.support()) {
    if (!first) s += ", ";
    first = false;
    s += std::to_string(e.index) + ":" + format_double(e.value);
  }
  if (x.tail() != 0.0) {
    s += first ? "tail:" : "; tail:";
    s += format_double(x.tail());
  }
  s += "}";
  return s;
}

namespace {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  SeqVec parse() {
    expect('{');
    std::vector<Entry> entries;
    double tail = 0.0;
    skip_ws();
    while (peek() != '}' && peek() != ';') {
      if (looking_at("tail")) {
        tail = parse_tail();
        skip_ws();
        if (peek() != '}') fail("tail clause must be last");
        break;
      }
      Index idx = parse_index();
      expect(':');
      double v = parse_number();
      entries.push_back({idx, v});
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        skip_ws();
      } else if (peek() != '}' && peek() != ';') {
        fail("expected ',', ';' or '}'");
      }
    }
    if (peek() == ';') {
      ++pos_;
      skip_ws();
      tail = parse_tail();
    }
    expect('}');
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    for (std::size_t k = 1; k < entries.size(); ++k) {
      if (entries[k].index <= entries[k - 1].index) fail("indices must be ascending");
    }
    return SeqVec(std::move(entries), tail);
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::parse_error,
                "vector literal '" + std::string(text_) + "': " + why);
  }
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool looking_at(std::string_view word) {
    skip_ws();
    return text_.substr(pos_, word.size()) == word;
  }
  double parse_tail() {
    if (!looking_at("tail")) fail("expected 'tail'");
    pos_ += 4;
    expect(':');
    return parse_number();
  }
  Index parse_index() {
    skip_ws();
    Index idx = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), idx);
    if (ec != std::errc()) fail("expected an index");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    if (idx < 1) fail("indices must be >= 1");
    return idx;
  }
  double parse_number() {
    skip_ws();
    double v = 0.0;
    const char* begin = text_.data() + pos_;
    if (pos_ < text_.size() && text_[pos_] == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), v);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SeqVec parse_literal(std::string_view text) { return LiteralParser(text).parse(); }

}  // namespace holderlab
