#pragma once

// Rational functions N(t) / prod (1 - t^a) with the denominator kept in
// factored form, and their power-series expansions.

#include "orbrr/laurent.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <vector>

namespace orbrr {

/// Multiset {a_1, ..., a_m} of positive integers standing for
/// prod (1 - t^{a_i}). Kept sorted.
class DenomSpec {
 public:
  DenomSpec() = default;
  DenomSpec(std::vector<std::int64_t> factors) : f_(std::move(factors)) {  // NOLINT
    for (auto a : f_)
      if (a < 1) throw std::invalid_argument("DenomSpec: factors must be positive");
    std::sort(f_.begin(), f_.end());
  }
  DenomSpec(std::initializer_list<std::int64_t> factors) : DenomSpec(std::vector<std::int64_t>(factors)) {}

  /// (1 - t)^n
  static DenomSpec power_of_one_minus_t(std::int64_t n) {
    return DenomSpec(std::vector<std::int64_t>(static_cast<std::size_t>(n), 1));
  }

  const std::vector<std::int64_t>& factors() const { return f_; }
  bool empty() const { return f_.empty(); }
  std::size_t size() const { return f_.size(); }
  std::int64_t weight_sum() const {
    std::int64_t s = 0;
    for (auto a : f_) s += a;
    return s;
  }
  std::size_t count(std::int64_t a) const { return static_cast<std::size_t>(std::count(f_.begin(), f_.end(), a)); }

  LaurentPoly expanded() const { return product_one_minus(f_); }

  /// Least multiset containing both (max multiplicities).
  friend DenomSpec join(const DenomSpec& a, const DenomSpec& b) {
    std::vector<std::int64_t> out;
    std::set_union(a.f_.begin(), a.f_.end(), b.f_.begin(), b.f_.end(), std::back_inserter(out));
    return DenomSpec(std::move(out));
  }
  /// Multiset difference a \ b.
  friend DenomSpec minus(const DenomSpec& a, const DenomSpec& b) {
    std::vector<std::int64_t> out;
    std::set_difference(a.f_.begin(), a.f_.end(), b.f_.begin(), b.f_.end(), std::back_inserter(out));
    return DenomSpec(std::move(out));
  }
  /// Multiset sum (concatenation).
  friend DenomSpec operator+(const DenomSpec& a, const DenomSpec& b) {
    std::vector<std::int64_t> out = a.f_;
    out.insert(out.end(), b.f_.begin(), b.f_.end());
    return DenomSpec(std::move(out));
  }
  friend bool operator==(const DenomSpec&, const DenomSpec&) = default;

 private:
  std::vector<std::int64_t> f_;
};

/// Coefficients of t^start, t^(start+1), ... of a series.
struct SeriesWindow {
  Exponent start = 0;
  std::vector<Rational> coeffs;

  Rational at(Exponent e) const {
    if (e < start || e >= start + static_cast<Exponent>(coeffs.size())) return {};
    return coeffs[static_cast<std::size_t>(e - start)];
  }
  friend bool operator==(const SeriesWindow&, const SeriesWindow&) = default;
};

struct NotPowerSeries : std::domain_error {
  using std::domain_error::domain_error;
};

/// num / prod (1 - t^a). Not kept in lowest terms; equality compares the
/// cross-multiplied numerators.
class RationalFn {
 public:
  RationalFn() = default;
  RationalFn(LaurentPoly num, DenomSpec den = {}) : num_(std::move(num)), den_(std::move(den)) {}  // NOLINT

  const LaurentPoly& num() const { return num_; }
  const DenomSpec& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  /// Same function written over `target`, which must contain den() as a
  /// multiset.
  RationalFn over_superset(const DenomSpec& target) const {
    DenomSpec extra = minus(target, den_);
    if (!(den_ + extra == target))
      throw std::invalid_argument("RationalFn::over_superset: target does not contain the denominator");
    return RationalFn(num_ * extra.expanded(), target);
  }

  /// Numerator N with *this == N / target, if such a Laurent polynomial
  /// exists.
  std::optional<LaurentPoly> numerator_over(const DenomSpec& target) const {
    LaurentPoly up = num_ * minus(target, den_).expanded();
    DenomSpec down = minus(den_, target);
    if (down.empty()) return up;
    try {
      return exact_div(up, down.expanded());
    } catch (const std::domain_error&) {
      return std::nullopt;
    }
  }

  RationalFn& operator*=(const Rational& s) {
    num_ *= s;
    return *this;
  }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    DenomSpec d = join(a.den_, b.den_);
    return RationalFn(a.over_superset(d).num_ + b.over_superset(d).num_, d);
  }
  friend RationalFn operator-(const RationalFn& a) { return RationalFn(-a.num_, a.den_); }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.num_, a.den_ + b.den_);
  }
  friend RationalFn operator*(const Rational& s, RationalFn a) { return a *= s; }
  friend RationalFn operator*(RationalFn a, const Rational& s) { return a *= s; }
  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
  RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }

  /// Exact identity of rational functions.
  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num_ * minus(b.den_, a.den_).expanded() == b.num_ * minus(a.den_, b.den_).expanded();
  }

 private:
  LaurentPoly num_;
  DenomSpec den_;
};

/// Coefficients of the Laurent expansion of f at t = 0 from its lowest
/// possible exponent min(0, low(num)) up to t^up_to.
///
/// Every factor 1 - t^a is a unit in Q[[t]], so no cancellation is needed
/// before expanding.
inline SeriesWindow expand_laurent(const RationalFn& f, Exponent up_to) {
  const LaurentPoly& n = f.num();
  const Exponent lo = std::min<Exponent>(0, n.is_zero() ? 0 : n.low_degree());
  SeriesWindow w;
  w.start = lo;
  if (up_to < lo) return w;
  const auto len = static_cast<std::size_t>(up_to - lo + 1);
  std::vector<mpq_class> c(len);
  for (const auto& [e, v] : n.terms())
    if (e <= up_to) c[static_cast<std::size_t>(e - lo)] = v.raw();
  for (auto a : f.den().factors()) {
    auto step = static_cast<std::size_t>(a);
    for (std::size_t i = step; i < len; ++i) c[i] += c[i - step];
  }
  w.coeffs.reserve(len);
  for (const auto& v : c) w.coeffs.emplace_back(v);
  return w;
}

/// Coefficients of t^0 .. t^up_to of the Taylor expansion of f at t = 0.
/// Throws NotPowerSeries if a negative-exponent coefficient survives.
inline SeriesWindow expand(const RationalFn& f, Exponent up_to) {
  if (up_to < 0) throw std::invalid_argument("expand: up_to must be nonnegative");
  SeriesWindow w = expand_laurent(f, up_to);
  for (Exponent e = w.start; e < 0; ++e)
    if (!w.at(e).is_zero()) throw NotPowerSeries("expand: expansion has a nonzero coefficient at t^" + std::to_string(e));
  w.coeffs.erase(w.coeffs.begin(), w.coeffs.begin() + static_cast<std::ptrdiff_t>(-w.start));
  w.start = 0;
  return w;
}

/// t^k f(1/t) == (-1)^(n+1) f(t), checked as a polynomial identity.
inline bool is_gorenstein_symmetric(const RationalFn& f, std::int64_t k, std::int64_t n) {
  // f(1/t) = N(1/t) (-1)^m t^{sum a} / prod (1 - t^a)
  const auto m = static_cast<std::int64_t>(f.den().size());
  LaurentPoly lhs = f.num().reflected().shifted(k + f.den().weight_sum());
  if ((m + n + 1) % 2 != 0) lhs = -lhs;
  return lhs == f.num();
}

/// coeff(t^i) == coeff(t^(deg - i)) for every i.
inline bool is_palindromic(const LaurentPoly& p, std::int64_t deg) {
  return p.reflected().shifted(deg) == p;
}

}  // namespace orbrr
