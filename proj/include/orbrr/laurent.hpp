#pragma once

// Univariate Laurent polynomials over Q in the variable t, plus the
// Euclidean machinery on the polynomial subring.

#include "orbrr/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace orbrr {

using Exponent = std::int64_t;

/// Finite sum of c_e t^e with e ranging over Z.
///
/// Stored densely between the lowest and highest nonzero exponent; both
/// end coefficients are always nonzero, and the zero polynomial is empty.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const Rational& c) {  // NOLINT: constants convert implicitly
    if (!c.is_zero()) coeffs_.push_back(c);
  }
  LaurentPoly(int c) : LaurentPoly(Rational(c)) {}

  /// Dense constructor: coeffs[i] multiplies t^(low + i).
  LaurentPoly(Exponent low, std::vector<Rational> coeffs) : low_(low), coeffs_(std::move(coeffs)) {
    normalize();
  }

  static LaurentPoly monomial(const Rational& c, Exponent e) { return LaurentPoly(e, {c}); }
  static LaurentPoly t_power(Exponent e) { return monomial(Rational(1), e); }
  static LaurentPoly from_terms(const std::map<Exponent, Rational>& terms) {
    if (terms.empty()) return {};
    Exponent lo = terms.begin()->first;
    Exponent hi = terms.rbegin()->first;
    std::vector<Rational> c(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [e, v] : terms) c[static_cast<std::size_t>(e - lo)] += v;
    return LaurentPoly(lo, std::move(c));
  }
  /// Integer coefficient list starting at t^low.
  static LaurentPoly from_ints(std::initializer_list<long> ints, Exponent low = 0) {
    std::vector<Rational> c;
    c.reserve(ints.size());
    for (long v : ints) c.emplace_back(v);
    return LaurentPoly(low, std::move(c));
  }
  /// 1 - t^a.
  static LaurentPoly one_minus_t_power(Exponent a) {
    if (a == 0) return {};
    return LaurentPoly(1) - t_power(a);
  }
  /// 1 + t + ... + t^(len-1).
  static LaurentPoly geometric(Exponent len, Exponent step = 1) {
    std::vector<Rational> c(static_cast<std::size_t>(len > 0 ? (len - 1) * step + 1 : 0));
    for (Exponent i = 0; i < len; ++i) c[static_cast<std::size_t>(i * step)] = 1;
    return LaurentPoly(0, std::move(c));
  }

  bool is_zero() const { return coeffs_.empty(); }
  /// Lowest exponent with nonzero coefficient; 0 for the zero polynomial.
  Exponent low_degree() const { return low_; }
  /// Highest exponent with nonzero coefficient; throws for zero.
  Exponent degree() const {
    if (is_zero()) throw std::domain_error("LaurentPoly: degree of zero polynomial");
    return low_ + static_cast<Exponent>(coeffs_.size()) - 1;
  }
  std::size_t dense_size() const { return coeffs_.size(); }
  std::span<const Rational> dense() const { return coeffs_; }

  Rational coeff(Exponent e) const {
    if (e < low_ || e >= low_ + static_cast<Exponent>(coeffs_.size())) return {};
    return coeffs_[static_cast<std::size_t>(e - low_)];
  }
  const Rational& leading() const {
    if (is_zero()) throw std::domain_error("LaurentPoly: leading coefficient of zero");
    return coeffs_.back();
  }

  /// Nonzero terms in ascending exponent order.
  std::vector<std::pair<Exponent, Rational>> terms() const {
    std::vector<std::pair<Exponent, Rational>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!coeffs_[i].is_zero()) out.emplace_back(low_ + static_cast<Exponent>(i), coeffs_[i]);
    return out;
  }

  bool is_polynomial() const { return is_zero() || low_ >= 0; }
  bool is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_integer(); });
  }
  bool is_constant() const { return is_zero() || (low_ == 0 && coeffs_.size() == 1); }

  /// Multiply by t^k.
  LaurentPoly shifted(Exponent k) const {
    LaurentPoly r = *this;
    if (!r.is_zero()) r.low_ += k;
    return r;
  }
  /// p(1/t).
  LaurentPoly reflected() const {
    if (is_zero()) return {};
    std::vector<Rational> c(coeffs_.rbegin(), coeffs_.rend());
    return LaurentPoly(-degree(), std::move(c));
  }
  LaurentPoly derivative() const {
    std::vector<Rational> c(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] = coeffs_[i] * Rational(low_ + static_cast<Exponent>(i));
    return LaurentPoly(low_ - 1, std::move(c));
  }
  Rational eval_at_one() const {
    Rational s;
    for (const auto& c : coeffs_) s += c;
    return s;
  }
  /// Divide every coefficient by the leading one.
  LaurentPoly monic() const {
    if (is_zero()) return {};
    return *this * (Rational(1) / leading());
  }

  LaurentPoly& operator+=(const LaurentPoly& o) { return add_scaled(o, Rational(1)); }
  LaurentPoly& operator-=(const LaurentPoly& o) { return add_scaled(o, Rational(-1)); }
  LaurentPoly& operator*=(const Rational& s) {
    if (s.is_zero()) {
      coeffs_.clear();
      low_ = 0;
      return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= Rational(-1); }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& s) { return a *= s; }
  friend LaurentPoly operator*(const Rational& s, LaurentPoly a) { return a *= s; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    // integer convolution over the common denominators
    mpz_class Da, Db;
    const std::vector<mpz_class> ai = a.scaled_numerators(Da), bi = b.scaled_numerators(Db);
    std::vector<mpz_class> acc(ai.size() + bi.size() - 1);
    for (std::size_t i = 0; i < ai.size(); ++i) {
      if (sgn(ai[i]) == 0) continue;
      for (std::size_t j = 0; j < bi.size(); ++j) mpz_addmul(acc[i + j].get_mpz_t(), ai[i].get_mpz_t(), bi[j].get_mpz_t());
    }
    const mpz_class D = Da * Db;
    std::vector<Rational> c;
    c.reserve(acc.size());
    for (auto& v : acc) c.push_back(D == 1 ? Rational(v) : Rational(v, D));
    return LaurentPoly(a.low_ + b.low_, std::move(c));
  }

  /// Integer coefficients n_i with coeff = n_i / D, D the lcm of denominators.
  std::vector<mpz_class> scaled_numerators(mpz_class& D) const {
    D = 1;
    for (const auto& c : coeffs_)
      if (!c.is_integer()) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.raw().get_den_mpz_t());
    std::vector<mpz_class> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const mpq_class& q = coeffs_[i].raw();
      if (D == 1) out[i] = q.get_num();
      else out[i] = q.get_num() * (D / q.get_den());
    }
    return out;
  }

  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }

 private:
  LaurentPoly& add_scaled(const LaurentPoly& o, const Rational& s) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = o;
      return *this *= s;
    }
    Exponent lo = std::min(low_, o.low_);
    Exponent hi = std::max(degree(), o.degree());
    if (lo < low_) coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - lo), Rational());
    low_ = lo;
    coeffs_.resize(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      coeffs_[static_cast<std::size_t>(o.low_ - lo) + j] += o.coeffs_[j] * s;
    normalize();
    return *this;
  }

  void normalize() {
    std::size_t first = 0;
    while (first < coeffs_.size() && coeffs_[first].is_zero()) ++first;
    if (first == coeffs_.size()) {
      coeffs_.clear();
      low_ = 0;
      return;
    }
    std::size_t last = coeffs_.size();
    while (coeffs_[last - 1].is_zero()) --last;
    coeffs_.erase(coeffs_.begin() + static_cast<std::ptrdiff_t>(last), coeffs_.end());
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
    low_ += static_cast<Exponent>(first);
  }

  Exponent low_ = 0;
  std::vector<Rational> coeffs_;
};

inline LaurentPoly pow(const LaurentPoly& p, unsigned e) {
  LaurentPoly r(1), b = p;
  while (e != 0) {
    if (e & 1U) r *= b;
    e >>= 1U;
    if (e != 0) b *= b;
  }
  return r;
}

/// Product of (1 - t^a) over the given exponents.
inline LaurentPoly product_one_minus(std::span<const std::int64_t> exps) {
  LaurentPoly r(1);
  for (auto a : exps) r *= LaurentPoly::one_minus_t_power(a);
  return r;
}

struct DivMod {
  LaurentPoly quotient;
  LaurentPoly remainder;
};

/// Division with remainder in Q[t]. Both operands must be polynomials.
inline DivMod divmod(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
  if (!a.is_polynomial() || !b.is_polynomial())
    throw std::invalid_argument("divmod: operands must be polynomials");
  if (a.is_zero() || a.degree() < b.degree()) return {{}, a};
  const Exponent db = b.degree();
  const Exponent da = a.degree();
  if (b.leading() == Rational(1) && b.is_integral()) {
    // all in integers over a's common denominator
    mpz_class D, unused;
    std::vector<mpz_class> rem = a.shifted(-a.low_degree()).scaled_numerators(D);
    rem.insert(rem.begin(), static_cast<std::size_t>(a.low_degree()), mpz_class(0));
    const std::vector<mpz_class> bc = b.scaled_numerators(unused);  // b.low_degree() may be > 0
    const std::size_t off = static_cast<std::size_t>(b.low_degree());
    std::vector<mpz_class> quo(static_cast<std::size_t>(da - db + 1));
    for (Exponent i = da; i >= db; --i) {
      const mpz_class q = rem[static_cast<std::size_t>(i)];
      if (sgn(q) == 0) continue;
      quo[static_cast<std::size_t>(i - db)] = q;
      for (std::size_t j = 0; j < bc.size(); ++j)
        if (sgn(bc[j]) != 0) mpz_submul(rem[static_cast<std::size_t>(i - db) + off + j].get_mpz_t(), q.get_mpz_t(), bc[j].get_mpz_t());
    }
    rem.resize(static_cast<std::size_t>(db));
    auto to_poly = [&](std::vector<mpz_class>& v) {
      std::vector<Rational> c;
      c.reserve(v.size());
      for (auto& x : v) c.push_back(D == 1 ? Rational(x) : Rational(x, D));
      return LaurentPoly(0, std::move(c));
    };
    return {to_poly(quo), to_poly(rem)};
  }
  std::vector<Rational> rem(static_cast<std::size_t>(da + 1));
  for (Exponent e = a.low_degree(); e <= da; ++e) rem[static_cast<std::size_t>(e)] = a.coeff(e);
  std::vector<Rational> bc(static_cast<std::size_t>(db + 1));
  for (Exponent e = b.low_degree(); e <= db; ++e) bc[static_cast<std::size_t>(e)] = b.coeff(e);
  const Rational inv_lead = Rational(1) / bc.back();
  const bool monic = bc.back() == Rational(1);
  std::vector<Rational> quo(static_cast<std::size_t>(da - db + 1));
  for (Exponent i = da; i >= db; --i) {
    Rational q = rem[static_cast<std::size_t>(i)];
    if (q.is_zero()) continue;
    if (!monic) q *= inv_lead;
    quo[static_cast<std::size_t>(i - db)] = q;
    for (Exponent j = 0; j <= db; ++j) {
      if (bc[static_cast<std::size_t>(j)].is_zero()) continue;
      rem[static_cast<std::size_t>(i - db + j)] -= q * bc[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {LaurentPoly(0, std::move(quo)), LaurentPoly(0, std::move(rem))};
}

/// Divisibility in the Laurent ring Q[t, 1/t]; b must have b(0) != 0 after
/// stripping its t-power. Returns the quotient, or throws std::domain_error
/// if the division leaves a remainder.
inline LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("exact_div: division by zero polynomial");
  if (a.is_zero()) return {};
  Exponent shift = a.low_degree() - b.low_degree();
  auto [q, r] = divmod(a.shifted(-a.low_degree()), b.shifted(-b.low_degree()));
  if (!r.is_zero()) throw std::domain_error("exact_div: remainder is nonzero");
  return q.shifted(shift);
}

/// Monic greatest common divisor in Q[t]. gcd(p, 0) = monic(p).
inline LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("poly_gcd: both inputs are zero");
  if (!a.is_polynomial() || !b.is_polynomial())
    throw std::invalid_argument("poly_gcd: inputs must be polynomials");
  while (!b.is_zero()) {
    auto r = divmod(a, b).remainder;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

/// Reduce a Laurent polynomial modulo F in Q[t, 1/t] to its canonical
/// representative of degree < deg F. F must be a polynomial with F(0) != 0.
inline LaurentPoly laurent_rem(const LaurentPoly& p, const LaurentPoly& F) {
  if (F.is_zero() || !F.is_polynomial() || F.low_degree() != 0)
    throw std::invalid_argument("laurent_rem: modulus must be a polynomial with nonzero constant term");
  if (F.degree() == 0 || p.is_zero()) return {};
  if (p.low_degree() >= 0) return divmod(p, F).remainder;
  // t^{-1} == -(F - F(0)) / (F(0) t)  mod F
  LaurentPoly t_inv = (F - LaurentPoly(F.coeff(0))).shifted(-1) * (Rational(-1) / F.coeff(0));
  auto neg = static_cast<unsigned>(-p.low_degree());
  LaurentPoly acc(1), base = t_inv;
  unsigned e = neg;
  while (e != 0) {
    if (e & 1U) acc = divmod(acc * base, F).remainder;
    e >>= 1U;
    if (e != 0) base = divmod(base * base, F).remainder;
  }
  return divmod(divmod(p.shifted(neg), F).remainder * acc, F).remainder;
}

/// Fold p into the window [gamma, gamma + deg F - 1] modulo F.
inline LaurentPoly reduce_to_window(const LaurentPoly& p, const LaurentPoly& F, Exponent gamma) {
  return laurent_rem(p.shifted(-gamma), F).shifted(gamma);
}

namespace detail {

// Arithmetic in F_p[t] for primes p < 2^63, coefficients low to high.
using ModPoly = std::vector<std::uint64_t>;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t inv_mod_prime(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, e = p - 2;
  while (e) {
    if (e & 1U) result = mul_mod(result, a, p);
    a = mul_mod(a, a, p);
    e >>= 1U;
  }
  return result;
}

inline void trim(ModPoly& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

/// r := r mod b, returning the quotient; b nonzero and trimmed.
inline ModPoly divmod_in_place(ModPoly& r, const ModPoly& b, std::uint64_t p) {
  trim(r);
  if (r.size() < b.size()) return {};
  ModPoly q(r.size() - b.size() + 1);
  const std::uint64_t inv = inv_mod_prime(b.back(), p);
  for (std::size_t i = r.size(); i-- >= b.size();) {
    if (r[i] == 0) continue;
    const std::uint64_t c = mul_mod(r[i], inv, p);
    const std::size_t shift = i + 1 - b.size();
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] = (r[shift + j] + p - mul_mod(c, b[j], p)) % p;
  }
  trim(r);
  trim(q);
  return q;
}

/// Inverse of a modulo F over F_p, or false if gcd(a, F) != 1 mod p.
inline bool inverse_mod_p(ModPoly a, const ModPoly& F, std::uint64_t p, ModPoly& out) {
  ModPoly r0 = F, r1 = std::move(a);
  divmod_in_place(r1, F, p);
  ModPoly s0, s1{1};
  while (r1.size() > 1) {
    ModPoly q = divmod_in_place(r0, r1, p);
    // s0 - q s1
    ModPoly s(std::max(s0.size(), q.size() + s1.size()), 0);
    for (std::size_t i = 0; i < s0.size(); ++i) s[i] = s0[i];
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j) s[i + j] = (s[i + j] + p - mul_mod(q[i], s1[j], p)) % p;
    trim(s);
    std::swap(r0, r1);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.empty()) return false;
  const std::uint64_t inv = inv_mod_prime(r1[0], p);
  for (auto& c : s1) c = mul_mod(c, inv, p);
  divmod_in_place(s1, F, p);
  out = std::move(s1);
  return true;
}

/// n/d == u mod M with |n|, d <= sqrt(M/2), if one exists.
inline bool rational_reconstruct(const mpz_class& u, const mpz_class& M, mpq_class& out) {
  mpz_class bound = sqrt(mpz_class(M / 2));
  mpz_class r0 = M, r1 = u, t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r = r0 - q * r1, t = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (t1 == 0 || abs(t1) > bound || gcd(r1, t1) != 1) return false;
  out = mpq_class(r1, t1);
  out.canonicalize();
  return true;
}

/// Inverse of a modulo F by working modulo word-size primes, CRT and
/// rational reconstruction; each candidate is checked exactly. Returns
/// false if F is not integral and monic or no candidate verified.
inline bool inverse_mod_multimodular(const LaurentPoly& a, const LaurentPoly& F, LaurentPoly& out) {
  const Exponent d = F.degree();
  if (F.leading() != Rational(1)) return false;
  for (Exponent e = 0; e <= d; ++e)
    if (!F.coeff(e).is_integer()) return false;
  // a = a_int / L with a_int integral
  mpz_class L = 1;
  for (const auto& [e, c] : a.terms()) L = lcm(L, c.denominator());
  std::vector<mpz_class> a_int(static_cast<std::size_t>(a.degree() + 1));
  for (const auto& [e, c] : a.terms()) a_int[static_cast<std::size_t>(e)] = c.raw().get_num() * (L / c.denominator());
  std::vector<mpz_class> F_int(static_cast<std::size_t>(d + 1));
  for (Exponent e = 0; e <= d; ++e) F_int[static_cast<std::size_t>(e)] = F.coeff(e).numerator();

  std::vector<mpz_class> U(static_cast<std::size_t>(d));
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> v;
    mpz_class q = mpz_class(1) << 62;
    for (int i = 0; i < 80; ++i) {
      mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
      v.push_back(q.get_ui());
    }
    return v;
  }();
  mpz_class M = 1;
  for (const std::uint64_t p : primes) {
    const mpz_class prime(static_cast<unsigned long>(p));
    ModPoly ap(a_int.size()), Fp(F_int.size());
    for (std::size_t i = 0; i < a_int.size(); ++i) ap[i] = mpz_fdiv_ui(a_int[i].get_mpz_t(), p);
    for (std::size_t i = 0; i < F_int.size(); ++i) Fp[i] = mpz_fdiv_ui(F_int[i].get_mpz_t(), p);
    trim(ap);
    ModPoly sp;
    if (ap.empty() || !inverse_mod_p(std::move(ap), Fp, p, sp)) continue;
    // CRT: U := U + M * ((sp - U) / M mod p)
    const std::uint64_t Minv = inv_mod_prime(mpz_fdiv_ui(M.get_mpz_t(), p), p);
    for (std::size_t i = 0; i < U.size(); ++i) {
      const std::uint64_t v = i < sp.size() ? sp[i] : 0;
      const std::uint64_t u = mpz_fdiv_ui(U[i].get_mpz_t(), p);
      const std::uint64_t k = mul_mod((v + p - u) % p, Minv, p);
      U[i] += M * mpz_class(static_cast<unsigned long>(k));
    }
    M *= prime;
    std::vector<Rational> c(U.size());
    bool ok = true;
    for (std::size_t i = 0; ok && i < U.size(); ++i) {
      mpq_class q;
      ok = rational_reconstruct(U[i], M, q);
      c[i] = Rational(q * L);
    }
    if (!ok) continue;
    LaurentPoly s(0, std::move(c));
    if (divmod(a * s, F).remainder == LaurentPoly(1)) {
      out = std::move(s);
      return true;
    }
  }
  return false;
}

}  // namespace detail

namespace detail {

inline LaurentPoly inverse_mod_euclid(const LaurentPoly& a, const LaurentPoly& F) {
  LaurentPoly r0 = F, r1 = divmod(a, F).remainder;
  LaurentPoly s0, s1(1);
  while (!r1.is_zero() && r1.degree() > 0) {
    auto [q, r] = divmod(r0, r1);
    LaurentPoly s = s0 - q * s1;
    // keep remainders monic to limit coefficient growth
    if (!r.is_zero()) {
      const Rational inv = Rational(1) / r.leading();
      r = r * inv;
      s = s * inv;
    }
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.is_zero()) throw std::domain_error("inverse_mod_poly: operand is not coprime to the modulus");
  return divmod(s1 * (Rational(1) / r1.coeff(0)), F).remainder;
}

}  // namespace detail

/// Solve s * a == 1 mod F with deg s < deg F; a and F polynomials, F
/// nonconstant. Throws if gcd(a, F) is not a unit.
inline LaurentPoly inverse_mod_poly(const LaurentPoly& a, const LaurentPoly& F) {
  LaurentPoly fast;
  if (!a.is_zero() && a.is_polynomial() && F.degree() > 0 && detail::inverse_mod_multimodular(a, F, fast)) return fast;
  return detail::inverse_mod_euclid(a, F);
}

}  // namespace orbrr
