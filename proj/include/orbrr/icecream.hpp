#pragma once

// Orbifold contributions P_orb(Q, k) to a Gorenstein Hilbert series.

#include "orbrr/dedekind.hpp"
#include "orbrr/rational_fn.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace orbrr {

struct OrbifoldPart {
  OrbifoldType source;
  std::int64_t k = 0;
  std::int64_t n = 0;
  RationalFn fn;
  std::int64_t numerator_degree = 0;
};

namespace detail {

inline void check_point_data(const OrbifoldType& q, std::int64_t k, std::int64_t n, const char* who) {
  if (q.n() != n)
    throw std::invalid_argument(std::string(who) + ": " + q.str() + " has " + std::to_string(q.n()) +
                                " weights but n = " + std::to_string(n));
  if (!q.trivial() && mod_floor(k + q.weight_sum(), q.r()) != 0)
    throw std::invalid_argument(std::string(who) + ": k + sum(a) = " + std::to_string(k + q.weight_sum()) +
                                " is not divisible by r for " + q.str());
}

}  // namespace detail

/// Ice cream function of an isolated point:
///   B / ((1-t)^n (1-t^r)),
///   B = InvMod(prod (1-t^{a_i})/(1-t), (1-t^r)/(1-t), floor(c/2) + 1), c = k + n + 1.
inline OrbifoldPart p_orb(const OrbifoldType& q, std::int64_t k, std::int64_t n) {
  detail::check_point_data(q, k, n, "p_orb");
  DenomSpec den = DenomSpec::power_of_one_minus_t(n) + DenomSpec{q.r()};
  OrbifoldPart part{q, k, n, RationalFn({}, den), k + n + q.r()};
  if (q.trivial()) return part;
  if (!q.isolated())
    throw std::invalid_argument("p_orb: " + q.str() + " is not isolated; use p_orb_general");
  const std::int64_t c = k + n + 1;
  LaurentPoly A = exact_div(product_one_minus(q.a()), pow(LaurentPoly::one_minus_t_power(1), static_cast<unsigned>(n)));
  LaurentPoly F = LaurentPoly::geometric(q.r());
  part.fn = RationalFn(inv_mod(A, F, floor_div(c, 2) + 1, q.r()), den);
  return part;
}

/// Generalized ice cream for a point whose weights share factors
/// s_i = gcd(a_i, r) with r:
///   InvMod(prod (1-t^{a_i})/(1-t^{s_i}), F, gamma) / prod_{[s_1..s_n, r]} (1-t^a)
/// with gamma centring the window on the symmetric degree k + r + sum s_i.
inline OrbifoldPart p_orb_general(const OrbifoldType& q, std::int64_t k, std::int64_t n) {
  detail::check_point_data(q, k, n, "p_orb_general");
  std::vector<std::int64_t> s;
  for (auto a : q.a()) s.push_back(gcd_int(a, q.r()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (gcd_int(s[i], s[j]) != 1)
        throw std::invalid_argument("p_orb_general: gcd(a_i, r) not pairwise coprime for " + q.str());
  std::int64_t ssum = 0;
  for (auto v : s) ssum += v;
  DenomSpec den = DenomSpec(s) + DenomSpec{q.r()};
  OrbifoldPart part{q, k, n, RationalFn({}, den), k + q.r() + ssum};
  if (q.trivial()) return part;
  ModulusData m = build_modulus(q.r(), q.a());
  LaurentPoly A = exact_div(m.A, product_one_minus(s));
  const std::int64_t gamma = ceil_div(part.numerator_degree - m.d + 1, 2);
  part.fn = RationalFn(inv_mod(A, m.F, gamma, q.r()), den);
  return part;
}

/// p_orb(Q, k) minus the periodic Dedekind part
///   sum_{i=1}^{r-1} (sigma_{r-i} - sigma_0) t^i / (1 - t^r),
/// written over (1-t)^{n+1}. The division is exact for every isolated type.
inline RationalFn porb_minus_dedekind(const OrbifoldType& q, std::int64_t k, std::int64_t n) {
  const DenomSpec target = DenomSpec::power_of_one_minus_t(n + 1);
  if (q.trivial()) return RationalFn({}, target);
  OrbifoldPart part = p_orb(q, k, n);
  DeltaPoly d = delta(q);
  const Rational s0 = d.poly.coeff(q.r());
  std::map<Exponent, Rational> periodic;
  for (std::int64_t i = 1; i < q.r(); ++i) periodic[i] = d.poly.coeff(i) - s0;
  RationalFn diff = part.fn - RationalFn(LaurentPoly::from_terms(periodic), DenomSpec{q.r()});
  auto num = diff.numerator_over(target);
  if (!num) throw std::domain_error("porb_minus_dedekind: difference does not reduce to (1-t)^" + std::to_string(n + 1));
  return RationalFn(*num, target);
}

}  // namespace orbrr
