#pragma once

// Inverses modulo F = (1 - t^r)/h represented in a chosen support window.

#include "orbrr/laurent.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace orbrr {

struct NotCoprime : std::domain_error {
  using std::domain_error::domain_error;
};

struct ModulusData {
  std::int64_t r = 1;
  LaurentPoly A;  // prod (1 - t^{a_j})
  LaurentPoly h;  // hcf(1 - t^r, A), normalized so that h * F == 1 - t^r
  LaurentPoly F;  // monic
  std::int64_t d = 0;
};

namespace detail {

/// Phi_d for every d dividing r, in increasing d.
inline std::vector<std::pair<std::int64_t, LaurentPoly>> cyclotomic_divisors(std::int64_t r) {
  std::vector<std::pair<std::int64_t, LaurentPoly>> out;
  for (std::int64_t d = 1; d <= r; ++d) {
    if (r % d != 0) continue;
    LaurentPoly phi = -LaurentPoly::one_minus_t_power(d);  // t^d - 1
    for (const auto& [e, p] : out)
      if (d % e == 0) phi = exact_div(phi, p);
    out.emplace_back(d, std::move(phi));
  }
  return out;
}

}  // namespace detail

inline ModulusData build_modulus(std::int64_t r, const std::vector<std::int64_t>& a_list) {
  if (r < 1) throw std::invalid_argument("build_modulus: r must be positive");
  if (a_list.empty()) throw std::invalid_argument("build_modulus: empty weight list");
  ModulusData m;
  m.r = r;
  m.A = product_one_minus(a_list);
  const LaurentPoly period = LaurentPoly::one_minus_t_power(r);
  if (std::any_of(a_list.begin(), a_list.end(), [](std::int64_t a) { return a <= 0; })) {
    // 1 - t^r has leading coefficient -1; flip the monic gcd so F comes out monic.
    m.h = -poly_gcd(period, m.A);
    m.F = exact_div(period, m.h);
  } else {
    // 1 - t^r is squarefree with roots of unity of order d | r; such a root
    // divides A iff d | a_i for some i.
    LaurentPoly g(1), F(1);
    for (const auto& [d, phi] : detail::cyclotomic_divisors(r)) {
      bool common = false;
      for (auto a : a_list) common = common || a % d == 0;
      (common ? g : F) *= phi;
    }
    m.h = -g;
    m.F = F;
  }
  m.d = m.F.degree();
  return m;
}

/// The unique B supported in [gamma, gamma + deg F - 1] with A B == 1 mod F.
/// Requires t^r == 1 mod F; A may be a Laurent polynomial.
inline LaurentPoly inv_mod(const LaurentPoly& A, const LaurentPoly& F, Exponent gamma, std::int64_t r) {
  if (F.is_zero() || !F.is_polynomial() || F.coeff(0).is_zero() || F.leading() != Rational(1))
    throw std::invalid_argument("inv_mod: F must be monic with nonzero constant term");
  if (r < 1) throw std::invalid_argument("inv_mod: r must be positive");
  if (!divmod(LaurentPoly::one_minus_t_power(r), F).remainder.is_zero())
    throw std::invalid_argument("inv_mod: t^r is not 1 modulo F");
  if (F.degree() == 0) return {};
  if (A.is_zero()) throw NotCoprime("inv_mod: A is zero");

  // Every shift below is by a multiple of r, which is invisible mod F.
  LaurentPoly a = A;
  if (a.low_degree() < 0) a = a.shifted(ceil_div(-a.low_degree(), r) * r);
  const Exponent m = gamma < 0 ? ceil_div(-gamma, r) : 0;
  LaurentPoly b;
  try {
    b = inverse_mod_poly(a.shifted(m * r + gamma), F);
  } catch (const std::domain_error&) {
    throw NotCoprime("inv_mod: A is not coprime to F");
  }
  return b.shifted(gamma);
}

/// b with a b == 1 mod r, 0 <= b < r.
inline std::int64_t int_inv_mod(std::int64_t a, std::int64_t r) {
  if (r < 1) throw std::invalid_argument("int_inv_mod: modulus must be positive");
  std::int64_t old_r = mod_floor(a, r), cur_r = r, old_s = 1, cur_s = 0;
  while (cur_r != 0) {
    std::int64_t q = old_r / cur_r;
    std::tie(old_r, cur_r) = std::pair{cur_r, old_r - q * cur_r};
    std::tie(old_s, cur_s) = std::pair{cur_s, old_s - q * cur_s};
  }
  if (old_r != 1 && r != 1) throw NotCoprime("int_inv_mod: " + std::to_string(a) + " is not invertible mod " + std::to_string(r));
  return mod_floor(old_s, r);
}

}  // namespace orbrr
