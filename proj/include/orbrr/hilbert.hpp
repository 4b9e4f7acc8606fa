#pragma once

// Hilbert series of polarized orbifolds: construction for weighted complete
// intersections, the split P = P_I + sum P_orb, and the surface/Fano forms.

#include "orbrr/icecream.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbrr {

struct BasketEntry {
  OrbifoldType type;
  std::int64_t multiplicity = 1;
  friend bool operator==(const BasketEntry&, const BasketEntry&) = default;
};
using Basket = std::vector<BasketEntry>;

struct VarietyInput {
  std::vector<std::int64_t> weights;
  std::vector<std::int64_t> degrees;
  Basket basket;
  std::optional<std::int64_t> k_override;
  std::optional<LaurentPoly> J;
};

/// A mathematical check that failed, with the offending residual.
struct CheckFailure : std::runtime_error {
  CheckFailure(std::string check_name, const std::string& what, RationalFn residual_fn = {})
      : std::runtime_error(check_name + ": " + what), check(std::move(check_name)), residual(std::move(residual_fn)) {}
  std::string check;
  RationalFn residual;
};

struct WeightedPart {
  OrbifoldPart part;
  std::int64_t multiplicity = 1;
};

struct Decomposition {
  RationalFn initial;  // A / (1-t)^{n+1}
  std::vector<WeightedPart> orbifold_parts;
  std::optional<LaurentPoly> irregularity;
  std::int64_t k = 0;
  std::int64_t n = 0;
  std::int64_t c = 0;
  std::vector<std::string> warnings;

  const LaurentPoly& initial_numerator() const { return initial.num(); }

  RationalFn total() const {
    RationalFn s = initial;
    for (const auto& wp : orbifold_parts) s += wp.part.fn * Rational(wp.multiplicity);
    if (irregularity) s += RationalFn(*irregularity);
    return s;
  }
};

struct CompleteIntersection {
  RationalFn series;
  std::int64_t k = 0;
  std::int64_t n = 0;
};

/// prod (1 - t^{d_j}) / prod (1 - t^{a_i}), k = sum d - sum a.
inline CompleteIntersection hilbert_ci(const std::vector<std::int64_t>& weights, const std::vector<std::int64_t>& degrees) {
  const auto n = static_cast<std::int64_t>(weights.size()) - 1 - static_cast<std::int64_t>(degrees.size());
  if (n < 1) throw std::invalid_argument("hilbert_ci: need #weights - 1 - #degrees >= 1");
  for (auto d : degrees)
    if (d < 1) throw std::invalid_argument("hilbert_ci: degrees must be positive");
  std::int64_t k = 0;
  for (auto d : degrees) k += d;
  for (auto a : weights) k -= a;
  return {RationalFn(product_one_minus(degrees), DenomSpec(weights)), k, n};
}

namespace detail {

inline LaurentPoly checked_initial_numerator(const RationalFn& residual, std::int64_t k, std::int64_t n) {
  const std::int64_t c = k + n + 1;
  auto num = residual.numerator_over(DenomSpec::power_of_one_minus_t(n + 1));
  if (!num)
    throw CheckFailure("initial_form", "residual is not of the form A/(1-t)^" + std::to_string(n + 1), residual);
  if (c < 0) {
    if (!num->is_zero()) throw CheckFailure("initial_zero", "c < 0 but the residual is nonzero", residual);
    return {};
  }
  if (!num->is_polynomial() || (!num->is_zero() && num->degree() > c))
    throw CheckFailure("initial_degree", "residual numerator is not a polynomial of degree <= " + std::to_string(c), residual);
  if (!num->is_integral()) throw CheckFailure("initial_integral", "residual numerator has non-integer coefficients", residual);
  if (!is_palindromic(*num, c))
    throw CheckFailure("initial_palindromic", "residual numerator is not palindromic of degree " + std::to_string(c), residual);
  return *num;
}

}  // namespace detail

/// Split P = J + P_I + sum mult * P_orb(Q, k). Throws CheckFailure naming
/// the first check that fails.
inline Decomposition parse_main(const RationalFn& P, std::int64_t n, std::int64_t k, const Basket& basket,
                                const std::optional<LaurentPoly>& J = std::nullopt) {
  Decomposition d;
  d.k = k;
  d.n = n;
  d.c = k + n + 1;
  RationalFn rest = P;
  if (J && !J->is_zero()) {
    if (!J->is_polynomial()) throw std::invalid_argument("parse_main: J must be a polynomial");
    if (J->degree() > k) d.warnings.push_back("J has degree " + std::to_string(J->degree()) + " > k = " + std::to_string(k));
    d.irregularity = *J;
    rest -= RationalFn(*J);
  }
  if (!is_gorenstein_symmetric(rest, k, n))
    throw CheckFailure("gorenstein_symmetry", "series is not Gorenstein symmetric at k = " + std::to_string(k) +
                                                  ", n = " + std::to_string(n), rest);
  for (const auto& e : basket) {
    if (e.multiplicity < 1) throw std::invalid_argument("parse_main: basket multiplicities must be positive");
    if (!e.type.isolated())
      throw std::invalid_argument("parse_main: basket entry " + e.type.str() + " is not an isolated point");
    OrbifoldPart part = p_orb(e.type, k, n);
    rest -= part.fn * Rational(e.multiplicity);
    d.orbifold_parts.push_back({std::move(part), e.multiplicity});
  }
  d.initial = RationalFn(detail::checked_initial_numerator(rest, k, n), DenomSpec::power_of_one_minus_t(n + 1));
  return d;
}

/// A / (1-t)^{n+1} with A integral palindromic of degree c = k + n + 1
/// agreeing with the given plurigenera P_0 .. P_{floor(c/2)}.
inline RationalFn initial_from_plurigenera(const SeriesWindow& w, std::int64_t k, std::int64_t n) {
  const std::int64_t c = k + n + 1;
  const DenomSpec den = DenomSpec::power_of_one_minus_t(n + 1);
  if (c < 0) {
    for (const auto& v : w.coeffs)
      if (!v.is_zero()) throw std::domain_error("initial_from_plurigenera: c < 0 requires all plurigenera to vanish");
    return RationalFn({}, den);
  }
  const std::int64_t half = floor_div(c, 2);
  if (w.start > 0 || w.start + static_cast<Exponent>(w.coeffs.size()) <= half)
    throw std::invalid_argument("initial_from_plurigenera: window must cover degrees 0.." + std::to_string(half));
  std::map<Exponent, Rational> low;
  for (Exponent i = 0; i <= half; ++i) low[i] = w.at(i);
  LaurentPoly prod = LaurentPoly::from_terms(low) * pow(LaurentPoly::one_minus_t_power(1), static_cast<unsigned>(n + 1));
  std::vector<Rational> a(static_cast<std::size_t>(c + 1));
  for (Exponent i = 0; i <= half; ++i) {
    a[static_cast<std::size_t>(i)] = prod.coeff(i);
    a[static_cast<std::size_t>(c - i)] = prod.coeff(i);
  }
  LaurentPoly A(0, std::move(a));
  if (!A.is_integral()) throw std::domain_error("initial_from_plurigenera: non-integral numerator (plurigenera not integral?)");
  return RationalFn(A, den);
}

struct BinomTerm {
  std::int64_t nu = 0;
  Integer coeff;
};

/// Standard term of index nu: t^{(nu+k+1)/2} / (1-t)^{nu+1} if n and k have
/// different parity, (1+t) t^{(nu+k)/2} / (1-t)^{nu+1} otherwise. For
/// nu < -1 the negative power of (1-t) goes to the numerator.
inline RationalFn standard_term(std::int64_t nu, std::int64_t k, std::int64_t n) {
  const bool same_parity = mod_floor(n - k, 2) == 0;
  LaurentPoly base = same_parity ? (LaurentPoly(1) + LaurentPoly::t_power(1)).shifted(floor_div(nu + k, 2))
                                 : LaurentPoly::t_power(floor_div(nu + k + 1, 2));
  const std::int64_t p = nu + 1;
  if (p < 0) base *= pow(LaurentPoly::one_minus_t_power(1), static_cast<unsigned>(-p));
  return RationalFn(base, DenomSpec::power_of_one_minus_t(std::max<std::int64_t>(p, 0)));
}

/// Coefficients b_nu with A/(1-t)^{n+1} = sum b_nu standard_term(nu, k, n);
/// nu runs over floor(c/2) + 1 values of the parity of n ending at n.
inline std::vector<BinomTerm> binom_decompose(const LaurentPoly& A, std::int64_t k, std::int64_t n) {
  const std::int64_t c = k + n + 1;
  if (A.is_zero()) return {};
  if (c < 0 || !A.is_polynomial() || !is_palindromic(A, c))
    throw std::invalid_argument("binom_decompose: numerator is not palindromic of degree c = " + std::to_string(c));
  if (!A.is_integral()) throw std::invalid_argument("binom_decompose: numerator is not integral");
  const DenomSpec full = DenomSpec::power_of_one_minus_t(n + 1);
  const std::int64_t nu0 = mod_floor(c, 2) == 1 ? -k : -k - 1;
  std::vector<BinomTerm> out;
  LaurentPoly rest = A;
  // The j-th term over (1-t)^{n+1} starts with exactly t^j, so peel off
  // coefficients from the bottom.
  for (std::int64_t j = 0; j <= floor_div(c, 2); ++j) {
    const std::int64_t nu = nu0 + 2 * j;
    LaurentPoly tj = *standard_term(nu, k, n).numerator_over(full);
    Rational b = rest.coeff(j);
    rest -= tj * b;
    out.push_back({nu, b.numerator()});
  }
  if (!rest.is_zero()) throw std::logic_error("binom_decompose: reassembly left a remainder");
  return out;
}

inline RationalFn binom_reassemble(const std::vector<BinomTerm>& terms, std::int64_t k, std::int64_t n) {
  RationalFn s({}, DenomSpec::power_of_one_minus_t(n + 1));
  for (const auto& b : terms) s += standard_term(b.nu, k, n) * Rational(b.coeff);
  return s;
}

/// D^n = A(1) + sum mult * B_Q(1) / r_Q.
inline Rational degree_from_decomposition(const Decomposition& d) {
  Rational deg = d.initial.num().eval_at_one();
  for (const auto& wp : d.orbifold_parts)
    deg += wp.part.fn.num().eval_at_one() * Rational(wp.multiplicity) / Rational(wp.part.source.r());
  return deg;
}

/// Transverse surface point (1/r)(a, r - a).
struct SurfacePoint {
  std::int64_t r = 2;
  std::int64_t a = 1;
};

struct ClosedFormResult {
  RationalFn series;      // riemann-roch form
  Rational degree;        // D^2 for K3, -K^3 for Fano
  Decomposition parsed;   // P_I + sum P_orb; equal to series
};

namespace detail {

/// sum_{i=1}^{r-1} bi(r - bi)/2r t^i with b = a^{-1} mod r.
inline LaurentPoly periodic_correction(std::int64_t r, std::int64_t a) {
  const std::int64_t b = int_inv_mod(a, r);
  std::map<Exponent, Rational> terms;
  for (std::int64_t i = 1; i < r; ++i) {
    const std::int64_t bi = mod_floor(b * i, r);
    terms[i] = Rational(bi * (r - bi), 2 * r);
  }
  return LaurentPoly::from_terms(terms);
}

inline Rational basket_excess(const std::vector<SurfacePoint>& basket) {
  Rational s;
  for (const auto& p : basket) {
    if (p.r < 2 || gcd_int(p.a, p.r) != 1) throw std::invalid_argument("basket point needs r >= 2, gcd(a, r) = 1");
    const std::int64_t b = int_inv_mod(p.a, p.r);
    s += Rational(b * (p.r - b), p.r);
  }
  return s;
}

inline Decomposition closed_form_parse(std::int64_t g, std::int64_t k, std::int64_t n, Basket basket) {
  Decomposition d;
  d.k = k;
  d.n = n;
  d.c = k + n + 1;
  d.initial = RationalFn(LaurentPoly::from_ints({1, static_cast<long>(g - 2), static_cast<long>(g - 2), 1}),
                         DenomSpec::power_of_one_minus_t(n + 1));
  for (auto& e : basket) d.orbifold_parts.push_back({p_orb(e.type, k, n), e.multiplicity});
  return d;
}

}  // namespace detail

/// Polarized K3 surface of genus g with transverse basket points.
inline ClosedFormResult k3_series(std::int64_t g, const std::vector<SurfacePoint>& basket) {
  if (g < -1) throw std::invalid_argument("k3_series: genus must be >= -1");
  const Rational D2 = Rational(2 * g - 2) + detail::basket_excess(basket);
  RationalFn P(LaurentPoly::from_ints({1, 1}), DenomSpec{1});
  P += RationalFn(LaurentPoly::from_ints({1, 1}, 1) * (D2 / Rational(2)), DenomSpec{1, 1, 1});
  Basket b;
  for (const auto& p : basket) {
    P -= RationalFn(detail::periodic_correction(p.r, p.a), DenomSpec{p.r});
    b.push_back({OrbifoldType(p.r, {p.a, p.r - p.a}), 1});
  }
  Decomposition d = detail::closed_form_parse(g, 0, 2, std::move(b));
  if (!(d.total() == P)) throw CheckFailure("k3_parse", "closed form and parse disagree", P - d.total());
  return {P, D2, std::move(d)};
}

/// Q-Fano 3-fold with basket points (1/r)(1, a, r - a) and genus g.
inline ClosedFormResult fano3_series(std::int64_t g, const std::vector<SurfacePoint>& basket) {
  const Rational K3 = Rational(2 * g - 2) + detail::basket_excess(basket);
  RationalFn P(LaurentPoly::from_ints({1, 1}), DenomSpec{1, 1});
  P += RationalFn(LaurentPoly::from_ints({1, 1}, 1) * (K3 / Rational(2)), DenomSpec{1, 1, 1, 1});
  Basket b;
  for (const auto& p : basket) {
    P -= RationalFn(detail::periodic_correction(p.r, p.a), DenomSpec{1, p.r});
    b.push_back({OrbifoldType(p.r, {1, p.a, p.r - p.a}), 1});
  }
  Decomposition d = detail::closed_form_parse(g, -1, 3, std::move(b));
  if (!(d.total() == P)) throw CheckFailure("fano_parse", "closed form and parse disagree", P - d.total());
  return {P, K3, std::move(d)};
}

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::optional<Decomposition> decomposition;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
  }
};

/// Run every check on numerator / prod (1 - t^{w}) without throwing on
/// mathematical failure.
inline VerifyReport verify_series(const RationalFn& P, std::int64_t k, std::int64_t n, const Basket& basket,
                                  const std::optional<LaurentPoly>& J = std::nullopt) {
  VerifyReport rep;
  RationalFn sym = J ? P - RationalFn(*J) : P;
  rep.checks.push_back({"gorenstein_symmetry", is_gorenstein_symmetric(sym, k, n),
                        "t^" + std::to_string(k) + " P(1/t) = (-1)^" + std::to_string(n + 1) + " P(t)"});
  try {
    expand(P, 0);
    rep.checks.push_back({"power_series", true, ""});
  } catch (const NotPowerSeries& e) {
    rep.checks.push_back({"power_series", false, e.what()});
  }
  try {
    rep.decomposition = parse_main(P, n, k, basket, J);
    rep.checks.push_back({"parse", true, "initial part integral palindromic of degree " + std::to_string(k + n + 1)});
    bool sum_ok = rep.decomposition->total() == P;
    rep.checks.push_back({"reassembly", sum_ok, "parts sum to the input series"});
  } catch (const CheckFailure& e) {
    rep.checks.push_back({"parse", false, e.what()});
  }
  return rep;
}

}  // namespace orbrr
