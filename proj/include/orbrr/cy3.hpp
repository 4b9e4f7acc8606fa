#pragma once

// Calabi-Yau 3-folds whose orbifold locus contains curves: the rational
// Riemann-Roch parts I..IV and the integral split into P_I, point ice cream,
// A_C and B_C.

#include "orbrr/hilbert.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbrr {

/// Curve of transverse type (1/s)(a, s - a).
struct CurveStratum {
  std::int64_t s = 2;
  std::int64_t a = 1;
  Rational DC;            // degree of D on C
  Rational iv_prefactor;  // N_C / (72 s tau_C), multiplies B/(1-t^s) in part IV

  void validate() const {
    if (s < 2 || a <= 0 || a >= s || gcd_int(a, s) != 1)
      throw std::invalid_argument("CurveStratum: need s >= 2, 0 < a < s, gcd(a, s) = 1");
  }
};

struct CY3Parts {
  RationalFn I;
  std::vector<RationalFn> II;   // per point, multiplicity folded in
  std::vector<RationalFn> III;  // per curve
  std::vector<RationalFn> IV;   // per curve

  RationalFn total() const {
    RationalFn s = I;
    for (const auto* v : {&II, &III, &IV})
      for (const auto& f : *v) s += f;
    return s;
  }
};

inline LaurentPoly delta_derivative(const DeltaPoly& d) { return d.poly.derivative(); }

namespace detail {

inline RationalFn cy3_part_I(const Rational& Dc2, const Rational& D3) {
  RationalFn I(LaurentPoly(1));
  I += RationalFn(LaurentPoly::t_power(1) * (Dc2 / Rational(12)), DenomSpec{1, 1});
  I += RationalFn(LaurentPoly::from_ints({1, 4, 1}, 1) * (D3 / Rational(6)), DenomSpec{1, 1, 1, 1});
  return I;
}

/// Part III without the DC factor.
inline RationalFn cy3_part_III_unit(std::int64_t s, std::int64_t a) {
  DeltaPoly D = delta(OrbifoldType(s, {a, s - a}));
  const Rational sigma0 = D.poly.coeff(s);
  RationalFn f(D.poly.shifted(s) * Rational(s), DenomSpec{s, s});
  f += RationalFn(delta_derivative(D).shifted(1), DenomSpec{s});
  f -= RationalFn(LaurentPoly::monomial(sigma0, 1), DenomSpec{1, 1});
  return f;
}

}  // namespace detail

/// B with (1-t^a)^2 (1-t^{s-a})^2 B == t^a - t^{s-a} mod (1-t^s)/(1-t),
/// support in [1, s-1].
inline LaurentPoly cy3_curve_B(std::int64_t s, std::int64_t a) {
  const LaurentPoly F = LaurentPoly::geometric(s);
  const LaurentPoly u = LaurentPoly::one_minus_t_power(a), v = LaurentPoly::one_minus_t_power(s - a);
  const LaurentPoly t1 = LaurentPoly::t_power(1);
  return (inv_mod(t1 * u * u * v, F, 0, s) - inv_mod(t1 * u * v * v, F, 0, s)).shifted(1);
}

inline CY3Parts cy3_rr_parts(const Rational& Dc2, const Rational& D3, const Basket& points,
                             const std::vector<CurveStratum>& curves) {
  CY3Parts p;
  p.I = detail::cy3_part_I(Dc2, D3);
  for (const auto& e : points) {
    if (e.type.trivial()) continue;
    p.II.push_back(RationalFn(delta(e.type).poly * Rational(e.multiplicity), DenomSpec{e.type.r()}));
  }
  for (const auto& c : curves) {
    c.validate();
    p.III.push_back(detail::cy3_part_III_unit(c.s, c.a) * c.DC);
    p.IV.push_back(RationalFn(cy3_curve_B(c.s, c.a) * c.iv_prefactor, DenomSpec{c.s}));
  }
  return p;
}

namespace detail {

struct LinearSolution {
  bool consistent = false;
  bool unique = false;
  std::vector<Rational> x;  // a particular solution (free variables zero)
};

/// Row reduction of the augmented system M x = b over Q.
inline LinearSolution solve_linear(std::vector<std::vector<mpq_class>> M, std::vector<mpq_class> b) {
  const std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(M[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(M[p], M[r]);
    std::swap(b[p], b[r]);
    const mpq_class inv = 1 / M[r][c];
    for (auto& v : M[r]) v *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(M[i][c]) == 0) continue;
      const mpq_class f = M[i][c];
      for (std::size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  LinearSolution sol;
  sol.consistent = true;
  for (std::size_t i = r; i < rows; ++i)
    if (sgn(b[i]) != 0) sol.consistent = false;
  sol.unique = pivot_col.size() == cols;
  sol.x.assign(cols, Rational());
  for (std::size_t i = 0; i < pivot_col.size(); ++i) sol.x[pivot_col[i]] = Rational(b[i]);
  return sol;
}

/// Solve target == sum x_j basis_j as an identity of rational functions.
inline LinearSolution solve_combination(const RationalFn& target, const std::vector<RationalFn>& basis) {
  DenomSpec common = target.den();
  for (const auto& f : basis) common = join(common, f.den());
  const LaurentPoly rhs = *target.numerator_over(common);
  std::vector<LaurentPoly> cols;
  Exponent lo = rhs.is_zero() ? 0 : rhs.low_degree(), hi = rhs.is_zero() ? 0 : rhs.degree();
  for (const auto& f : basis) {
    cols.push_back(*f.numerator_over(common));
    if (!cols.back().is_zero()) {
      lo = std::min(lo, cols.back().low_degree());
      hi = std::max(hi, cols.back().degree());
    }
  }
  std::vector<std::vector<mpq_class>> M;
  std::vector<mpq_class> b;
  for (Exponent e = lo; e <= hi; ++e) {
    std::vector<mpq_class> row;
    bool any = !rhs.coeff(e).is_zero();
    for (const auto& c : cols) {
      row.push_back(c.coeff(e).raw());
      any = any || sgn(row.back()) != 0;
    }
    if (!any) continue;
    M.push_back(std::move(row));
    b.push_back(rhs.coeff(e).raw());
  }
  if (M.empty()) return {true, basis.empty(), std::vector<Rational>(basis.size())};
  return solve_linear(std::move(M), std::move(b));
}

}  // namespace detail

/// D c_2 and D^3 recovered from the t^1 and t^2 coefficients, given the
/// other parts: with x = Dc2/12 and y = D^3/6 the coefficients of part I are
/// x + y and 2x + 8y.
inline std::pair<Rational, Rational> recover_dc2_d3(const RationalFn& P, const Basket& points,
                                                    const std::vector<CurveStratum>& curves) {
  CY3Parts zero = cy3_rr_parts(Rational(0), Rational(0), points, curves);
  SeriesWindow w = expand(P - zero.total(), 2);
  const Rational p1 = w.at(1), p2 = w.at(2);
  const Rational y = (p2 - Rational(2) * p1) / Rational(6);
  const Rational x = p1 - y;
  return {x * Rational(12), y * Rational(6)};
}

struct CY3RRFit {
  Rational Dc2, D3;
  std::vector<CurveStratum> curves;  // DC and iv_prefactor solved
  CY3Parts parts;
};

/// Solve for Dc2, D^3, every DC and every IV prefactor so that the parts
/// sum to P exactly. Curves whose B vanishes get iv_prefactor 0.
inline CY3RRFit cy3_rr_fit(const RationalFn& P, const Basket& points, const std::vector<std::pair<std::int64_t, std::int64_t>>& curves) {
  CY3Parts fixed = cy3_rr_parts(Rational(0), Rational(0), points, {});
  RationalFn target = P - RationalFn(LaurentPoly(1));
  for (const auto& f : fixed.II) target -= f;
  std::vector<RationalFn> basis{RationalFn(LaurentPoly::t_power(1) * Rational(1, 12), DenomSpec{1, 1}),
                                RationalFn(LaurentPoly::from_ints({1, 4, 1}, 1) * Rational(1, 6), DenomSpec{1, 1, 1, 1})};
  std::vector<int> iv_index;
  for (const auto& [s, a] : curves) {
    CurveStratum{s, a, {}, {}}.validate();
    basis.push_back(detail::cy3_part_III_unit(s, a));
    LaurentPoly B = cy3_curve_B(s, a);
    if (B.is_zero()) {
      iv_index.push_back(-1);
    } else {
      iv_index.push_back(static_cast<int>(basis.size()));
      basis.push_back(RationalFn(B, DenomSpec{s}));
    }
  }
  auto sol = detail::solve_combination(target, basis);
  if (!sol.consistent) throw CheckFailure("cy3_rr_inconsistent", "no rational parts I..IV sum to the series", target);
  if (!sol.unique) throw CheckFailure("cy3_rr_underdetermined", "rational parts are not determined by the series", target);
  CY3RRFit fit;
  fit.Dc2 = sol.x[0];
  fit.D3 = sol.x[1];
  std::size_t col = 2;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    CurveStratum c{curves[i].first, curves[i].second, sol.x[col++], {}};
    if (iv_index[i] >= 0) c.iv_prefactor = sol.x[col++];
    fit.curves.push_back(c);
  }
  fit.parts = cy3_rr_parts(fit.Dc2, fit.D3, points, fit.curves);
  return fit;
}

struct CY3CurvePart {
  std::int64_t s = 2;
  std::int64_t a = 1;
  Integer delta_C;
  RationalFn A;  // delta_C * P_orb((1/s)(a, s-a), s) / (1 - t^s)
  RationalFn B;  // Num B_C / ((1-t)^3 (1-t^s))
};

struct CY3IceParts {
  RationalFn initial;
  std::vector<WeightedPart> point_parts;
  std::vector<CY3CurvePart> curve_parts;

  RationalFn total() const {
    RationalFn s = initial;
    for (const auto& wp : point_parts) s += wp.part.fn * Rational(wp.multiplicity);
    for (const auto& c : curve_parts) s += c.A + c.B;
    return s;
  }
};

/// Integral split of a CY3 series (k = 0, n = 3) with curve strata given by
/// transverse types (s, a); s must be distinct across curves.
inline CY3IceParts cy3_ice_parts(const RationalFn& P, const Basket& points,
                                 const std::vector<std::pair<std::int64_t, std::int64_t>>& curves) {
  constexpr std::int64_t k = 0, n = 3;
  if (!is_gorenstein_symmetric(P, k, n))
    throw CheckFailure("gorenstein_symmetry", "series is not Gorenstein symmetric at k = 0, n = 3", P);
  CY3IceParts out;
  out.initial = initial_from_plurigenera(expand(P, 2), k, n);
  RationalFn rest = P - out.initial;
  for (const auto& e : points) {
    if (e.multiplicity < 1) throw std::invalid_argument("cy3_ice_parts: basket multiplicities must be positive");
    OrbifoldPart part = p_orb_general(e.type, k, n);
    rest -= part.fn * Rational(e.multiplicity);
    out.point_parts.push_back({std::move(part), e.multiplicity});
  }

  std::set<std::int64_t> seen;
  std::vector<RationalFn> basis;
  struct Slots {
    std::size_t delta;
    std::vector<std::pair<std::size_t, LaurentPoly>> b;  // column, numerator monomials
  };
  std::vector<Slots> slots;
  for (const auto& [s, a] : curves) {
    CurveStratum{s, a, {}, {}}.validate();
    if (!seen.insert(s).second)
      throw std::invalid_argument("cy3_ice_parts: two curves share s = " + std::to_string(s) + "; the split is not determined");
    Slots sl;
    OrbifoldPart ap = p_orb(OrbifoldType(s, {a, s - a}), s, 2);
    sl.delta = basis.size();
    basis.push_back(RationalFn(ap.fn.num(), ap.fn.den() + DenomSpec{s}));
    for (std::int64_t j = 3; 2 * j <= s + 3; ++j) {
      LaurentPoly m = LaurentPoly::t_power(j);
      if (s + 3 - j != j) m += LaurentPoly::t_power(s + 3 - j);
      sl.b.emplace_back(basis.size(), m);
      basis.push_back(RationalFn(m, DenomSpec{1, 1, 1, s}));
    }
    slots.push_back(std::move(sl));
  }

  auto sol = detail::solve_combination(rest, basis);
  if (!sol.consistent)
    throw CheckFailure("cy3_inconsistent", "no choice of delta_C and B_C matches the series", rest);
  if (!sol.unique) throw CheckFailure("cy3_underdetermined", "delta_C and B_C are not determined by the series", rest);

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto [s, a] = curves[i];
    const Rational dC = sol.x[slots[i].delta];
    if (!dC.is_integer())
      throw CheckFailure("cy3_delta_integral", "delta_C = " + dC.to_string() + " for s = " + std::to_string(s), rest);
    LaurentPoly num;
    for (const auto& [col, m] : slots[i].b) num += m * sol.x[col];
    if (!num.is_integral())
      throw CheckFailure("cy3_B_integral", "Num B_C is not integral for s = " + std::to_string(s), RationalFn(num, DenomSpec{1, 1, 1, s}));
    if (!is_palindromic(num, s + 3) || (!num.is_zero() && (num.low_degree() < 3 || num.degree() > s)))
      throw CheckFailure("cy3_B_shape", "Num B_C is not palindromic of degree s+3 on [3, s]", RationalFn(num, DenomSpec{1, 1, 1, s}));
    CY3CurvePart cp{s, a, dC.numerator(), basis[slots[i].delta] * dC, RationalFn(num, DenomSpec{1, 1, 1, s})};
    out.curve_parts.push_back(std::move(cp));
  }
  if (!(out.total() == P)) throw CheckFailure("cy3_reassembly", "parts do not sum to the series", P - out.total());
  return out;
}

}  // namespace orbrr
