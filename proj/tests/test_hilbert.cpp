#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace orbrr;
using testutil::P;

namespace {

Basket x10_basket() { return {{OrbifoldType(2, {1, 1, 1}), 5}, {OrbifoldType(3, {1, 2, 2}), 1}}; }

}  // namespace

TEST(HilbertCI, KnownExamples) {
  auto x10 = hilbert_ci({1, 1, 2, 2, 3}, {10});
  EXPECT_EQ(x10.series, RationalFn(LaurentPoly::one_minus_t_power(10), {1, 1, 2, 2, 3}));
  EXPECT_EQ(x10.k, 1);
  EXPECT_EQ(x10.n, 3);
  auto p57 = hilbert_ci({5, 7}, {});
  EXPECT_EQ(p57.series, RationalFn(LaurentPoly(1), {5, 7}));
  EXPECT_EQ(p57.k, -12);
  EXPECT_EQ(p57.n, 1);
  auto x40 = hilbert_ci({2, 5, 8, 10, 15}, {40});
  EXPECT_EQ(x40.k, 0);
  EXPECT_EQ(x40.n, 3);
  EXPECT_THROW(hilbert_ci({1, 2}, {3}), std::invalid_argument);
}

TEST(ParseMain, X10) {
  auto ci = hilbert_ci({1, 1, 2, 2, 3}, {10});
  Decomposition d = parse_main(ci.series, ci.n, ci.k, x10_basket());
  EXPECT_EQ(d.c, 5);
  EXPECT_EQ(d.initial_numerator(), P({1, -2, 3, 3, -2, 1}));
  ASSERT_EQ(d.orbifold_parts.size(), 2u);
  EXPECT_EQ(d.orbifold_parts[0].part.fn, RationalFn(P({-1}, 3), {1, 1, 1, 2}));
  EXPECT_EQ(d.orbifold_parts[1].part.fn, RationalFn(P({-1, -1}, 3), {1, 1, 1, 3}));
  EXPECT_EQ(d.total(), ci.series);
  EXPECT_EQ(degree_from_decomposition(d), Rational(5, 6));
  EXPECT_TRUE(d.warnings.empty());
}

TEST(ParseMain, WeightedLine) {
  auto ci = hilbert_ci({5, 7}, {});
  Decomposition d = parse_main(ci.series, 1, -12, {{OrbifoldType(7, {5}), 1}, {OrbifoldType(5, {2}), 1}});
  EXPECT_TRUE(d.initial.is_zero());
  EXPECT_EQ(d.orbifold_parts[0].part.fn.num(), P({1, 0, 1, 0, 1}, -4));
  EXPECT_EQ(d.orbifold_parts[1].part.fn.num(), P({-1, 0, -1}, -4));
  EXPECT_EQ(d.total(), ci.series);
}

TEST(ParseMain, QuinticK3) {
  auto ci = hilbert_ci({1, 1, 1, 2}, {5});
  Decomposition d = parse_main(ci.series, 2, 0, {{OrbifoldType(2, {1, 1}), 1}});
  EXPECT_EQ(d.initial_numerator(), P({1, 0, 0, 1}));
  EXPECT_EQ(d.orbifold_parts[0].part.fn, RationalFn(P({1}, 2), {1, 1, 2}));
}

TEST(ParseMain, DiagnosesWrongBasket) {
  auto ci = hilbert_ci({1, 1, 2, 2, 3}, {10});
  try {
    parse_main(ci.series, ci.n, ci.k, {{OrbifoldType(2, {1, 1, 1}), 4}, {OrbifoldType(3, {1, 2, 2}), 1}});
    FAIL() << "expected CheckFailure";
  } catch (const CheckFailure& e) {
    EXPECT_EQ(e.check, "initial_form");
    // the residual is exactly one missing 1/2 point
    EXPECT_EQ(e.residual, p_orb(OrbifoldType(2, {1, 1, 1}), 1, 3).fn + RationalFn(P({1, -2, 3, 3, -2, 1}), {1, 1, 1, 1}));
  }
}

TEST(ParseMain, DiagnosesAsymmetricSeries) {
  try {
    parse_main(RationalFn(LaurentPoly(1), {1}), 1, 0, {});
    FAIL() << "expected CheckFailure";
  } catch (const CheckFailure& e) {
    EXPECT_EQ(e.check, "gorenstein_symmetry");
  }
}

TEST(ParseMain, RejectsNonIsolatedBasketEntry) {
  auto ci = hilbert_ci({2, 5, 8, 10, 15}, {40});
  EXPECT_THROW(parse_main(ci.series, 3, 0, {{OrbifoldType(15, {2, 5, 8}), 1}}), std::invalid_argument);
}

TEST(ParseMain, IrregularityPolynomial) {
  // add J = 2 + t to the X10 series; parse must subtract it back
  auto ci = hilbert_ci({1, 1, 2, 2, 3}, {10});
  RationalFn withJ = ci.series + RationalFn(P({2, 1}));
  Decomposition d = parse_main(withJ, 3, 1, x10_basket(), P({2, 1}));
  EXPECT_EQ(d.initial_numerator(), P({1, -2, 3, 3, -2, 1}));
  EXPECT_EQ(d.total(), withJ);
  EXPECT_TRUE(d.warnings.empty());
  // degree above k is accepted with a warning
  RationalFn withJ2 = ci.series + RationalFn(P({1}, 4));
  Decomposition d2 = parse_main(withJ2, 3, 1, x10_basket(), P({1}, 4));
  EXPECT_EQ(d2.warnings.size(), 1u);
}

TEST(InitialFromPlurigenera, Examples) {
  EXPECT_EQ(initial_from_plurigenera({0, testutil::ints({1, 2, 5})}, 1, 3).num(), P({1, -2, 3, 3, -2, 1}));
  for (long g = -1; g <= 6; ++g)
    EXPECT_EQ(initial_from_plurigenera({0, testutil::ints({1, g + 1})}, 0, 2).num(), P({1, g - 2, g - 2, 1}));
  EXPECT_EQ(initial_from_plurigenera({0, testutil::ints({1})}, -4, 3).num(), LaurentPoly(1));
  EXPECT_TRUE(initial_from_plurigenera({0, testutil::ints({0, 0})}, -5, 2).is_zero());
  EXPECT_THROW(initial_from_plurigenera({0, testutil::ints({1})}, -5, 2), std::domain_error);
  EXPECT_THROW(initial_from_plurigenera({0, testutil::ints({1, 2})}, 1, 3), std::invalid_argument);
}

TEST(InitialFromPlurigenera, MatchesParse) {
  auto ci = hilbert_ci({1, 1, 2, 2, 3}, {10});
  Decomposition d = parse_main(ci.series, ci.n, ci.k, x10_basket());
  EXPECT_EQ(initial_from_plurigenera(expand(ci.series, 2), 1, 3), d.initial);
}

TEST(BinomDecompose, X10Initial) {
  auto b = binom_decompose(P({1, -2, 3, 3, -2, 1}), 1, 3);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0].nu, -1);
  EXPECT_EQ(b[0].coeff, 1);
  EXPECT_EQ(b[1].nu, 1);
  EXPECT_EQ(b[1].coeff, 1);
  EXPECT_EQ(b[2].nu, 3);
  EXPECT_EQ(b[2].coeff, 2);
  // 1 + t + (t+t^2)/(1-t)^2 + 2(t^2+t^3)/(1-t)^4
  RationalFn expected = RationalFn(P({1, 1})) + RationalFn(P({1, 1}, 1), {1, 1}) + RationalFn(P({2, 2}, 2), {1, 1, 1, 1});
  EXPECT_EQ(binom_reassemble(b, 1, 3), expected);
}

TEST(BinomDecompose, K3Initial) {
  for (long g = -1; g <= 5; ++g) {
    auto b = binom_decompose(P({1, g - 2, g - 2, 1}), 0, 2);
    ASSERT_EQ(b.size(), 2u);
    EXPECT_EQ(b[0].coeff, 1);
    EXPECT_EQ(b[1].coeff, g - 1);
    EXPECT_EQ(binom_reassemble(b, 0, 2), RationalFn(P({1, 1}), {1}) + RationalFn(P({g - 1, g - 1}, 1), {1, 1, 1}));
  }
}

TEST(BinomDecompose, EvenCoindexNeedsLowestTerm) {
  // (1 + t^2)/(1-t)^2 at k = 0, n = 1: 1 + 2 t/(1-t)^2
  auto b = binom_decompose(P({1, 0, 1}), 0, 1);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].nu, -1);
  EXPECT_EQ(b[0].coeff, 1);
  EXPECT_EQ(b[1].coeff, 2);
  EXPECT_EQ(binom_reassemble(b, 0, 1), RationalFn(P({1, 0, 1}), {1, 1}));
}

TEST(BinomDecompose, ZeroAndBadInput) {
  EXPECT_TRUE(binom_decompose(LaurentPoly(), 1, 3).empty());
  EXPECT_THROW(binom_decompose(P({1, 2}), 1, 3), std::invalid_argument);
}

TEST(K3, ThreeSurfacesPartByPart) {
  struct Case {
    std::vector<std::int64_t> w;
    std::int64_t d, g;
    std::vector<SurfacePoint> basket;
    LaurentPoly initial;
  };
  std::vector<Case> cases{{{1, 1, 1, 2}, 5, 2, {{2, 1}}, P({1, 0, 0, 1})},
                          {{1, 1, 2, 3}, 7, 1, {{2, 1}, {3, 1}}, P({1, -1, -1, 1})},
                          {{1, 2, 3, 5}, 11, 0, {{2, 1}, {3, 1}, {5, 2}}, P({1, -2, -2, 1})}};
  const std::vector<RationalFn> parts{RationalFn(P({1}, 2), {1, 1, 2}), RationalFn(P({1, 1}, 2), {1, 1, 3}),
                                      RationalFn(P({2, 1, 1, 2}, 2), {1, 1, 5})};
  for (const auto& c : cases) {
    auto ci = hilbert_ci(c.w, {c.d});
    ClosedFormResult res = k3_series(c.g, c.basket);
    EXPECT_EQ(res.series, ci.series);
    EXPECT_EQ(res.parsed.initial_numerator(), c.initial);
    for (std::size_t i = 0; i < c.basket.size(); ++i) EXPECT_EQ(res.parsed.orbifold_parts[i].part.fn, parts[i]);
    EXPECT_EQ(expand(res.series, 1).at(1), Rational(c.g + 1));
  }
}

TEST(K3, DegreeFormula) {
  EXPECT_EQ(k3_series(3, {}).degree, Rational(4));
  EXPECT_TRUE(k3_series(3, {}).parsed.orbifold_parts.empty());
  EXPECT_EQ(k3_series(3, {}).series, initial_from_plurigenera({0, testutil::ints({1, 4})}, 0, 2));
  EXPECT_EQ(k3_series(2, {{2, 1}}).degree, Rational(5, 2));
}

TEST(Fano3, NoBasketIsInitialPart) {
  for (long g = 0; g < 5; ++g) {
    ClosedFormResult f = fano3_series(g, {});
    EXPECT_EQ(f.series, RationalFn(P({1, g - 2, g - 2, 1}), {1, 1, 1, 1}));
    EXPECT_EQ(f.degree, Rational(2 * g - 2));
  }
}

TEST(Fano3, PointsAndAnticanonicalSections) {
  std::vector<std::vector<SurfacePoint>> baskets{{{2, 1}}, {{2, 1}, {3, 1}}, {{5, 2}, {7, 3}}, {{2, 1}, {2, 1}, {11, 4}}};
  for (const auto& b : baskets) {
    ClosedFormResult f = fano3_series(4, b);
    EXPECT_EQ(expand(f.series, 1).at(1), Rational(6));
    EXPECT_TRUE(is_gorenstein_symmetric(f.series, -1, 3));
  }
  ClosedFormResult h = fano3_series(3, {{2, 1}});
  EXPECT_EQ(h.parsed.orbifold_parts[0].part.fn.num(), p_orb(OrbifoldType(2, {1, 1, 1}), -1, 3).fn.num());
}

TEST(Fano3, SameInvModAsK3) {
  for (std::int64_t r = 2; r <= 15; ++r)
    for (std::int64_t a = 1; a < r; ++a) {
      if (gcd_int(a, r) != 1) continue;
      LaurentPoly F = LaurentPoly::geometric(r);
      std::vector<std::int64_t> w3{1, a, r - a}, w2{a, r - a};
      LaurentPoly A3 = exact_div(product_one_minus(w3), pow(P({1, -1}), 3));
      LaurentPoly A2 = exact_div(product_one_minus(w2), pow(P({1, -1}), 2));
      EXPECT_EQ(inv_mod(A3, F, 2, r), inv_mod(A2, F, 2, r));
    }
}

TEST(Degree, CautionExample) {
  auto ci = hilbert_ci({1, 1, 2, 2, 3}, {10});
  Decomposition d = parse_main(ci.series, ci.n, ci.k, x10_basket());
  // initial part alone would give 4; the points contribute 5 x -1/2 and -2/3
  EXPECT_EQ(d.initial.num().eval_at_one(), Rational(4));
  EXPECT_EQ(degree_from_decomposition(d), Rational(5, 6));
  Decomposition none = parse_main(RationalFn(LaurentPoly::one_minus_t_power(4), {1, 1, 1, 1}), 2, 0, {});
  EXPECT_EQ(degree_from_decomposition(none), none.initial.num().eval_at_one());
  EXPECT_EQ(degree_from_decomposition(Decomposition{}), Rational(0));
}

TEST(Verify, PfaffianCurve) {
  RationalFn P5(parse_poly("1-t^6-t^7-t^8-t^9-t^10+t^10+t^11+t^12+t^13+t^14-t^20"), {1, 2, 3, 5, 7});
  VerifyReport rep = verify_series(P5, 2, 1, {{OrbifoldType(7, {5}), 1}});
  EXPECT_TRUE(rep.ok());
  ASSERT_TRUE(rep.decomposition.has_value());
  VerifyReport bad = verify_series(P5, 2, 1, {});
  EXPECT_FALSE(bad.ok());
}
