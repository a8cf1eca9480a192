#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace aemf;

namespace {

std::strong_ordering ordering_of(int s) {
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

struct CountingResolver {
  Rational lambda;
  int calls = 0;

  ThresholdResolver get() {
    return [this](std::size_t, const AffineValue& theta) {
      ++calls;
      return ordering_of(cmp(lambda, theta.constant()));
    };
  }
};

}  // namespace

TEST(AffineCompare, IdenticalFormsSkipTheResolver) {
  CountingResolver r{Rational(0)};
  const AffineValue a(Rational(3), {Rational(2)});
  EXPECT_EQ(affine_compare(a, a, r.get()), std::strong_ordering::equal);
  EXPECT_EQ(r.calls, 0);
}

TEST(AffineCompare, ThresholdAgainstOracleOptimum) {
  // F(lambda) = lambda on a single edge of capacity 5, so the grid oracle puts
  // the optimum at 5.
  const OracleResult oracle = oracle_fractional(fixtures::single_edge(5, 0));
  ASSERT_EQ(oracle.lambda.size(), 1u);
  CountingResolver r{oracle.lambda[0]};
  const AffineValue lhs(Rational(1), {Rational(1)});
  EXPECT_EQ(affine_compare(lhs, AffineValue(Rational(4)), r.get()), std::strong_ordering::greater);
  EXPECT_EQ(r.calls, 1);
}

TEST(AffineCompare, ConstantsCompareDirectly) {
  CountingResolver r{Rational(0)};
  EXPECT_EQ(affine_compare(AffineValue(Rational(0)), AffineValue(Rational(2)), r.get()), std::strong_ordering::less);
  EXPECT_EQ(r.calls, 0);
}

TEST(AffineCompare, AgreesWithNumericComparisonOffThreshold) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-6, 6);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational lambda = ratio(coef(rng) + 7, 3);
    const AffineValue a(Rational(coef(rng)), {Rational(coef(rng))});
    const AffineValue b(Rational(coef(rng)), {Rational(coef(rng))});
    CountingResolver r{lambda};
    const std::vector<Rational> point{lambda};
    const Rational x = a.evaluate(point);
    const Rational y = b.evaluate(point);
    EXPECT_EQ(affine_compare(a, b, r.get()), ordering_of(cmp(x, y)));
  }
}

TEST(AffineValue, EvaluationIsAHomomorphism) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-9, 9);
  auto random_value = [&]() {
    return AffineValue(ratio(coef(rng), 2), {Rational(coef(rng)), ratio(coef(rng), 3), Rational(coef(rng))});
  };
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<Rational> point{Rational(coef(rng)), ratio(coef(rng), 5), ratio(coef(rng), 7)};
    const AffineValue a = random_value();
    const AffineValue b = random_value();
    const Rational s = ratio(coef(rng), 4);
    AffineValue tree = a + b;
    tree -= b * s;
    tree = tree - a;
    const Rational direct = a.evaluate(point) + b.evaluate(point) - b.evaluate(point) * s - a.evaluate(point);
    EXPECT_EQ(tree.evaluate(point), direct);
  }
}

TEST(AffineValue, SubstituteAndWithout) {
  const AffineValue v(Rational(1), {Rational(2), Rational(3)});
  const AffineValue w = v.substitute(1, AffineValue(Rational(4)));
  EXPECT_EQ(w, AffineValue(Rational(13), {Rational(2)}));
  EXPECT_EQ(v.without(0), AffineValue(Rational(1), {Rational(0), Rational(3)}));
  EXPECT_EQ(v.width(), 2u);
}

TEST(PolyRoots, LinearRoot) {
  const auto roots = poly_roots(PolyValue({Rational(-3), Rational(1)}), Rational(0), Rational(10));
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_TRUE(roots[0].exact());
  EXPECT_EQ(roots[0].lo, 3);
}

TEST(PolyRoots, QuadraticDropsRootOutsideInterval) {
  const auto roots = poly_roots(PolyValue({Rational(-8), Rational(0), Rational(2)}), Rational(0), Rational(10));
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_TRUE(roots[0].exact());
  EXPECT_EQ(roots[0].lo, 2);
}

TEST(PolyRoots, IrrationalRootIsBracketedTightly) {
  const PolyValue p({Rational(-2), Rational(0), Rational(1)});
  const auto roots = poly_roots(p, Rational(0), Rational(10));
  ASSERT_EQ(roots.size(), 1u);
  const RootBracket& r = roots[0];
  EXPECT_FALSE(r.exact());
  Rational width(10);
  mpq_div_2exp(width.get_mpq_t(), width.get_mpq_t(), 64);
  EXPECT_LE(r.hi - r.lo, width);
  EXPECT_LT(p(r.lo) * p(r.hi), 0);  // sign change inside the bracket
}

TEST(PolyRoots, CubicRootsSortedAndSeparated) {
  // (x - 1)(x - 2)(x - 4) = x^3 - 7x^2 + 14x - 8
  const PolyValue p({Rational(-8), Rational(14), Rational(-7), Rational(1)});
  const auto roots = poly_roots(p, Rational(0), Rational(5));
  ASSERT_EQ(roots.size(), 3u);
  const Rational expected[] = {Rational(1), Rational(2), Rational(4)};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LE(roots[i].lo, expected[i]);
    EXPECT_GE(roots[i].hi, expected[i]);
  }
  EXPECT_TRUE(poly_roots(PolyValue({Rational(1), Rational(0), Rational(1)}), Rational(0), Rational(5)).empty());
}

TEST(DeviationFn, KindsAndValidation) {
  EXPECT_THROW(DeviationFn::constant_shift(Rational(-1)), InvalidInstance);
  EXPECT_THROW(DeviationFn::affine(Rational(1, 2), Rational(0)), InvalidInstance);
  const DeviationFn concave = DeviationFn::polynomial({Rational(1), Rational(3), Rational(-1, 10)});
  EXPECT_TRUE(concave.is_concave());
  EXPECT_NO_THROW(concave.validate_on(Rational(10)));
  EXPECT_THROW(concave.validate_on(Rational(20)), InvalidInstance);  // decreasing past x = 15
  const DeviationFn convex = DeviationFn::polynomial({Rational(1), Rational(0), Rational(2)});
  EXPECT_FALSE(convex.is_concave());
  EXPECT_THROW(DeviationFn::polynomial({Rational(0), Rational(1, 2)}).validate_on(Rational(1)), InvalidInstance);
}

TEST(DeviationFn, MonotoneOnSamples) {
  const std::vector<DeviationFn> fns{DeviationFn::constant_shift(2), DeviationFn::affine(3, 1),
                                     DeviationFn::polynomial({Rational(1), Rational(3), Rational(-1, 10)})};
  for (const DeviationFn& f : fns) {
    for (int a = 0; a <= 40; ++a) {
      for (int b = a; b <= 40; b += 3) {
        EXPECT_LE(f(ratio(a, 4)), f(ratio(b, 4)));
      }
      EXPECT_GE(f(ratio(a, 4)), ratio(a, 4));
    }
  }
}
