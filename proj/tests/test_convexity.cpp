#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <stdexcept>

#include "takagi/convexity.hpp"

using namespace takagi;

namespace {

PrecisionPolicy test_policy() {
  PrecisionPolicy policy;
  policy.initial_bits = 128;
  policy.max_bits = 1024;
  return policy;
}

}  // namespace

TEST_CASE("midpoint frame") {
  // (1/4, 3/4): same level, numerators share parity, midpoint 1/2 integral.
  MidpointFrame f = midpoint_frame(DyadicRational(1, 2), DyadicRational(3, 2));
  CHECK(f.m == 2);
  CHECK(f.l == 1);
  CHECK(f.level == 2);

  // (1/4, 1/2): parities disagree at the common level, so it refines once.
  f = midpoint_frame(DyadicRational(1, 2), DyadicRational(1, 1));
  CHECK(f.m == 3);
  CHECK(f.l == 1);
  CHECK(f.level == 3);

  // Order of arguments is immaterial.
  f = midpoint_frame(DyadicRational(1, 1), DyadicRational(1, 2));
  CHECK(f.m == 3);
  CHECK(f.l == 1);
  CHECK(f.level == 3);

  // (0, 1): the whole interval in frame form.
  f = midpoint_frame(DyadicRational(0, 0), DyadicRational(1, 0));
  CHECK(f.m == 1);
  CHECK(f.l == 1);
  CHECK(f.level == 1);

  // Unreduced representations frame identically to their canonical forms.
  f = midpoint_frame(DyadicRational(2, 3), DyadicRational(6, 3));
  CHECK(f.m == 2);
  CHECK(f.l == 1);
  CHECK(f.level == 2);

  // x = y collapses to a zero offset.
  f = midpoint_frame(DyadicRational(3, 3), DyadicRational(3, 3));
  CHECK(f.l == 0);
}

TEST_CASE("convexity gap values") {
  const PrecisionPolicy policy = test_policy();

  // gap(0, 1) = f(1/2) - 0 = 1 for every alpha.
  for (double a : {1.0, 1.5, 2.0}) {
    const RealInterval g = convexity_gap(DyadicRational(0, 0),
                                         DyadicRational(1, 0),
                                         AlphaParameter(a), policy);
    CHECK(g.is_point());
    CHECK(g.lo_double() == 1.0);
  }

  // gap(1/4, 3/4) at alpha = 1: f(1/2) - (1 + 1)/2 = 0.
  const RealInterval mid = convexity_gap(DyadicRational(1, 2),
                                         DyadicRational(3, 2),
                                         AlphaParameter(1.0), policy);
  CHECK(mid.contains_zero());
  CHECK(mid.width_upper() < 1e-30);

  // x = y: exact zero without any evaluation.
  const RealInterval same = convexity_gap(DyadicRational(5, 3),
                                          DyadicRational(5, 3),
                                          AlphaParameter(1.3), policy);
  CHECK(same.is_point());
  CHECK(same.contains_zero());
}

TEST_CASE("equality prediction across the alpha range") {
  const AlphaParameter one(1.0);
  const AlphaParameter mid(1.5);
  const AlphaParameter two(2.0);

  // alpha = 2: always equality.
  CHECK(predict_convexity_equality(DyadicRational(1, 3), DyadicRational(5, 3),
                                   two));

  // 1 < alpha < 2: adjacent grid pairs only.
  CHECK(predict_convexity_equality(DyadicRational(0, 0), DyadicRational(1, 0),
                                   mid));
  CHECK(predict_convexity_equality(DyadicRational(1, 2), DyadicRational(1, 1),
                                   mid));
  CHECK_FALSE(predict_convexity_equality(DyadicRational(1, 2),
                                         DyadicRational(3, 2), mid));
  CHECK_FALSE(predict_convexity_equality(DyadicRational(1, 3),
                                         DyadicRational(1, 1), mid));

  // alpha = 1: a grid point within its own mesh width.
  CHECK(predict_convexity_equality(DyadicRational(1, 2), DyadicRational(7, 4),
                                   one));
  CHECK_FALSE(predict_convexity_equality(DyadicRational(1, 4),
                                         DyadicRational(15, 4), one));

  // x = y is equality everywhere.
  CHECK(predict_convexity_equality(DyadicRational(3, 3), DyadicRational(3, 3),
                                   one));

  CHECK_THROWS_AS(predict_convexity_equality(DyadicRational(0, 0),
                                             DyadicRational(1, 0),
                                             AlphaParameter(0.5)),
                  std::domain_error);
  CHECK_THROWS_AS(predict_convexity_equality(DyadicRational(0, 0),
                                             DyadicRational(1, 0),
                                             AlphaParameter(2.5)),
                  std::domain_error);
}

TEST_CASE("checked instances") {
  const PrecisionPolicy policy = test_policy();

  const ConvexityReport eq = check_convexity(
      DyadicRational(0, 0), DyadicRational(1, 0), AlphaParameter(1.5), policy);
  CHECK(eq.relation == Relation::equal_certified);
  CHECK(eq.predicted_equality);
  CHECK(eq.agrees);
  CHECK(eq.gap.is_point());
  CHECK(eq.gap.lo_double() == 1.0);
  CHECK(eq.m == 1);
  CHECK(eq.l == 1);
  CHECK(eq.level == 1);

  const ConvexityReport st = check_convexity(
      DyadicRational(1, 2), DyadicRational(3, 2), AlphaParameter(1.5), policy);
  CHECK(st.relation == Relation::strict);
  CHECK_FALSE(st.predicted_equality);
  CHECK(st.agrees);

  const ConvexityReport same = check_convexity(
      DyadicRational(5, 3), DyadicRational(5, 3), AlphaParameter(1.2), policy);
  CHECK(same.relation == Relation::equal_certified);
  CHECK(same.agrees);

  CHECK_THROWS_AS(check_convexity(DyadicRational(0, 0), DyadicRational(1, 0),
                                  AlphaParameter(2.5), policy),
                  std::domain_error);
}

TEST_CASE("the bound holds on a dense grid") {
  const PrecisionPolicy policy = test_policy();
  for (double a : {1.0, 1.3, 1.5, 1.8, 2.0}) {
    const AlphaParameter alpha(a);
    const int level = 4;
    const std::uint64_t n = std::uint64_t{1} << level;
    for (std::uint64_t i = 0; i <= n; ++i) {
      for (std::uint64_t j = i + 1; j <= n; ++j) {
        const ConvexityReport r = check_convexity(
            DyadicRational(i, level), DyadicRational(j, level), alpha, policy);
        REQUIRE(r.relation != Relation::greater);
        REQUIRE(r.relation != Relation::inconclusive);
        REQUIRE(r.agrees);
      }
    }
  }
}

TEST_CASE("alpha = 2 is equality everywhere") {
  const PrecisionPolicy policy = test_policy();
  const AlphaParameter two(2.0);
  for (std::uint64_t i = 0; i <= 16; ++i) {
    for (std::uint64_t j = i + 1; j <= 16; ++j) {
      const ConvexityReport r = check_convexity(
          DyadicRational(i, 4), DyadicRational(j, 4), two, policy);
      REQUIRE(r.relation == Relation::equal_certified);
      REQUIRE(r.gap.overlaps(r.bound));
    }
  }
}

TEST_CASE("rescaling identity ties the function to the digit sums") {
  const PrecisionPolicy policy = test_policy();

  // m = 2, l = 1, level = 2 at alpha = 1.3: both sides enclose
  // 2^(alpha-1) - 1.  The exponent must be the rounded difference
  // alpha - 1, which is not the same double as the literal 0.3.
  const AlphaParameter alpha(1.3);
  const auto sides = reduction_identity(2, 1, 2, alpha, policy);
  CHECK(sides.first.overlaps(sides.second));
  const RealInterval expected = pow2_scaled(alpha.value() - 1.0, 1, 128) -
                                RealInterval::exact(std::int64_t{1}, 128);
  CHECK(sides.first.overlaps(expected));
  CHECK(sides.second.overlaps(expected));

  // Exhaustive small frames at several alphas.
  for (double a : {1.0, 1.5, 2.0}) {
    const AlphaParameter alpha_a(a);
    for (int level = 1; level <= 5; ++level) {
      const std::uint64_t n = std::uint64_t{1} << level;
      for (std::uint64_t m = 0; m <= n; ++m) {
        for (std::uint64_t l = 1; l <= m && m + l <= n; ++l) {
          const auto pair = reduction_identity(m, l, level, alpha_a, policy);
          REQUIRE(pair.first.overlaps(pair.second));
          REQUIRE(pair.first.width_upper() < 0x1p-80);
          REQUIRE(pair.second.width_upper() < 0x1p-80);
        }
      }
    }
  }

  CHECK_THROWS_AS(reduction_identity(2, 1, 0, alpha, policy),
                  std::domain_error);
  CHECK_THROWS_AS(reduction_identity(1, 2, 3, alpha, policy),
                  std::domain_error);
  CHECK_THROWS_AS(reduction_identity(7, 2, 3, alpha, policy),
                  std::domain_error);
}

TEST_CASE("exact equality knowledge in frame form") {
  // l = 0 with a vanishing difference: trivially equal.
  CHECK(convexity_exact_equality(LambdaPolynomial(), 0, 0.5) == true);

  // Monomial route: Delta(6, 2) = 2L against l = 2 at any p.
  CHECK(convexity_exact_equality(second_difference(6, 2), 2, 0.3) == true);

  // Integer routes at the ends of the range.
  CHECK(convexity_exact_equality(second_difference(4, 2), 2, 1.0) == true);
  CHECK(convexity_exact_equality(second_difference(4, 2), 2, 0.0) == false);

  // Fractional p without a certificate: undecided, numerics must rule.
  CHECK_FALSE(convexity_exact_equality(second_difference(4, 2), 2, 0.5)
                  .has_value());
}
