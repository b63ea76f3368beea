#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <stdexcept>

#include "takagi/function.hpp"

using namespace takagi;

namespace {

PrecisionPolicy test_policy() {
  PrecisionPolicy policy;
  policy.initial_bits = 128;
  policy.max_bits = 1024;
  return policy;
}

}  // namespace

TEST_CASE("tent map") {
  CHECK(tent(0.0) == 0.0);
  CHECK(tent(0.25) == 0.5);
  CHECK(tent(0.5) == 1.0);
  CHECK(tent(0.75) == 0.5);
  CHECK(tent(1.0) == 0.0);
  CHECK(tent(1.25) == 0.5);    // period 1
  CHECK(tent(-0.25) == 0.5);   // even around integers
  CHECK(tent(1e6 + 0.125) == 0.25);

  CHECK(same_value(tent(DyadicRational(1, 2)), DyadicRational(1, 1)));
  CHECK(same_value(tent(DyadicRational(3, 2)), DyadicRational(1, 1)));
  CHECK(tent(DyadicRational(0, 0)).is_zero());
  CHECK(tent(DyadicRational(1, 0)).is_zero());
  CHECK(tent(DyadicRational(1, 1)).is_one());
}

TEST_CASE("alpha and tolerance domain checks") {
  CHECK_THROWS_AS(AlphaParameter(0.0), std::domain_error);
  CHECK_THROWS_AS(AlphaParameter(-1.0), std::domain_error);
  CHECK(AlphaParameter(1.5).value() == 1.5);
  CHECK_THROWS_AS(SeriesTolerance(0.0), std::domain_error);

  // 2^-J / (1 - 2^-1) < 1e-30 first holds past J = 100.
  const int terms = SeriesTolerance(1e-30).truncation_terms(AlphaParameter(1.0));
  CHECK(terms >= 100);
  CHECK(terms <= 140);
}

TEST_CASE("known values on the dyadic lattice") {
  const PrecisionPolicy policy = test_policy();

  struct Known {
    std::uint64_t num;
    int level;
    std::uint64_t expect_num;  // value as a dyadic rational
    int expect_level;
    double alpha;
  };
  // f_1 doubles the classical Takagi function; f_2 is the parabola 4x(1-x).
  const Known table[] = {
      {0, 0, 0, 0, 1.0},  {1, 0, 0, 0, 1.0},  {1, 1, 1, 0, 1.0},
      {1, 2, 1, 0, 1.0},  {1, 3, 3, 2, 1.0},  {3, 3, 5, 2, 1.0},
      {1, 1, 1, 0, 2.0},  {1, 2, 3, 2, 2.0},  {1, 3, 7, 4, 2.0},
      {3, 3, 15, 4, 2.0},
  };
  for (const Known& row : table) {
    const DyadicRational x(row.num, row.level);
    const AlphaParameter alpha(row.alpha);
    // Some expected values exceed 1 (the alpha = 1 maximum is 4/3), so the
    // check scales the enclosure up to an integer containment.
    const mpz_class numerator(row.expect_num);
    for (const RealInterval& value :
         {f_dyadic(x, alpha, policy), f_digit_formula(x, alpha, policy),
          f_midpoint_recursive(x, alpha, policy)}) {
      CHECK(value.mul_pow2(row.expect_level).contains(numerator));
    }
  }
}

TEST_CASE("f(3/4) = 1/2 + 2^-alpha for every alpha") {
  const PrecisionPolicy policy = test_policy();
  for (double a : {1.0, 1.3, 1.7, 2.0, 2.5}) {
    const RealInterval value =
        f_dyadic(DyadicRational(3, 2), AlphaParameter(a), policy);
    const RealInterval expected =
        RealInterval::exact(DyadicRational(1, 1), 128) +
        pow2_scaled(-a, 1, 128);
    CHECK(value.overlaps(expected));
    CHECK(value.width_upper() < 1e-30);
  }
}

TEST_CASE("evaluators agree at shared points") {
  const PrecisionPolicy policy = test_policy();
  for (double a : {1.0, 1.3, 1.75, 2.0}) {
    const AlphaParameter alpha(a);
    for (std::uint64_t num = 0; num <= 64; ++num) {
      const DyadicRational x(num, 6);
      const RealInterval finite = f_dyadic(x, alpha, policy);
      const RealInterval explicit_form = f_digit_formula(x, alpha, policy);
      const RealInterval recursive = f_midpoint_recursive(x, alpha, policy);
      REQUIRE(finite.overlaps(explicit_form));
      REQUIRE(finite.overlaps(recursive));
      REQUIRE(explicit_form.overlaps(recursive));
      REQUIRE(finite.width_upper() < 0x1p-100);
      REQUIRE(explicit_form.width_upper() < 0x1p-100);
      REQUIRE(recursive.width_upper() < 0x1p-100);
    }
  }
}

TEST_CASE("series evaluator encloses the dyadic value") {
  const PrecisionPolicy policy = test_policy();
  const SeriesTolerance tol(1e-30);
  for (double a : {1.0, 1.3, 2.0}) {
    const AlphaParameter alpha(a);
    for (std::uint64_t num : {0ull, 5ull, 13ull, 32ull}) {
      const DyadicRational x(num, 5);
      const RealInterval series = f_series(x.to_double(), alpha, tol, policy);
      const RealInterval finite = f_dyadic(x, alpha, policy);
      REQUIRE(series.overlaps(finite));
      REQUIRE(series.width_upper() < 1e-28);
    }
  }
  // Periodicity: the series sees 1.25 and 0.25 identically.
  const AlphaParameter alpha(1.4);
  CHECK(f_series(1.25, alpha, tol, policy)
            .overlaps(f_series(0.25, alpha, tol, policy)));
}

TEST_CASE("symmetry about one half") {
  const PrecisionPolicy policy = test_policy();
  for (double a : {1.0, 1.5, 2.0}) {
    const AlphaParameter alpha(a);
    for (std::uint64_t num = 0; num <= 32; ++num) {
      const DyadicRational x(num, 5);
      const DyadicRational mirror(32 - num, 5);
      REQUIRE(f_dyadic(x, alpha, policy)
                  .same_endpoints(f_dyadic(mirror, alpha, policy)));
    }
  }
}

TEST_CASE("representation does not change the finite sum") {
  const PrecisionPolicy policy = test_policy();
  const AlphaParameter alpha(1.3);
  // Doubling numerator and level only appends vanishing tent terms, so the
  // computed interval is bit-for-bit the same -- the property that lets
  // sweeps evaluate a whole grid at its finest level.
  for (std::uint64_t num = 0; num <= 16; ++num) {
    const DyadicRational coarse(num, 4);
    const DyadicRational fine(num * 16, 8);
    REQUIRE(f_dyadic(coarse, alpha, policy)
                .same_endpoints(f_dyadic(fine, alpha, policy)));
  }
}

TEST_CASE("alpha = 2 collapses to the parabola") {
  const PrecisionPolicy policy = test_policy();
  const AlphaParameter two(2.0);
  const int level = 6;
  const std::uint64_t n = std::uint64_t{1} << level;
  for (std::uint64_t m = 0; m <= n; ++m) {
    // 4x(1-x) = 4m(2^level - m) / 2^{2 level}, exactly dyadic.
    const DyadicRational x(m, level);
    const DyadicRational parabola(4 * m * (n - m), 2 * level);
    REQUIRE(f_dyadic(x, two, policy).contains(parabola));
    REQUIRE(f_digit_formula(x, two, policy).contains(parabola));
    REQUIRE(f_midpoint_recursive(x, two, policy).contains(parabola));
  }
}

TEST_CASE("forward differences") {
  const PrecisionPolicy policy = test_policy();
  const AlphaParameter alpha(1.3);
  const AlphaParameter two(2.0);

  // f(1/2) - f(0) = 1 and f(1) - f(1/2) = -1 for every alpha.
  CHECK(forward_difference(0, 0, alpha, policy).is_point());
  CHECK(forward_difference(0, 0, alpha, policy).lo_double() == 1.0);
  CHECK(forward_difference(1, 0, alpha, policy).lo_double() == -1.0);

  // f(1/2) - f(1/4) = 1 - 3/4 at alpha = 2.
  CHECK(forward_difference(1, 1, two, policy)
            .contains(DyadicRational(1, 2)));

  // Differences telescope against the evaluators.
  for (int n = 0; n <= 5; ++n) {
    const int level = n + 1;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << level); ++k) {
      const RealInterval diff = forward_difference(k, n, alpha, policy);
      const RealInterval direct =
          f_dyadic(DyadicRational(k + 1, level), alpha, policy) -
          f_dyadic(DyadicRational(k, level), alpha, policy);
      REQUIRE(diff.overlaps(direct));
    }
  }

  CHECK_THROWS_AS(forward_difference(4, 1, alpha, policy), std::domain_error);
}
