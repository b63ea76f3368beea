#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <stdexcept>

#include "takagi/dyadic.hpp"
#include "takagi/interval.hpp"
#include "takagi/lambda_poly.hpp"

using namespace takagi;

TEST_CASE("dyadic construction and normalization") {
  const DyadicRational x(4, 3);
  CHECK(x.numerator() == 4);
  CHECK(x.level() == 3);
  CHECK_FALSE(x.is_canonical());

  const DyadicRational c = x.normalized();
  CHECK(c.numerator() == 1);
  CHECK(c.level() == 1);
  CHECK(c.is_canonical());
  CHECK(same_value(x, c));

  CHECK(dyadic_normalize(0, 5).level() == 0);
  CHECK(dyadic_normalize(32, 5).level() == 0);
  CHECK(dyadic_normalize(32, 5).is_one());
  CHECK(DyadicRational().is_zero());

  CHECK(DyadicRational(3, 3).to_string() == "3/2^3");
  CHECK(DyadicRational(1, 0).to_string() == "1");
  CHECK(DyadicRational(5, 3).to_double() == 0.625);
}

TEST_CASE("dyadic domain checks") {
  CHECK_THROWS_AS(DyadicRational(9, 3), std::domain_error);   // above 1
  CHECK_THROWS_AS(DyadicRational(1, 63), std::domain_error);  // level too deep
  CHECK_NOTHROW(DyadicRational(8, 3));                        // exactly 1
}

TEST_CASE("dyadic comparisons and differences") {
  const DyadicRational a(1, 2);   // 1/4
  const DyadicRational b(3, 3);   // 3/8
  const DyadicRational a2(2, 3);  // 1/4 again, unreduced

  CHECK(same_value(a, a2));
  CHECK(value_less(a, b));
  CHECK_FALSE(value_less(b, a));
  CHECK_FALSE(value_less(a, a2));

  const DyadicRational d = abs_difference(a, b);
  CHECK(d.numerator() == 1);
  CHECK(d.level() == 3);
  CHECK(abs_difference(b, a).numerator() == 1);
  CHECK(abs_difference(a, a2).is_zero());

  CHECK(a.numerator_at_level(5) == 8);
  CHECK_THROWS_AS(b.numerator_at_level(2), std::domain_error);
}

TEST_CASE("lambda polynomial arithmetic") {
  const LambdaPolynomial zero;
  CHECK(zero.is_zero());
  CHECK(zero.size() == 0);

  // L + L^2 evaluates to 2 at p = 0 (lambda = 1) and 6 at p = 1 (lambda = 2).
  const LambdaPolynomial q = LambdaPolynomial::from_coefficients({0, 1, 1});
  CHECK(q.eval_at_integer(1) == 2);
  CHECK(q.eval_at_integer(2) == 6);
  CHECK(*q.eval_at_integer_i64(2) == 6);

  const LambdaPolynomial r = q + q;
  CHECK(r == q.scaled(2));
  CHECK((r - q) == q);
  CHECK((q - q).is_zero());
  CHECK((-q).coefficient(1) == -1);
  CHECK(q.times_lambda_power(2).coefficient(3) == 1);
  CHECK(q.times_lambda_power(2).coefficient(1) == 0);

  LambdaPolynomial s = q;
  s.add_to_constant(5);
  CHECK(s.coefficient(0) == 5);

  // Trailing zeros trim away, so equal values compare equal.
  CHECK(LambdaPolynomial::from_coefficients({1, 2, 0, 0}) ==
        LambdaPolynomial::from_coefficients({1, 2}));
  CHECK(LambdaPolynomial::monomial(3, 2).to_string() == "3*L^2");
}

TEST_CASE("native evaluation reports overflow") {
  // 2^62 * 2 overflows int64 during Horner at lambda = 2.
  const LambdaPolynomial big =
      LambdaPolynomial::monomial(std::int64_t{1} << 62, 1);
  CHECK_FALSE(big.eval_at_integer_i64(2).has_value());
  CHECK(big.eval_at_integer(2) == mpz_class(1) << 63);
}

TEST_CASE("interval exact constructors are points") {
  const RealInterval a = RealInterval::exact(std::int64_t{-7}, 128);
  CHECK(a.is_point());
  CHECK(a.lo_double() == -7.0);
  CHECK(a.hi_double() == -7.0);
  CHECK(a.definitely_negative());

  const RealInterval d = RealInterval::exact(DyadicRational(3, 2), 128);
  CHECK(d.is_point());
  CHECK(d.contains(DyadicRational(3, 2)));
  CHECK(d.lo_double() == 0.75);

  const RealInterval z(64);
  CHECK(z.is_point());
  CHECK(z.contains_zero());

  // mpz values wider than the requested precision stay exact.
  const mpz_class huge = (mpz_class(1) << 200) + 1;
  const RealInterval h = RealInterval::exact(huge, 64);
  CHECK(h.is_point());
  CHECK(h.contains(huge));
}

TEST_CASE("interval arithmetic encloses exact answers") {
  const RealInterval three = RealInterval::exact(std::int64_t{3}, 128);
  const RealInterval half = RealInterval::exact(DyadicRational(1, 1), 128);

  CHECK((three + half).is_point());
  CHECK((three + half).lo_double() == 3.5);
  CHECK((three - half).lo_double() == 2.5);
  CHECK((three * half).is_point());
  CHECK((three * half).lo_double() == 1.5);
  CHECK(three.mul_int(-2).lo_double() == -6.0);
  CHECK(three.mul_pow2(-2).lo_double() == 0.75);
  CHECK(three.halve().lo_double() == 1.5);
  CHECK((-three).hi_double() == -3.0);
}

TEST_CASE("directed powers carry sub-ulp enclosures") {
  // sqrt(2): squaring the enclosure must trap 2 exactly.
  const RealInterval root2 = pow2_scaled(0.5, 1, 128);
  CHECK((root2 * root2).contains(mpz_class(2)));
  CHECK(root2.width_upper() < 1e-30);
  CHECK(root2.contains(DyadicRational(1, 0)) == false);

  // 3^(0.5 + 1): cubing the square gives 27.
  const RealInterval p = pow_integer_base(3, 0.5, 1, 128);
  CHECK((p * p).contains(mpz_class(27)));

  // (1/4)^(3/2) = 1/8 lands on a dyadic.
  const RealInterval q = pow_dyadic_base(DyadicRational(1, 2), 1.5, 128);
  CHECK(q.contains(DyadicRational(1, 3)));
  CHECK(q.width_upper() < 1e-30);

  // Zero base needs a positive exponent and then gives exact zero.
  const RealInterval z = pow_integer_base(0, 0.5, 1, 128);
  CHECK(z.is_point());
  CHECK(z.contains_zero());

  // Integral exponents at power-of-two bases are exactly representable.
  const RealInterval w = pow2_scaled(1.0, 10, 128);
  CHECK(w.is_point());
  CHECK(w.lo_double() == 1024.0);
}

TEST_CASE("interval predicates") {
  const RealInterval a = RealInterval::exact(std::int64_t{1}, 128);
  const RealInterval b = RealInterval::exact(std::int64_t{2}, 128);
  const RealInterval wide = a + pow2_scaled(0.5, 1, 128);  // ~2.414

  CHECK(a.definitely_less(b));
  CHECK_FALSE(b.definitely_less(a));
  CHECK(a.overlaps(a));
  CHECK_FALSE(a.overlaps(b));
  CHECK(wide.overlaps(wide));
  CHECK(b.same_endpoints(b));
  CHECK_FALSE(a.same_endpoints(b));

  const RealInterval hull = wide - b;  // encloses 0.414...
  CHECK_FALSE(hull.contains_zero());
  CHECK(hull.encloses(hull));
}

TEST_CASE("string output rounds endpoints outward") {
  const RealInterval x = RealInterval::exact(DyadicRational(1, 2), 128);
  CHECK(x.lo_string(4) == "0.25");
  CHECK(x.hi_string(4) == "0.25");

  const RealInterval r = pow2_scaled(0.5, 1, 128);
  // Printed at 5 digits the enclosure must still bracket sqrt(2).
  CHECK(r.lo_string(5) == "1.4142");
  CHECK(r.hi_string(5) == "1.4143");
}

TEST_CASE("precision policy bounds") {
  PrecisionPolicy policy;
  CHECK_NOTHROW(validate(policy));
  policy.initial_bits = 63;
  CHECK_THROWS_AS(validate(policy), std::domain_error);
  policy.initial_bits = 2048;
  policy.max_bits = 1024;
  CHECK_THROWS_AS(validate(policy), std::domain_error);
  policy.initial_bits = 64;
  policy.max_bits = 64;
  CHECK_NOTHROW(validate(policy));
}

TEST_CASE("separation decides once intervals disjoin") {
  PrecisionPolicy policy;
  policy.initial_bits = 128;
  policy.max_bits = 512;

  const Refiner root2 = [](int bits) { return pow2_scaled(0.5, 1, bits); };
  const Refiner two = [](int bits) {
    return RealInterval::exact(std::int64_t{2}, bits);
  };
  CHECK(separate(root2(128), two(128), root2, two, policy) == Ordering::less);
  CHECK(separate(two(128), root2(128), two, root2, policy) ==
        Ordering::greater);
}

TEST_CASE("separation escalates to finer precision") {
  PrecisionPolicy policy;
  policy.initial_bits = 128;
  policy.max_bits = 1024;

  // Coarse rungs return [0, 1]; past 256 bits the enclosure snaps to 1, so
  // the ladder must escalate once before separating from zero.
  const Refiner sharpening = [](int bits) {
    if (bits <= 256) {
      mpfr_t lo, hi;
      mpfr_init2(lo, bits);
      mpfr_init2(hi, bits);
      mpfr_set_ui(lo, 0, MPFR_RNDD);
      mpfr_set_ui(hi, 1, MPFR_RNDU);
      RealInterval wide = RealInterval::from_endpoints(lo, hi, bits);
      mpfr_clear(lo);
      mpfr_clear(hi);
      return wide;
    }
    return RealInterval::exact(std::int64_t{1}, bits);
  };
  const Refiner zero = [](int bits) { return RealInterval(bits); };

  CHECK(separate(sharpening(128), zero(128), sharpening, zero, policy) ==
        Ordering::greater);
  CHECK(separate(zero(128), sharpening(128), zero, sharpening, policy) ==
        Ordering::less);
}

TEST_CASE("separation of identical values needs an exact route") {
  PrecisionPolicy policy;
  policy.initial_bits = 64;
  policy.max_bits = 128;

  const Refiner five = [](int bits) {
    return RealInterval::exact(std::int64_t{5}, bits);
  };
  CHECK(separate(five(64), five(64), five, five, policy) ==
        Ordering::inconclusive);
  CHECK(separate(five(64), five(64), five, five, policy,
                 []() { return true; }) == Ordering::equal_certified);
  CHECK(ordering_name(Ordering::equal_certified) == doctest::String("equal"));
}
