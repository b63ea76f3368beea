#include "takagi/function.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace takagi {

AlphaParameter::AlphaParameter(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("alpha must be positive and finite");
  }
}

SeriesTolerance::SeriesTolerance(double t) : tol(t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::domain_error("series tolerance must be positive and finite");
  }
}

int SeriesTolerance::truncation_terms(const AlphaParameter& alpha) const {
  const double a = alpha.value();
  // Smallest J with 2^{-aJ} < tol (1 - 2^-a); solve in doubles and then step
  // until the directed tail bound actually clears tol.
  const double denom = 1.0 - std::exp2(-a);
  double guess = -std::log2(tol * denom) / a;
  int j = guess > 0 ? static_cast<int>(guess) : 0;
  auto tail_below_tol = [&](int terms) {
    mpfr_t t_tail, t_denom;
    mpfr_init2(t_tail, 96);
    mpfr_init2(t_denom, 96);
    mpfr_set_d(t_tail, a, MPFR_RNDN);
    mpfr_mul_si(t_tail, t_tail, -terms, MPFR_RNDU);
    mpfr_exp2(t_tail, t_tail, MPFR_RNDU);  // upper bound on 2^{-a J}
    mpfr_set_d(t_denom, a, MPFR_RNDN);
    mpfr_neg(t_denom, t_denom, MPFR_RNDD);
    mpfr_exp2(t_denom, t_denom, MPFR_RNDU);
    mpfr_ui_sub(t_denom, 1, t_denom, MPFR_RNDD);  // lower bound on 1 - 2^-a
    mpfr_div(t_tail, t_tail, t_denom, MPFR_RNDU);
    bool ok = mpfr_cmp_d(t_tail, tol) < 0;
    mpfr_clear(t_tail);
    mpfr_clear(t_denom);
    return ok;
  };
  while (j > 0 && tail_below_tol(j - 1)) {
    --j;
  }
  while (!tail_below_tol(j)) {
    ++j;
  }
  return j;
}

double tent(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("tent requires a finite argument");
  }
  double r = x - std::floor(x);
  // Both branches are exact: r and (1 - r) for r > 1/2 are representable, so
  // the doubling just shifts the exponent.
  return r <= 0.5 ? 2.0 * r : 2.0 * (1.0 - r);
}

DyadicRational tent(const DyadicRational& x) {
  const int level = x.level();
  if (level == 0) {
    return DyadicRational(0, 0);  // integer points
  }
  const std::uint64_t period = std::uint64_t{1} << level;
  const std::uint64_t r = x.numerator() % period;
  const std::uint64_t half = period / 2;
  const std::uint64_t num = r <= half ? r : period - r;
  return DyadicRational(num, level - 1);
}

RealInterval f_series(double x, const AlphaParameter& alpha,
                      const SeriesTolerance& tol,
                      const PrecisionPolicy& policy) {
  validate(policy);
  const int bits = policy.initial_bits;
  const int terms = tol.truncation_terms(alpha);
  RealInterval acc(bits);
  double scaled = x;
  for (int j = 0; j < terms; ++j) {
    const double t = tent(scaled);
    if (t != 0.0) {
      // tent(2^j x) is exact, so the only rounding is in the weight.
      acc = acc + pow2_scaled(alpha.value(), -j, bits) *
                      RealInterval::exact(t, bits);
    }
    // Doubling only bumps the exponent: scaled stays the exact value 2^j x,
    // and once every fractional bit of x is consumed it turns integral (at
    // most ~1074 steps, magnitude never above 2^53).
    scaled *= 2.0;
    if (scaled == std::floor(scaled)) {
      // From here every term vanishes: x was dyadic and the series is finite.
      return acc;
    }
  }
  // Tail bound 2^{-alpha J} / (1 - 2^{-alpha}), added to both ends.
  mpfr_t t_tail, t_denom;
  mpfr_init2(t_tail, bits);
  mpfr_init2(t_denom, bits);
  mpfr_set_d(t_tail, alpha.value(), MPFR_RNDN);
  mpfr_mul_si(t_tail, t_tail, -terms, MPFR_RNDU);
  mpfr_exp2(t_tail, t_tail, MPFR_RNDU);
  mpfr_set_d(t_denom, alpha.value(), MPFR_RNDN);
  mpfr_neg(t_denom, t_denom, MPFR_RNDD);
  mpfr_exp2(t_denom, t_denom, MPFR_RNDU);
  mpfr_ui_sub(t_denom, 1, t_denom, MPFR_RNDD);
  mpfr_div(t_tail, t_tail, t_denom, MPFR_RNDU);
  mpfr_t neg_tail;
  mpfr_init2(neg_tail, bits);
  mpfr_neg(neg_tail, t_tail, MPFR_RNDD);
  RealInterval tail = RealInterval::from_endpoints(neg_tail, t_tail, bits);
  mpfr_clear(t_tail);
  mpfr_clear(t_denom);
  mpfr_clear(neg_tail);
  return acc + tail;
}

RealInterval f_dyadic(const DyadicRational& x, const AlphaParameter& alpha,
                      int bits) {
  // At level n:  sum over i < n of 2^{-alpha i} tent(x * 2^... ) where the
  // i-th tent argument is the numerator reduced at level n - i.  Each tent
  // value is an exact dyadic, so only the weights round.
  const int n = x.level();
  RealInterval acc(bits);
  for (int i = 0; i < n; ++i) {
    const DyadicRational arg(x.numerator() % (std::uint64_t{1} << (n - i)),
                             n - i);
    const DyadicRational t = tent(arg);
    if (!t.is_zero()) {
      acc = acc + pow2_scaled(alpha.value(), -i, bits) *
                      RealInterval::exact(t, bits);
    }
  }
  return acc;
}

RealInterval f_dyadic(const DyadicRational& x, const AlphaParameter& alpha,
                      const PrecisionPolicy& policy) {
  validate(policy);
  return f_dyadic(x, alpha, policy.initial_bits);
}

RealInterval f_digit_formula(const DyadicRational& x,
                             const AlphaParameter& alpha, int bits) {
  const int n = x.level();
  const std::uint64_t m = x.numerator();
  // Weight of digit position i is 2^{-((n-i-1) alpha + i)}.  Summing the
  // signs (-1)^{digit_i(k)} over k < m first is an exact regrouping of the
  // double sum and leaves n interval operations.
  RealInterval acc(bits);
  for (int i = 0; i < n; ++i) {
    std::int64_t sign_sum = 0;
    for (std::uint64_t k = 0; k < m; ++k) {
      sign_sum += (k >> i) & 1 ? -1 : 1;
    }
    if (sign_sum != 0) {
      RealInterval weight =
          pow2_scaled(alpha.value(), -(n - i - 1), bits).mul_pow2(-i);
      acc = acc + weight.mul_int(sign_sum);
    }
  }
  return acc;
}

RealInterval f_digit_formula(const DyadicRational& x,
                             const AlphaParameter& alpha,
                             const PrecisionPolicy& policy) {
  validate(policy);
  return f_digit_formula(x, alpha, policy.initial_bits);
}

RealInterval f_midpoint_recursive(const DyadicRational& x,
                                  const AlphaParameter& alpha, int bits) {
  const int level = x.level();
  const std::uint64_t num = x.numerator();
  if (level == 0 || num == 0 || x.is_one()) {
    return RealInterval(bits);  // integer endpoints vanish
  }
  if (num % 2 == 0) {
    return f_midpoint_recursive(DyadicRational(num / 2, level - 1), alpha, bits);
  }
  const std::uint64_t j = num / 2;
  RealInterval left =
      f_midpoint_recursive(DyadicRational(j, level - 1), alpha, bits);
  RealInterval right =
      f_midpoint_recursive(DyadicRational(j + 1, level - 1), alpha, bits);
  return (left + right).halve() +
         pow2_scaled(alpha.value(), -(level - 1), bits);
}

RealInterval f_midpoint_recursive(const DyadicRational& x,
                                  const AlphaParameter& alpha,
                                  const PrecisionPolicy& policy) {
  validate(policy);
  return f_midpoint_recursive(x, alpha, policy.initial_bits);
}

RealInterval forward_difference(std::uint64_t k, int n,
                                const AlphaParameter& alpha, int bits) {
  if (n < 0 || n > 61 || k >= (std::uint64_t{2} << n)) {
    throw std::domain_error("forward difference requires 0 <= k < 2^{n+1}");
  }
  RealInterval step = pow2_scaled(alpha.value(), -n, bits);
  if (k % 2 == 1) {
    step = -step;
  }
  if (n == 0) {
    // The level-0 parent difference f(1) - f(0) vanishes.
    return step;
  }
  return forward_difference(k / 2, n - 1, alpha, bits).halve() + step;
}

RealInterval forward_difference(std::uint64_t k, int n,
                                const AlphaParameter& alpha,
                                const PrecisionPolicy& policy) {
  validate(policy);
  return forward_difference(k, n, alpha, policy.initial_bits);
}

}  // namespace takagi
