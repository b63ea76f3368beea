#include "takagi/digitsum.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace takagi {

std::uint64_t DigitVector::value() const {
  std::uint64_t v = 0;
  for (std::size_t j = bits.size(); j-- > 0;) {
    v = v * 2 + bits[j];
  }
  return v;
}

DigitVector binary_digits(std::uint64_t n) {
  DigitVector d;
  while (n != 0) {
    d.bits.push_back(static_cast<std::uint8_t>(n & 1));
    n >>= 1;
  }
  return d;
}

LambdaPolynomial digit_sum_poly(std::uint64_t n) {
  DigitVector d = binary_digits(n);
  std::vector<std::int64_t> coeffs(d.bits.begin(), d.bits.end());
  return LambdaPolynomial::from_coefficients(std::move(coeffs));
}

LambdaPolynomial cumulative_digit_sum_naive(std::uint64_t n) {
  if (n > (std::uint64_t{1} << 24)) {
    throw std::domain_error("naive cumulative digit sum limited to n <= 2^24");
  }
  LambdaPolynomial acc;
  for (std::uint64_t m = 0; m < n; ++m) {
    acc = acc + digit_sum_poly(m);
  }
  return acc;
}

LambdaPolynomial cumulative_digit_sum(std::uint64_t n) {
  if (n >= (std::uint64_t{1} << 62)) {
    throw std::domain_error("cumulative digit sum limited to n < 2^62");
  }
  if (n == 0) {
    return LambdaPolynomial();
  }
  const std::uint64_t half = n / 2;
  // C(2M) = 2 lambda C(M) + M; the odd case adds the digit sum of the last
  // even integer, s(2M) = lambda s(M).
  LambdaPolynomial even = cumulative_digit_sum(half).times_lambda_power(1).scaled(2);
  even.add_to_constant(static_cast<std::int64_t>(half));
  if (n % 2 == 0) {
    return even;
  }
  return even + digit_sum_poly(half).times_lambda_power(1);
}

LambdaPolynomial range_digit_sum(std::uint64_t t, std::uint64_t u) {
  if (t > u) {
    throw std::domain_error("range digit sum requires t <= u");
  }
  return cumulative_digit_sum(u) - cumulative_digit_sum(t);
}

LambdaPolynomial second_difference(std::uint64_t m, std::uint64_t l) {
  if (l > m) {
    throw std::domain_error("second difference requires l <= m");
  }
  return cumulative_digit_sum(m + l) + cumulative_digit_sum(m - l) -
         cumulative_digit_sum(m).scaled(2);
}

int block_exponent(std::uint64_t l) {
  if (l == 0) {
    throw std::domain_error("block exponent requires l >= 1");
  }
  return std::bit_width(l - 1);
}

bool predict_equality(std::uint64_t m, std::uint64_t l, double p) {
  if (l > m) {
    throw std::domain_error("equality prediction requires l <= m");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("equality prediction requires 0 <= p <= 1");
  }
  if (l == 0 || p == 1.0) {
    return true;
  }
  const int k = block_exponent(l);
  const std::uint64_t modulus = std::uint64_t{1} << (k + 1);
  const std::uint64_t r = m % modulus;
  if (p == 0.0) {
    return r == l || r == modulus - l;
  }
  return l == (std::uint64_t{1} << k) && r == l;
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::strict:
      return "strict";
    case Relation::equal_certified:
      return "equal";
    case Relation::greater:
      return "greater";
    case Relation::inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

bool integral_exponent(double p, long* out) {
  if (p >= 0.0 && p <= 40.0 && p == std::floor(p)) {
    *out = static_cast<long>(p);
    return true;
  }
  return false;
}

std::optional<std::int64_t> pow_i64(std::uint64_t base, unsigned exponent) {
  std::int64_t acc = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(acc, static_cast<std::int64_t>(base), &acc)) {
      return std::nullopt;
    }
  }
  return acc;
}

Relation relation_from_cmp(int cmp) {
  if (cmp < 0) {
    return Relation::strict;
  }
  return cmp == 0 ? Relation::equal_certified : Relation::greater;
}

/// Exact comparison delta(2^{p_int}) vs l^{p_int + 1} through integers.
Relation classify_integral(const LambdaPolynomial& delta, std::uint64_t l,
                           long p_int) {
  const std::uint64_t lambda = std::uint64_t{1} << p_int;
  if (std::optional<std::int64_t> lhs = delta.eval_at_integer_i64(lambda)) {
    if (std::optional<std::int64_t> rhs =
            l <= 1 ? std::optional<std::int64_t>(l == 0 ? 0 : 1)
                   : pow_i64(l, static_cast<unsigned>(p_int) + 1)) {
      return relation_from_cmp(*lhs < *rhs ? -1 : (*lhs == *rhs ? 0 : 1));
    }
  }
  mpz_class lhs = delta.eval_at_integer(lambda);
  mpz_class rhs;
  mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(l),
                static_cast<unsigned long>(p_int) + 1);
  return relation_from_cmp(cmp(lhs, rhs));
}

bool monomial_identity(const LambdaPolynomial& delta, std::uint64_t l, int k) {
  return delta ==
         LambdaPolynomial::monomial(static_cast<std::int64_t>(l),
                                    static_cast<std::size_t>(k));
}

bool cache_usable(const InequalityEvalCache* cache, double p,
                  const PrecisionPolicy& policy) {
  return cache != nullptr && cache->p == p &&
         cache->policy.initial_bits == policy.initial_bits &&
         cache->policy.max_bits == policy.max_bits;
}

}  // namespace

InequalityEvalCache InequalityEvalCache::build(double p, std::size_t max_degree,
                                               std::uint64_t l_max,
                                               const PrecisionPolicy& policy) {
  validate(policy);
  InequalityEvalCache c;
  c.p = p;
  c.policy = policy;
  c.p_integral = integral_exponent(p, &c.p_int);
  if (c.p_integral) {
    return c;  // integer route needs no tables
  }
  for (int bits = policy.initial_bits; bits <= policy.max_bits; bits *= 2) {
    std::vector<RealInterval> powers;
    powers.reserve(max_degree + 1);
    for (std::size_t j = 0; j <= max_degree; ++j) {
      powers.push_back(pow2_scaled(p, static_cast<long>(j), bits));
    }
    c.pow_rungs.push_back(std::move(powers));
  }
  // Double approximations taken from 64-bit directed enclosures: each entry is
  // within one double ulp of the true value, which the filter's error budget
  // covers many times over.
  c.lambda_pow_approx.reserve(max_degree + 1);
  for (std::size_t j = 0; j <= max_degree; ++j) {
    RealInterval w = pow2_scaled(p, static_cast<long>(j), 64);
    c.lambda_pow_approx.push_back(mpfr_get_d(w.lo(), MPFR_RNDN));
  }
  c.rhs_approx.assign(static_cast<std::size_t>(l_max) + 1, 0.0);
  for (std::uint64_t l = 1; l <= l_max; ++l) {
    RealInterval r = pow_integer_base(l, p, 1, 64);
    c.rhs_approx[static_cast<std::size_t>(l)] = mpfr_get_d(r.lo(), MPFR_RNDN);
  }
  return c;
}

Relation classify_second_difference(const LambdaPolynomial& delta,
                                    std::uint64_t l, double p,
                                    const PrecisionPolicy& policy,
                                    const InequalityEvalCache* cache) {
  validate(policy);
  if (!std::isfinite(p)) {
    throw std::domain_error("p must be finite");
  }
  if (l == 0) {
    // Both sides vanish by convention (the trivial instance).
    if (delta.is_zero()) {
      return Relation::equal_certified;
    }
  } else {
    long p_int = 0;
    if (integral_exponent(p, &p_int)) {
      return classify_integral(delta, l, p_int);
    }
    if (std::has_single_bit(l) && monomial_identity(delta, l, block_exponent(l))) {
      // delta = 2^k lambda^k identically, and l^{p+1} = 2^{k(p+1)} is the
      // value of that monomial at lambda = 2^p: equality at every p.
      return Relation::equal_certified;
    }
  }
  if (!cache_usable(cache, p, policy)) {
    cache = nullptr;
  }
  if (cache != nullptr && l > 0 &&
      static_cast<std::size_t>(l) < cache->rhs_approx.size() &&
      delta.size() <= cache->lambda_pow_approx.size()) {
    // Certified double-precision filter.  The inputs are within 2^-52
    // relative of the true values and the straight sum accumulates at most a
    // few dozen roundings, so a margin above (|terms| + rhs) * 2^-45 decides
    // the sign rigorously.  Near-ties fall through to interval escalation.
    double approx = 0.0;
    double abs_sum = 0.0;
    const std::vector<std::int64_t>& coeffs = delta.coefficients();
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      const double term =
          static_cast<double>(coeffs[j]) * cache->lambda_pow_approx[j];
      approx += term;
      abs_sum += std::abs(term);
    }
    const double rhs = cache->rhs_approx[static_cast<std::size_t>(l)];
    const double budget = (abs_sum + rhs) * 0x1p-45;
    if (rhs - approx > budget) {
      return Relation::strict;
    }
    if (approx - rhs > budget) {
      return Relation::greater;
    }
  }
  std::size_t rung = 0;
  for (int bits = policy.initial_bits; bits <= policy.max_bits;
       bits *= 2, ++rung) {
    RealInterval lhs =
        cache != nullptr && rung < cache->pow_rungs.size() &&
                cache->pow_rungs[rung].size() >= delta.size()
            ? delta.eval_interval_with_powers(p, bits, cache->pow_rungs[rung])
            : delta.eval_interval(p, bits);
    RealInterval rhs = l == 0 ? RealInterval(bits)
                              : pow_integer_base(l, p, 1, bits);
    if (lhs.definitely_less(rhs)) {
      return Relation::strict;
    }
    if (rhs.definitely_less(lhs)) {
      return Relation::greater;
    }
  }
  return Relation::inconclusive;
}

std::pair<RealInterval, RealInterval> inequality_sides(
    const LambdaPolynomial& delta, std::uint64_t l, double p, int bits) {
  long p_int = 0;
  if (integral_exponent(p, &p_int)) {
    mpz_class rhs;
    mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(l),
                  static_cast<unsigned long>(p_int) + 1);
    return {RealInterval::exact(
                delta.eval_at_integer(std::uint64_t{1} << p_int), bits),
            RealInterval::exact(rhs, bits)};
  }
  RealInterval lhs = delta.eval_interval(p, bits);
  RealInterval rhs =
      l == 0 ? RealInterval(bits) : pow_integer_base(l, p, 1, bits);
  return {std::move(lhs), std::move(rhs)};
}

InequalityReport check_digit_inequality(std::uint64_t m, std::uint64_t l,
                                        double p,
                                        const PrecisionPolicy& policy) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("digit inequality check requires 0 <= p <= 1");
  }
  InequalityReport report;
  report.m = m;
  report.l = l;
  report.p = p;
  report.k = l == 0 ? 0 : block_exponent(l);
  LambdaPolynomial delta = second_difference(m, l);  // validates l <= m
  report.relation = classify_second_difference(delta, l, p, policy);
  report.predicted_equality = predict_equality(m, l, p);
  report.agrees =
      report.relation != Relation::inconclusive &&
      (report.relation == Relation::equal_certified) == report.predicted_equality;
  std::pair<RealInterval, RealInterval> sides =
      inequality_sides(delta, l, p, policy.initial_bits);
  report.lhs = std::move(sides.first);
  report.rhs = std::move(sides.second);
  return report;
}

namespace {

/// base^(p+1) for a double base in [0, 1], directed.
RealInterval pow_double_base(double base, double p, int bits) {
  mpfr_t b, e, lo, hi;
  mpfr_init2(b, 64);
  mpfr_set_d(b, base, MPFR_RNDN);  // exact
  mpfr_init2(e, 64);
  mpfr_set_d(e, p, MPFR_RNDN);
  mpfr_add_ui(e, e, 1, MPFR_RNDN);  // exact at 64 bits
  mpfr_init2(lo, bits);
  mpfr_init2(hi, bits);
  mpfr_pow(lo, b, e, MPFR_RNDD);
  mpfr_pow(hi, b, e, MPFR_RNDU);
  RealInterval out = RealInterval::from_endpoints(lo, hi, bits);
  mpfr_clear(b);
  mpfr_clear(e);
  mpfr_clear(lo);
  mpfr_clear(hi);
  return out;
}

}  // namespace

RealInterval power_inequality_gap(double x, double p,
                                  const PrecisionPolicy& policy) {
  validate(policy);
  if (!(x >= 0.5 && x <= 1.0)) {
    throw std::domain_error("gap function requires 1/2 <= x <= 1");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("gap function requires 0 <= p <= 1");
  }
  // Algebraic zeros, returned exactly: at p = 0 the exponents are 1 and the
  // expression telescopes to 0; at p = 1 it is 2x-1 + (1-2x) = 0; at the
  // endpoints the power terms cancel against 2x-1.
  if (p == 0.0 || p == 1.0 || x == 0.5 || x == 1.0) {
    return RealInterval(policy.initial_bits);
  }
  const int bits = policy.initial_bits;
  // 2x and 2x-1 are exact in double for x in [1/2, 1], as is 1-x.
  RealInterval linear = RealInterval::exact(2.0 * x - 1.0, bits);
  return linear + pow_double_base(1.0 - x, p, bits) - pow_double_base(x, p, bits);
}

}  // namespace takagi
