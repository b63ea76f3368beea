#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "takagi/interval.hpp"
#include "takagi/lambda_poly.hpp"

namespace takagi {

/// Binary digits of n, least significant first, no trailing zeros.
struct DigitVector {
  std::vector<std::uint8_t> bits;

  std::uint64_t value() const;
  std::size_t size() const { return bits.size(); }
};

DigitVector binary_digits(std::uint64_t n);

/// Weighted digit sum of n as a polynomial in lambda = 2^p: the j-th binary
/// digit contributes lambda^j.
LambdaPolynomial digit_sum_poly(std::uint64_t n);

/// Sum of digit_sum_poly(m) over m < n by direct accumulation.  Serial
/// reference implementation, kept as the oracle for cumulative_digit_sum;
/// cost O(n log n), so keep n modest.
LambdaPolynomial cumulative_digit_sum_naive(std::uint64_t n);

/// Same sum in O(log^2 n) coefficient operations via the halving recurrences
///   C(2M)   = 2 lambda C(M) + M        (digits of 2t and 2t+1 share a shift)
///   C(2M+1) = C(2M) + lambda s(M).
LambdaPolynomial cumulative_digit_sum(std::uint64_t n);

/// Sum of digit_sum_poly over [t, u); requires t <= u.
LambdaPolynomial range_digit_sum(std::uint64_t t, std::uint64_t u);

/// Second central difference C(m+l) + C(m-l) - 2 C(m) of the cumulative sum;
/// requires l <= m.  This is the quantity bounded by l^{p+1}.
LambdaPolynomial second_difference(std::uint64_t m, std::uint64_t l);

/// The block exponent k with 2^{k-1} < l <= 2^k; requires l >= 1.
int block_exponent(std::uint64_t l);

/// Predicted equality cases of  second_difference(m,l)(2^p) = l^{p+1}:
///   p = 1          always;
///   0 < p < 1      l = 2^k and m = l (mod 2^{k+1});
///   p = 0          m = +-l (mod 2^{k+1});
/// l = 0 counts as equality (both sides vanish).  Requires l <= m and
/// 0 <= p <= 1.
bool predict_equality(std::uint64_t m, std::uint64_t l, double p);

enum class Relation { strict, equal_certified, greater, inconclusive };

const char* relation_name(Relation r);

/// Outcome of one inequality instance.  lhs/rhs are enclosures of
/// second_difference(m,l)(2^p) and l^{p+1}; integer decision routes yield
/// zero-width points.
struct InequalityReport {
  std::uint64_t m = 0;
  std::uint64_t l = 0;
  double p = 0.0;
  int k = 0;  ///< block exponent of l, 0 when l = 0
  RealInterval lhs;
  RealInterval rhs;
  Relation relation = Relation::inconclusive;
  bool predicted_equality = false;
  bool agrees = false;
};

/// Shared per-grid-point tables for classifying many instances at one p:
/// enclosures of 2^{p j} at every escalation rung, plus double-precision
/// approximations used by a certified fast filter.  Results are identical
/// with or without a cache; the cache only removes repeated work.
struct InequalityEvalCache {
  double p = 0.0;
  bool p_integral = false;
  long p_int = 0;
  std::vector<double> lambda_pow_approx;              ///< ~2^{p j}
  std::vector<double> rhs_approx;                     ///< ~l^{p+1}, index l
  std::vector<std::vector<RealInterval>> pow_rungs;   ///< per doubling of bits
  PrecisionPolicy policy;

  static InequalityEvalCache build(double p, std::size_t max_degree,
                                   std::uint64_t l_max,
                                   const PrecisionPolicy& policy);
};

/// Certified relation between delta(2^p) and l^{p+1}.
///
/// Decision routes, in order: exact integer comparison when 2^p is an integer
/// (p = 0, 1, ...); the exact monomial identity delta == 2^k lambda^k when
/// l = 2^k; otherwise directed interval evaluation with precision escalation
/// per the policy.  equal_certified only ever comes from an exact route.
Relation classify_second_difference(const LambdaPolynomial& delta,
                                    std::uint64_t l, double p,
                                    const PrecisionPolicy& policy,
                                    const InequalityEvalCache* cache = nullptr);

/// Enclosures of both sides at the given precision (exact points where an
/// exact route applies), for reporting.
std::pair<RealInterval, RealInterval> inequality_sides(
    const LambdaPolynomial& delta, std::uint64_t l, double p, int bits);

/// Full check of one instance: relation, prediction, and agreement.
/// Requires l <= m and 0 <= p <= 1.
InequalityReport check_digit_inequality(std::uint64_t m, std::uint64_t l,
                                        double p, const PrecisionPolicy& policy);

/// The elementary gap 2x - 1 + (1-x)^{p+1} - x^{p+1} on [1/2, 1], which is
/// <= 0 for 0 <= p <= 1 with equality exactly at the endpoints for
/// 0 < p < 1 and identically zero at p = 0 and p = 1.  The identically-zero
/// and endpoint cases are recognized algebraically and return exact zero.
RealInterval power_inequality_gap(double x, double p,
                                  const PrecisionPolicy& policy);

}  // namespace takagi
