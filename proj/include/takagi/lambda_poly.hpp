#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "takagi/interval.hpp"

namespace takagi {

/// Integer-coefficient polynomial in lambda = 2^p, the exact carrier for
/// weighted digit sums.  Coefficient j multiplies lambda^j; trailing zero
/// coefficients are trimmed so equal values compare equal.
///
/// Only linear operations ever arise (sums, differences, integer scalars,
/// shifts by powers of lambda), so int64 coefficients are exact for every
/// argument below 2^62.
class LambdaPolynomial {
 public:
  LambdaPolynomial() = default;  ///< zero polynomial

  static LambdaPolynomial constant(std::int64_t c);
  static LambdaPolynomial monomial(std::int64_t c, std::size_t degree);
  static LambdaPolynomial from_coefficients(std::vector<std::int64_t> coeffs);

  bool is_zero() const { return coeffs_.empty(); }
  /// Number of stored coefficients; degree() is size() - 1 for nonzero input.
  std::size_t size() const { return coeffs_.size(); }
  std::int64_t coefficient(std::size_t j) const;
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

  bool operator==(const LambdaPolynomial& other) const = default;

  LambdaPolynomial operator+(const LambdaPolynomial& other) const;
  LambdaPolynomial operator-(const LambdaPolynomial& other) const;
  LambdaPolynomial operator-() const;
  LambdaPolynomial scaled(std::int64_t factor) const;
  LambdaPolynomial times_lambda_power(std::size_t k) const;
  LambdaPolynomial& add_to_constant(std::int64_t c);

  /// Exact Horner evaluation at an integer value of lambda (1 at p = 0,
  /// 2 at p = 1, ...).
  mpz_class eval_at_integer(std::uint64_t lambda) const;

  /// eval_at_integer in native arithmetic; nullopt if any step would overflow.
  std::optional<std::int64_t> eval_at_integer_i64(std::uint64_t lambda) const;

  /// Enclosure of the value at lambda = 2^p.  At p = 0 and p = 1 the result
  /// is a zero-width point equal to the exact integer.
  RealInterval eval_interval(double p, int bits) const;

  /// Same, with the caller supplying enclosures of 2^{p j} for j up to at
  /// least size() - 1 (shared across many evaluations in sweeps).
  RealInterval eval_interval_with_powers(
      double p, int bits, const std::vector<RealInterval>& lambda_powers) const;

  std::string to_string() const;  ///< e.g. "2 + 2*L" with L for lambda

 private:
  void trim();

  std::vector<std::int64_t> coeffs_;
};

}  // namespace takagi
