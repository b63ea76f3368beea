#pragma once

#include <mpfr.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "takagi/dyadic.hpp"

namespace takagi {

/// Working precision for interval evaluations and how far a comparison may
/// escalate before giving up.  Escalation doubles the bit count each round.
struct PrecisionPolicy {
  int initial_bits = 128;
  int max_bits = 1024;
};

/// Throws std::domain_error unless 64 <= initial_bits <= max_bits; the floor
/// keeps doubles, 62-bit dyadic numerators, and int64 coefficients exactly
/// representable at working precision.
void validate(const PrecisionPolicy& policy);

/// Closed interval [lo, hi] with endpoints rounded outward (lo toward -inf,
/// hi toward +inf) on every operation, so the result always encloses the
/// exact value of the expression it was built from.
class RealInterval {
 public:
  RealInterval();                       ///< exact zero at the default 128 bits
  explicit RealInterval(int precision_bits);  ///< exact zero
  RealInterval(const RealInterval& other);
  RealInterval(RealInterval&& other) noexcept;
  RealInterval& operator=(const RealInterval& other);
  RealInterval& operator=(RealInterval&& other) noexcept;
  ~RealInterval();

  static RealInterval exact(std::int64_t value, int bits);
  static RealInterval exact(const mpz_class& value, int bits);  ///< raises bits to fit
  static RealInterval exact(double value, int bits);
  static RealInterval exact(const DyadicRational& value, int bits);
  /// Rounds the endpoints outward into the requested precision.
  static RealInterval from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, int bits);

  int precision_bits() const { return bits_; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  bool is_point() const;        ///< lo == hi exactly
  bool contains_zero() const;
  bool contains(const DyadicRational& value) const;
  bool contains(const mpz_class& value) const;
  bool overlaps(const RealInterval& other) const;
  bool definitely_less(const RealInterval& other) const;     ///< hi < other.lo
  bool definitely_negative() const;                          ///< hi < 0
  bool encloses(const RealInterval& other) const;  ///< other subset of *this

  /// Upper bound on hi - lo, rounded up.  Exact zero for point intervals.
  double width_upper() const;

  double lo_double() const;  ///< rounded down
  double hi_double() const;  ///< rounded up

  /// Decimal with the given significant digits; lo rounds down, hi rounds up,
  /// so the printed pair still encloses the interval.
  std::string lo_string(int significant_digits) const;
  std::string hi_string(int significant_digits) const;

  RealInterval operator-() const;
  RealInterval mul_int(std::int64_t factor) const;
  RealInterval mul_pow2(int e) const;  ///< exact scaling by 2^e
  RealInterval halve() const { return mul_pow2(-1); }

  friend RealInterval operator+(const RealInterval& a, const RealInterval& b);
  friend RealInterval operator-(const RealInterval& a, const RealInterval& b);
  friend RealInterval operator*(const RealInterval& a, const RealInterval& b);

  /// True when both endpoints agree exactly with the other interval's.
  bool same_endpoints(const RealInterval& other) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
  int bits_;
};

/// 2^(scale * k) with the exponent product formed exactly before the directed
/// exponential.  Covers the weight families 2^{-alpha j}, 2^{p j}, 2^{(n-1)alpha}.
RealInterval pow2_scaled(double scale, long k, int bits);

/// base^(exp_fraction + exp_integer) for an integer base >= 0; the exponent sum
/// is formed exactly.  base = 0 requires a positive exponent and yields zero.
RealInterval pow_integer_base(std::uint64_t base, double exp_fraction,
                              long exp_integer, int bits);

/// base^exponent for a dyadic base in [0, 1] and exponent > 0.
RealInterval pow_dyadic_base(const DyadicRational& base, double exponent,
                             int bits);

enum class Ordering { less, greater, equal_certified, inconclusive };

const char* ordering_name(Ordering o);

using Refiner = std::function<RealInterval(int bits)>;
using ExactEqualityRoute = std::function<std::optional<bool>()>;

/// Orders two enclosed quantities.  Returns less/greater as soon as the
/// intervals are disjoint, re-evaluating both sides at doubled precision up to
/// policy.max_bits.  equal_certified is only ever produced by the caller's
/// exact route (nullopt = no exact knowledge); overlapping intervals at
/// max_bits yield inconclusive.
Ordering separate(const RealInterval& a, const RealInterval& b,
                  const Refiner& refine_a, const Refiner& refine_b,
                  const PrecisionPolicy& policy,
                  const ExactEqualityRoute& exact_equal = {});

}  // namespace takagi
