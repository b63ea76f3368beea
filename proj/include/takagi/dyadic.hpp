#pragma once

#include <cstdint>
#include <string>

namespace takagi {

/// Exact point m / 2^n in [0, 1].
///
/// The representation (numerator, level) is kept as constructed; it is not
/// reduced automatically, because several evaluators index their sums by the
/// level of the representation they are handed.  Use normalized() for the
/// canonical form (odd numerator or level 0).
class DyadicRational {
 public:
  /// Zero at level 0.
  DyadicRational() = default;

  /// Throws std::domain_error unless 0 <= numerator <= 2^level and level <= 62.
  DyadicRational(std::uint64_t numerator, int level);

  std::uint64_t numerator() const { return num_; }
  int level() const { return level_; }

  /// Canonical form with the same value: numerator odd, or level 0.
  DyadicRational normalized() const;
  bool is_canonical() const;

  /// Numerator when rescaled to target_level, which must be at least the
  /// canonical level (throws std::domain_error otherwise).
  std::uint64_t numerator_at_level(int target_level) const;

  double to_double() const;
  std::string to_string() const;  ///< "m/2^n", or a bare integer at level 0

  bool is_zero() const { return num_ == 0; }
  bool is_one() const;

 private:
  std::uint64_t num_ = 0;
  int level_ = 0;
};

/// Canonical form of numerator / 2^level; same domain checks as the constructor.
DyadicRational dyadic_normalize(std::uint64_t numerator, int level);

/// Exact value comparisons (independent of representation).
bool same_value(const DyadicRational& a, const DyadicRational& b);
bool value_less(const DyadicRational& a, const DyadicRational& b);

/// |a - b| as an exact dyadic rational.
DyadicRational abs_difference(const DyadicRational& a, const DyadicRational& b);

}  // namespace takagi
