#pragma once

#include <cstdint>

#include "takagi/dyadic.hpp"
#include "takagi/interval.hpp"

namespace takagi {

/// Exponent family parameter; requires alpha > 0.  The classical Takagi
/// function (doubled) sits at alpha = 1 and the parabola 4x(1-x) at alpha = 2.
class AlphaParameter {
 public:
  explicit AlphaParameter(double alpha);
  double value() const { return alpha_; }

 private:
  double alpha_;
};

/// Truncation control for the series evaluator; requires tol > 0.
struct SeriesTolerance {
  double tol;

  explicit SeriesTolerance(double t);

  /// Smallest J with 2^{-alpha J} / (1 - 2^{-alpha}) < tol: past J the series
  /// tail is below tol.
  int truncation_terms(const AlphaParameter& alpha) const;
};

/// Distance to the nearest integer, doubled: the tent map with peak 1 at
/// half-integers.  Exact in double arithmetic for every representable x.
double tent(double x);

/// Tent map with exact dyadic reduction modulo 1.
DyadicRational tent(const DyadicRational& x);

/// Series evaluator: sum of 2^{-alpha j} tent(2^j x), truncated per tol with
/// the tail bound added to both ends.  Works at any real x (the function has
/// period 1); enclosure width is at most 2 tol plus rounding dust.
RealInterval f_series(double x, const AlphaParameter& alpha,
                      const SeriesTolerance& tol, const PrecisionPolicy& policy);

/// Finite-sum evaluator at a dyadic point: at level n only the first n series
/// terms are nonzero and every tent value is an exact dyadic.
RealInterval f_dyadic(const DyadicRational& x, const AlphaParameter& alpha,
                      const PrecisionPolicy& policy);
RealInterval f_dyadic(const DyadicRational& x, const AlphaParameter& alpha,
                      int bits);

/// Digit-expansion evaluator at numerator m, level n: the double sum over
/// k < m of signed weights (-1)^{digit_i(k)} 2^{-((n-i-1) alpha + i)}.  The
/// inner signs are accumulated exactly per weight before any rounding, which
/// keeps the interval work at n terms.
RealInterval f_digit_formula(const DyadicRational& x, const AlphaParameter& alpha,
                             const PrecisionPolicy& policy);
RealInterval f_digit_formula(const DyadicRational& x, const AlphaParameter& alpha,
                             int bits);

/// Midpoint-recursion evaluator: descends to the two surrounding points one
/// level down and adds the level weight 2^{-alpha (level-1)}.
RealInterval f_midpoint_recursive(const DyadicRational& x,
                                  const AlphaParameter& alpha,
                                  const PrecisionPolicy& policy);
RealInterval f_midpoint_recursive(const DyadicRational& x,
                                  const AlphaParameter& alpha, int bits);

/// Forward difference f((k+1)/2^{n+1}) - f(k/2^{n+1}) via the halving
/// recursion with signed level weight (-1)^k 2^{-alpha n}.  Requires
/// 0 <= k < 2^{n+1} and 0 <= n <= 61.
RealInterval forward_difference(std::uint64_t k, int n,
                                const AlphaParameter& alpha,
                                const PrecisionPolicy& policy);
RealInterval forward_difference(std::uint64_t k, int n,
                                const AlphaParameter& alpha, int bits);

}  // namespace takagi
