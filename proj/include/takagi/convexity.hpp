#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "takagi/digitsum.hpp"
#include "takagi/dyadic.hpp"
#include "takagi/function.hpp"
#include "takagi/interval.hpp"

namespace takagi {

/// Dyadic pair (x, y) rewritten as midpoint/offset integers at a shared
/// level:  x = (m-l)/2^level, y = (m+l)/2^level with x <= y.  The level is
/// the smallest at which both endpoints and their midpoint's half-offset are
/// integral (one finer than the common canonical level when the parities
/// disagree).
struct MidpointFrame {
  std::uint64_t m = 0;
  std::uint64_t l = 0;
  int level = 0;
};

MidpointFrame midpoint_frame(const DyadicRational& x, const DyadicRational& y);

/// Enclosure of f((x+y)/2) - (f(x) + f(y))/2 via the finite dyadic
/// evaluator.  Exact zero for x = y.
RealInterval convexity_gap(const DyadicRational& x, const DyadicRational& y,
                           const AlphaParameter& alpha,
                           const PrecisionPolicy& policy);
RealInterval convexity_gap(const DyadicRational& x, const DyadicRational& y,
                           const AlphaParameter& alpha, int bits);

/// Predicted equality cases of  gap = |x-y|^alpha  for 1 <= alpha <= 2:
///   alpha = 2      always;
///   1 < alpha < 2  x and y are adjacent points of some dyadic grid
///                  (|x-y| = 2^-r with x a multiple of 2^-r);
///   alpha = 1      some grid level r has x or y on it and |x-y| <= 2^-r;
/// x = y counts as equality.  Throws for alpha outside [1, 2].
bool predict_convexity_equality(const DyadicRational& x,
                                const DyadicRational& y,
                                const AlphaParameter& alpha);

/// One midpoint-convexity instance: gap against bound |x-y|^alpha.
struct ConvexityReport {
  DyadicRational x;
  DyadicRational y;
  double alpha = 0.0;
  std::uint64_t m = 0;  ///< midpoint frame
  std::uint64_t l = 0;
  int level = 0;
  RealInterval gap;
  RealInterval bound;
  Relation relation = Relation::inconclusive;
  bool predicted_equality = false;
  bool agrees = false;
};

/// Checks gap <= |x-y|^alpha for 1 <= alpha <= 2 (domain error outside).
/// The ordering comes from interval separation of gap and bound; equality
/// certification routes through the digit-sum machinery, whose second
/// difference at p = alpha - 1 equals the gap rescaled by 2^{(level-1) alpha}.
ConvexityReport check_convexity(const DyadicRational& x,
                                const DyadicRational& y,
                                const AlphaParameter& alpha,
                                const PrecisionPolicy& policy);

/// Both sides of the rescaling identity
///   2^{(level-1) alpha} * gap(m, l, level) = second_difference(m, l)(2^{alpha-1})
/// as independent enclosures (function side first).  Requires m + l <= 2^level.
std::pair<RealInterval, RealInterval> reduction_identity(
    std::uint64_t m, std::uint64_t l, int level, const AlphaParameter& alpha,
    const PrecisionPolicy& policy);

/// Exact equality knowledge for a convexity instance in frame form, shared by
/// check_convexity and the sweep kernels: definite yes via the integral or
/// monomial routes, definite no via the integer routes, nullopt when only
/// numerics can decide.
std::optional<bool> convexity_exact_equality(const LambdaPolynomial& delta,
                                             std::uint64_t l, double p);

}  // namespace takagi
