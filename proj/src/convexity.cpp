#include "takagi/convexity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace takagi {

MidpointFrame midpoint_frame(const DyadicRational& x, const DyadicRational& y) {
  DyadicRational lo = x.normalized();
  DyadicRational hi = y.normalized();
  if (value_less(hi, lo)) {
    std::swap(lo, hi);
  }
  int level = std::max(lo.level(), hi.level());
  std::uint64_t a = lo.numerator_at_level(level);
  std::uint64_t b = hi.numerator_at_level(level);
  if ((a + b) % 2 != 0) {
    // Midpoint sits one level deeper; rescale so that m and l are integers.
    ++level;
    a *= 2;
    b *= 2;
  }
  MidpointFrame frame;
  frame.m = (a + b) / 2;
  frame.l = (b - a) / 2;
  frame.level = level;
  return frame;
}

RealInterval convexity_gap(const DyadicRational& x, const DyadicRational& y,
                           const AlphaParameter& alpha, int bits) {
  if (same_value(x, y)) {
    return RealInterval(bits);  // degenerate pair, exactly zero
  }
  const MidpointFrame frame = midpoint_frame(x, y);
  const DyadicRational left(frame.m - frame.l, frame.level);
  const DyadicRational right(frame.m + frame.l, frame.level);
  const DyadicRational mid(frame.m, frame.level);
  RealInterval f_mid = f_dyadic(mid, alpha, bits);
  RealInterval f_left = f_dyadic(left, alpha, bits);
  RealInterval f_right = f_dyadic(right, alpha, bits);
  return f_mid - (f_left + f_right).halve();
}

RealInterval convexity_gap(const DyadicRational& x, const DyadicRational& y,
                           const AlphaParameter& alpha,
                           const PrecisionPolicy& policy) {
  validate(policy);
  return convexity_gap(x, y, alpha, policy.initial_bits);
}

namespace {

void require_theorem_alpha(const AlphaParameter& alpha) {
  if (!(alpha.value() >= 1.0 && alpha.value() <= 2.0)) {
    throw std::domain_error("convexity bound requires 1 <= alpha <= 2");
  }
}

/// Exact test of |x - y| <= 2^-r.
bool difference_at_most_pow2(const DyadicRational& diff, int r) {
  const DyadicRational c = diff.normalized();
  // c = num / 2^level <= 2^-r  <=>  num <= 2^{level - r}.
  if (c.level() < r) {
    return c.numerator() == 0;
  }
  return c.numerator() <= (std::uint64_t{1} << (c.level() - r));
}

}  // namespace

bool predict_convexity_equality(const DyadicRational& x,
                                const DyadicRational& y,
                                const AlphaParameter& alpha) {
  require_theorem_alpha(alpha);
  if (same_value(x, y)) {
    return true;
  }
  if (alpha.value() == 2.0) {
    return true;
  }
  const DyadicRational diff = abs_difference(x, y).normalized();
  if (alpha.value() == 1.0) {
    // Some grid 2^-r holds x or y and the gap |x-y| is within one cell.
    const int max_r =
        std::max(x.normalized().level(), y.normalized().level()) + 1;
    for (int r = 0; r <= max_r; ++r) {
      const bool on_grid =
          x.normalized().level() <= r || y.normalized().level() <= r;
      if (on_grid && difference_at_most_pow2(diff, r)) {
        return true;
      }
    }
    return false;
  }
  // 1 < alpha < 2: adjacent points of one grid, |x-y| = 2^-r with x on the
  // grid (then so is y).
  if (diff.numerator() != 1) {
    return false;
  }
  const int r = diff.level();
  return x.normalized().level() <= r;
}

std::optional<bool> convexity_exact_equality(const LambdaPolynomial& delta,
                                             std::uint64_t l, double p) {
  if (l == 0) {
    return delta.is_zero();
  }
  if (p == 0.0) {
    std::optional<std::int64_t> lhs = delta.eval_at_integer_i64(1);
    if (lhs) {
      return *lhs == static_cast<std::int64_t>(l);
    }
    return delta.eval_at_integer(1) == mpz_class(static_cast<unsigned long>(l));
  }
  if (p == 1.0) {
    mpz_class rhs = mpz_class(static_cast<unsigned long>(l));
    rhs *= rhs;
    return delta.eval_at_integer(2) == rhs;
  }
  if (std::has_single_bit(l)) {
    if (delta == LambdaPolynomial::monomial(static_cast<std::int64_t>(l),
                                            block_exponent(l))) {
      return true;  // identity holds at every p
    }
  }
  return std::nullopt;  // only numeric separation can rule further
}

ConvexityReport check_convexity(const DyadicRational& x,
                                const DyadicRational& y,
                                const AlphaParameter& alpha,
                                const PrecisionPolicy& policy) {
  validate(policy);
  require_theorem_alpha(alpha);
  ConvexityReport report;
  report.x = x;
  report.y = y;
  report.alpha = alpha.value();
  const MidpointFrame frame = midpoint_frame(x, y);
  report.m = frame.m;
  report.l = frame.l;
  report.level = frame.level;
  const int bits = policy.initial_bits;
  const DyadicRational diff = abs_difference(x, y);
  report.gap = convexity_gap(x, y, alpha, bits);
  report.bound = frame.l == 0 ? RealInterval(bits)
                              : pow_dyadic_base(diff, alpha.value(), bits);
  // alpha - 1 is exact in double for alpha in [1, 2].
  const double p = alpha.value() - 1.0;
  const LambdaPolynomial delta = second_difference(frame.m, frame.l);
  const std::optional<bool> exact = convexity_exact_equality(delta, frame.l, p);
  if (exact && *exact) {
    report.relation = Relation::equal_certified;
  } else {
    const Ordering order = separate(
        report.gap, report.bound,
        [&](int b) { return convexity_gap(x, y, alpha, b); },
        [&](int b) {
          return frame.l == 0 ? RealInterval(b)
                              : pow_dyadic_base(diff, alpha.value(), b);
        },
        policy);
    switch (order) {
      case Ordering::less:
        report.relation = Relation::strict;
        break;
      case Ordering::greater:
        report.relation = Relation::greater;
        break;
      case Ordering::equal_certified:
        report.relation = Relation::equal_certified;
        break;
      case Ordering::inconclusive:
        report.relation = Relation::inconclusive;
        break;
    }
  }
  report.predicted_equality = predict_convexity_equality(x, y, alpha);
  report.agrees = report.relation != Relation::inconclusive &&
                  (report.relation == Relation::equal_certified) ==
                      report.predicted_equality;
  return report;
}

std::pair<RealInterval, RealInterval> reduction_identity(
    std::uint64_t m, std::uint64_t l, int level, const AlphaParameter& alpha,
    const PrecisionPolicy& policy) {
  validate(policy);
  if (level < 1 || level > 61) {
    throw std::domain_error("reduction identity requires 1 <= level <= 61");
  }
  const std::uint64_t cap = std::uint64_t{1} << level;
  if (l > m || m > cap || m + l > cap) {
    throw std::domain_error("reduction identity requires l <= m, m + l <= 2^level");
  }
  const int bits = policy.initial_bits;
  const DyadicRational left(m - l, level);
  const DyadicRational right(m + l, level);
  RealInterval gap = convexity_gap(left, right, alpha, bits);
  RealInterval function_side =
      gap * pow2_scaled(alpha.value(), level - 1, bits);
  RealInterval digit_side =
      second_difference(m, l).eval_interval(alpha.value() - 1.0, bits);
  return {std::move(function_side), std::move(digit_side)};
}

}  // namespace takagi
