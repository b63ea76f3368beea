#include "takagi/dyadic.hpp"

#include <algorithm>
#include <stdexcept>

namespace takagi {

namespace {
constexpr int kMaxLevel = 62;  // keeps 2^level inside uint64_t with headroom
}

DyadicRational::DyadicRational(std::uint64_t numerator, int level)
    : num_(numerator), level_(level) {
  if (level < 0 || level > kMaxLevel) {
    throw std::domain_error("dyadic level out of range [0, 62]");
  }
  if (numerator > (std::uint64_t{1} << level)) {
    throw std::domain_error("dyadic numerator exceeds 2^level");
  }
}

DyadicRational DyadicRational::normalized() const {
  std::uint64_t n = num_;
  int lev = level_;
  while (lev > 0 && n % 2 == 0) {
    n /= 2;
    --lev;
  }
  return DyadicRational(n, lev);
}

bool DyadicRational::is_canonical() const {
  return level_ == 0 || num_ % 2 == 1;
}

std::uint64_t DyadicRational::numerator_at_level(int target_level) const {
  DyadicRational c = normalized();
  if (target_level < c.level() || target_level > kMaxLevel) {
    throw std::domain_error("target level cannot represent this dyadic");
  }
  return c.numerator() << (target_level - c.level());
}

double DyadicRational::to_double() const {
  // Exact whenever the canonical numerator fits a double mantissa (always the
  // case for the levels used by the evaluators); division by 2^level only
  // shifts the exponent.
  DyadicRational c = normalized();
  return static_cast<double>(c.numerator()) /
         static_cast<double>(std::uint64_t{1} << c.level());
}

std::string DyadicRational::to_string() const {
  DyadicRational c = normalized();
  if (c.level() == 0) {
    return std::to_string(c.numerator());
  }
  return std::to_string(c.numerator()) + "/2^" + std::to_string(c.level());
}

bool DyadicRational::is_one() const {
  return num_ == (std::uint64_t{1} << level_);
}

DyadicRational dyadic_normalize(std::uint64_t numerator, int level) {
  return DyadicRational(numerator, level).normalized();
}

bool same_value(const DyadicRational& a, const DyadicRational& b) {
  DyadicRational ca = a.normalized();
  DyadicRational cb = b.normalized();
  return ca.numerator() == cb.numerator() && ca.level() == cb.level();
}

bool value_less(const DyadicRational& a, const DyadicRational& b) {
  int common = std::max(a.normalized().level(), b.normalized().level());
  return a.numerator_at_level(common) < b.numerator_at_level(common);
}

DyadicRational abs_difference(const DyadicRational& a, const DyadicRational& b) {
  int common = std::max(a.normalized().level(), b.normalized().level());
  std::uint64_t na = a.numerator_at_level(common);
  std::uint64_t nb = b.numerator_at_level(common);
  return DyadicRational(na < nb ? nb - na : na - nb, common);
}

}  // namespace takagi
