#include "takagi/lambda_poly.hpp"

#include <stdexcept>

namespace takagi {

void LambdaPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) {
    coeffs_.pop_back();
  }
}

LambdaPolynomial LambdaPolynomial::constant(std::int64_t c) {
  LambdaPolynomial p;
  if (c != 0) {
    p.coeffs_.push_back(c);
  }
  return p;
}

LambdaPolynomial LambdaPolynomial::monomial(std::int64_t c, std::size_t degree) {
  LambdaPolynomial p;
  if (c != 0) {
    p.coeffs_.assign(degree + 1, 0);
    p.coeffs_[degree] = c;
  }
  return p;
}

LambdaPolynomial LambdaPolynomial::from_coefficients(std::vector<std::int64_t> coeffs) {
  LambdaPolynomial p;
  p.coeffs_ = std::move(coeffs);
  p.trim();
  return p;
}

std::int64_t LambdaPolynomial::coefficient(std::size_t j) const {
  return j < coeffs_.size() ? coeffs_[j] : 0;
}

LambdaPolynomial LambdaPolynomial::operator+(const LambdaPolynomial& other) const {
  LambdaPolynomial r;
  r.coeffs_.resize(std::max(coeffs_.size(), other.coeffs_.size()), 0);
  for (std::size_t j = 0; j < r.coeffs_.size(); ++j) {
    r.coeffs_[j] = coefficient(j) + other.coefficient(j);
  }
  r.trim();
  return r;
}

LambdaPolynomial LambdaPolynomial::operator-(const LambdaPolynomial& other) const {
  LambdaPolynomial r;
  r.coeffs_.resize(std::max(coeffs_.size(), other.coeffs_.size()), 0);
  for (std::size_t j = 0; j < r.coeffs_.size(); ++j) {
    r.coeffs_[j] = coefficient(j) - other.coefficient(j);
  }
  r.trim();
  return r;
}

LambdaPolynomial LambdaPolynomial::operator-() const { return scaled(-1); }

LambdaPolynomial LambdaPolynomial::scaled(std::int64_t factor) const {
  LambdaPolynomial r;
  if (factor != 0) {
    r.coeffs_ = coeffs_;
    for (std::int64_t& c : r.coeffs_) {
      c *= factor;
    }
  }
  return r;
}

LambdaPolynomial LambdaPolynomial::times_lambda_power(std::size_t k) const {
  LambdaPolynomial r;
  if (!coeffs_.empty()) {
    r.coeffs_.assign(coeffs_.size() + k, 0);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      r.coeffs_[j + k] = coeffs_[j];
    }
  }
  return r;
}

LambdaPolynomial& LambdaPolynomial::add_to_constant(std::int64_t c) {
  if (coeffs_.empty()) {
    if (c != 0) {
      coeffs_.push_back(c);
    }
  } else {
    coeffs_[0] += c;
    trim();
  }
  return *this;
}

mpz_class LambdaPolynomial::eval_at_integer(std::uint64_t lambda) const {
  mpz_class acc = 0;
  for (std::size_t j = coeffs_.size(); j-- > 0;) {
    acc *= static_cast<unsigned long>(lambda);
    acc += coeffs_[j];
  }
  return acc;
}

std::optional<std::int64_t> LambdaPolynomial::eval_at_integer_i64(
    std::uint64_t lambda) const {
  if (lambda > static_cast<std::uint64_t>(INT64_MAX)) {
    return std::nullopt;
  }
  std::int64_t acc = 0;
  const std::int64_t l = static_cast<std::int64_t>(lambda);
  for (std::size_t j = coeffs_.size(); j-- > 0;) {
    std::int64_t scaled_acc = 0;
    if (__builtin_mul_overflow(acc, l, &scaled_acc) ||
        __builtin_add_overflow(scaled_acc, coeffs_[j], &acc)) {
      return std::nullopt;
    }
  }
  return acc;
}

RealInterval LambdaPolynomial::eval_interval(double p, int bits) const {
  if (p == 0.0 || p == 1.0) {
    return RealInterval::exact(eval_at_integer(p == 0.0 ? 1 : 2), bits);
  }
  RealInterval acc(bits);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] != 0) {
      acc = acc + pow2_scaled(p, static_cast<long>(j), bits).mul_int(coeffs_[j]);
    }
  }
  return acc;
}

RealInterval LambdaPolynomial::eval_interval_with_powers(
    double p, int bits, const std::vector<RealInterval>& lambda_powers) const {
  if (p == 0.0 || p == 1.0) {
    return RealInterval::exact(eval_at_integer(p == 0.0 ? 1 : 2), bits);
  }
  if (lambda_powers.size() < coeffs_.size()) {
    throw std::invalid_argument("lambda power table shorter than polynomial");
  }
  RealInterval acc(bits);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] != 0) {
      acc = acc + lambda_powers[j].mul_int(coeffs_[j]);
    }
  }
  return acc;
}

std::string LambdaPolynomial::to_string() const {
  if (coeffs_.empty()) {
    return "0";
  }
  std::string out;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) {
      continue;
    }
    if (!out.empty()) {
      out += coeffs_[j] > 0 ? " + " : " - ";
    } else if (coeffs_[j] < 0) {
      out += "-";
    }
    std::int64_t mag = coeffs_[j] > 0 ? coeffs_[j] : -coeffs_[j];
    if (j == 0) {
      out += std::to_string(mag);
    } else {
      if (mag != 1) {
        out += std::to_string(mag) + "*";
      }
      out += j == 1 ? "L" : "L^" + std::to_string(j);
    }
  }
  return out;
}

}  // namespace takagi
