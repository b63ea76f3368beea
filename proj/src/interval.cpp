#include "takagi/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace takagi {

void validate(const PrecisionPolicy& policy) {
  // 64-bit floor: doubles, 62-bit dyadic numerators, and int64 coefficients
  // must all embed exactly at the working precision.
  if (policy.initial_bits < 64 || policy.initial_bits > policy.max_bits) {
    throw std::domain_error("precision policy requires 64 <= initial_bits <= max_bits");
  }
}

namespace {

int checked_bits(int bits) {
  if (bits < MPFR_PREC_MIN || bits > (1 << 24)) {
    throw std::domain_error("interval precision out of range");
  }
  return bits;
}

}  // namespace

RealInterval::RealInterval() : RealInterval(128) {}

RealInterval::RealInterval(int precision_bits) : bits_(checked_bits(precision_bits)) {
  mpfr_init2(lo_, bits_);
  mpfr_init2(hi_, bits_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

RealInterval::RealInterval(const RealInterval& other) : bits_(other.bits_) {
  mpfr_init2(lo_, bits_);
  mpfr_init2(hi_, bits_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

RealInterval::RealInterval(RealInterval&& other) noexcept : bits_(other.bits_) {
  mpfr_init2(lo_, bits_);
  mpfr_init2(hi_, bits_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

RealInterval& RealInterval::operator=(const RealInterval& other) {
  if (this != &other) {
    bits_ = other.bits_;
    mpfr_set_prec(lo_, bits_);
    mpfr_set_prec(hi_, bits_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

RealInterval& RealInterval::operator=(RealInterval&& other) noexcept {
  if (this != &other) {
    bits_ = other.bits_;
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
  }
  return *this;
}

RealInterval::~RealInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

RealInterval RealInterval::exact(std::int64_t value, int bits) {
  RealInterval r(std::max(bits, 64));
  mpfr_set_si(r.lo_, value, MPFR_RNDD);
  mpfr_set_si(r.hi_, value, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::exact(const mpz_class& value, int bits) {
  int needed = static_cast<int>(mpz_sizeinbase(value.get_mpz_t(), 2));
  RealInterval r(std::max(bits, needed + 1));
  mpfr_set_z(r.lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, value.get_mpz_t(), MPFR_RNDU);
  return r;
}

RealInterval RealInterval::exact(double value, int bits) {
  RealInterval r(std::max(bits, 64));
  mpfr_set_d(r.lo_, value, MPFR_RNDD);
  mpfr_set_d(r.hi_, value, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::exact(const DyadicRational& value, int bits) {
  RealInterval r(std::max(bits, 64));
  mpfr_set_ui(r.lo_, value.numerator(), MPFR_RNDD);
  mpfr_mul_2si(r.lo_, r.lo_, -value.level(), MPFR_RNDD);
  mpfr_set(r.hi_, r.lo_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, int bits) {
  RealInterval r(bits);
  mpfr_set(r.lo_, lo, MPFR_RNDD);
  mpfr_set(r.hi_, hi, MPFR_RNDU);
  return r;
}

bool RealInterval::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

bool RealInterval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool RealInterval::contains(const DyadicRational& value) const {
  // Compare against the exact value num * 2^-level without rounding:
  // lo <= v  <=>  lo * 2^level <= num, and scaling by 2^level is exact.
  mpfr_t scaled;
  mpfr_init2(scaled, mpfr_get_prec(lo_));
  mpfr_mul_2si(scaled, lo_, value.level(), MPFR_RNDD);
  bool lo_ok = mpfr_cmp_ui(scaled, value.numerator()) <= 0;
  mpfr_set_prec(scaled, mpfr_get_prec(hi_));
  mpfr_mul_2si(scaled, hi_, value.level(), MPFR_RNDU);
  bool hi_ok = mpfr_cmp_ui(scaled, value.numerator()) >= 0;
  mpfr_clear(scaled);
  return lo_ok && hi_ok;
}

bool RealInterval::contains(const mpz_class& value) const {
  return mpfr_cmp_z(lo_, value.get_mpz_t()) <= 0 &&
         mpfr_cmp_z(hi_, value.get_mpz_t()) >= 0;
}

bool RealInterval::overlaps(const RealInterval& other) const {
  return mpfr_cmp(lo_, other.hi_) <= 0 && mpfr_cmp(other.lo_, hi_) <= 0;
}

bool RealInterval::definitely_less(const RealInterval& other) const {
  return mpfr_cmp(hi_, other.lo_) < 0;
}

bool RealInterval::definitely_negative() const { return mpfr_sgn(hi_) < 0; }

bool RealInterval::encloses(const RealInterval& other) const {
  return mpfr_cmp(lo_, other.lo_) <= 0 && mpfr_cmp(other.hi_, hi_) <= 0;
}

double RealInterval::width_upper() const {
  if (is_point()) {
    return 0.0;
  }
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double out = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return out;
}

double RealInterval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double RealInterval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

namespace {

std::string format_directed(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  char* raw = nullptr;
  if (mpfr_asprintf(&raw, "%.*R*g", digits, rnd, x) < 0) {
    throw std::runtime_error("mpfr_asprintf failed");
  }
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

}  // namespace

std::string RealInterval::lo_string(int significant_digits) const {
  return format_directed(lo_, significant_digits, MPFR_RNDD);
}

std::string RealInterval::hi_string(int significant_digits) const {
  return format_directed(hi_, significant_digits, MPFR_RNDU);
}

RealInterval RealInterval::operator-() const {
  RealInterval r(bits_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::mul_int(std::int64_t factor) const {
  RealInterval r(bits_);
  if (factor >= 0) {
    mpfr_mul_si(r.lo_, lo_, factor, MPFR_RNDD);
    mpfr_mul_si(r.hi_, hi_, factor, MPFR_RNDU);
  } else {
    mpfr_mul_si(r.lo_, hi_, factor, MPFR_RNDD);
    mpfr_mul_si(r.hi_, lo_, factor, MPFR_RNDU);
  }
  return r;
}

RealInterval RealInterval::mul_pow2(int e) const {
  RealInterval r(bits_);
  mpfr_mul_2si(r.lo_, lo_, e, MPFR_RNDD);
  mpfr_mul_2si(r.hi_, hi_, e, MPFR_RNDU);
  return r;
}

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
  RealInterval r(std::max(a.bits_, b.bits_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
  RealInterval r(std::max(a.bits_, b.bits_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
  // Outward product: minimum of the four endpoint products rounded down,
  // maximum rounded up.
  RealInterval r(std::max(a.bits_, b.bits_));
  mpfr_t t, best_lo, best_hi;
  mpfr_init2(t, r.bits_);
  mpfr_init2(best_lo, r.bits_);
  mpfr_init2(best_hi, r.bits_);
  mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  bool first = true;
  for (mpfr_srcptr x : xs) {
    for (mpfr_srcptr y : ys) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, best_lo) < 0) {
        mpfr_set(best_lo, t, MPFR_RNDD);
      }
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, best_hi) > 0) {
        mpfr_set(best_hi, t, MPFR_RNDU);
      }
      first = false;
    }
  }
  mpfr_set(r.lo_, best_lo, MPFR_RNDD);
  mpfr_set(r.hi_, best_hi, MPFR_RNDU);
  mpfr_clear(t);
  mpfr_clear(best_lo);
  mpfr_clear(best_hi);
  return r;
}

bool RealInterval::same_endpoints(const RealInterval& other) const {
  return mpfr_equal_p(lo_, other.lo_) != 0 && mpfr_equal_p(hi_, other.hi_) != 0;
}

RealInterval pow2_scaled(double scale, long k, int bits) {
  // scale has at most 53 significant bits and |k| stays small, so the product
  // scale * k is exact at working precision; only the exponential rounds.
  RealInterval r(bits);
  mpfr_t e;
  mpfr_init2(e, std::max(bits, 96));
  mpfr_set_d(e, scale, MPFR_RNDN);
  mpfr_mul_si(e, e, k, MPFR_RNDN);
  mpfr_t lo, hi;
  mpfr_init2(lo, bits);
  mpfr_init2(hi, bits);
  mpfr_exp2(lo, e, MPFR_RNDD);
  mpfr_exp2(hi, e, MPFR_RNDU);
  RealInterval out = RealInterval::from_endpoints(lo, hi, bits);
  mpfr_clear(e);
  mpfr_clear(lo);
  mpfr_clear(hi);
  return out;
}

RealInterval pow_integer_base(std::uint64_t base, double exp_fraction,
                              long exp_integer, int bits) {
  mpfr_t e;
  mpfr_init2(e, std::max(bits, 96));
  mpfr_set_d(e, exp_fraction, MPFR_RNDN);
  mpfr_add_si(e, e, exp_integer, MPFR_RNDN);  // exact: small integer shift
  if (base == 0) {
    if (mpfr_sgn(e) <= 0) {
      mpfr_clear(e);
      throw std::domain_error("0^e requires a positive exponent");
    }
    mpfr_clear(e);
    return RealInterval(bits);  // exact zero
  }
  mpfr_t b, lo, hi;
  mpfr_init2(b, 64);
  mpfr_set_ui(b, base, MPFR_RNDN);  // exact for any uint64
  mpfr_init2(lo, bits);
  mpfr_init2(hi, bits);
  mpfr_pow(lo, b, e, MPFR_RNDD);
  mpfr_pow(hi, b, e, MPFR_RNDU);
  RealInterval out = RealInterval::from_endpoints(lo, hi, bits);
  mpfr_clear(e);
  mpfr_clear(b);
  mpfr_clear(lo);
  mpfr_clear(hi);
  return out;
}

RealInterval pow_dyadic_base(const DyadicRational& base, double exponent,
                             int bits) {
  if (exponent <= 0) {
    throw std::domain_error("dyadic power requires a positive exponent");
  }
  if (base.is_zero()) {
    return RealInterval(bits);  // 0^e = 0 for e > 0
  }
  mpfr_t b, e, lo, hi;
  mpfr_init2(b, 96);
  mpfr_set_ui(b, base.numerator(), MPFR_RNDN);
  mpfr_mul_2si(b, b, -base.level(), MPFR_RNDN);  // exact
  mpfr_init2(e, 64);
  mpfr_set_d(e, exponent, MPFR_RNDN);
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

const char* ordering_name(Ordering o) {
  switch (o) {
    case Ordering::less:
      return "less";
    case Ordering::greater:
      return "greater";
    case Ordering::equal_certified:
      return "equal";
    case Ordering::inconclusive:
      return "inconclusive";
  }
  return "?";
}

Ordering separate(const RealInterval& a, const RealInterval& b,
                  const Refiner& refine_a, const Refiner& refine_b,
                  const PrecisionPolicy& policy,
                  const ExactEqualityRoute& exact_equal) {
  validate(policy);
  if (exact_equal) {
    if (std::optional<bool> known = exact_equal(); known && *known) {
      return Ordering::equal_certified;
    }
  }
  if (a.definitely_less(b)) {
    return Ordering::less;
  }
  if (b.definitely_less(a)) {
    return Ordering::greater;
  }
  for (int bits = policy.initial_bits * 2; bits <= policy.max_bits; bits *= 2) {
    RealInterval ra = refine_a(bits);
    RealInterval rb = refine_b(bits);
    if (ra.definitely_less(rb)) {
      return Ordering::less;
    }
    if (rb.definitely_less(ra)) {
      return Ordering::greater;
    }
  }
  return Ordering::inconclusive;
}

}  // namespace takagi
