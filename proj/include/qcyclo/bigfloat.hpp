#pragma once

// Arbitrary-precision real and complex values on top of MPFR, with an
// explicit precision-in-bits contract: every value knows its working
// precision and arithmetic results carry the larger precision of their
// operands, never less. Precision is per-value state, not ambient global
// state, so concurrent use at different precisions is safe.

#include <mpfr.h>

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "qcyclo/ntheory.hpp"

namespace qcyclo {

class BigFloat {
 public:
  static constexpr long kMinPrecision = 16;

  explicit BigFloat(long precision_bits = 64) {
    mpfr_init2(v_, clamp(precision_bits));
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, kMinPrecision);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat of(long value, long precision_bits) {
    BigFloat r(precision_bits);
    mpfr_set_si(r.v_, value, MPFR_RNDN);
    return r;
  }
  static BigFloat of(const mpz_class& value, long precision_bits) {
    BigFloat r(precision_bits);
    mpfr_set_z(r.v_, value.get_mpz_t(), MPFR_RNDN);
    return r;
  }
  static BigFloat pi(long precision_bits) {
    BigFloat r(precision_bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static BigFloat two_pow(long exponent, long precision_bits = 64) {
    BigFloat r(precision_bits);
    mpfr_set_ui_2exp(r.v_, 1, exponent, MPFR_RNDN);
    return r;
  }

  long precision() const { return mpfr_get_prec(v_); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  BigFloat operator-() const {
    BigFloat r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// log2 |x|, as a double; -16384 for x == 0 (floor sentinel).
  double log2_abs() const {
    if (is_zero()) return -16384.0;
    long exp = 0;
    double m = mpfr_get_d_2exp(&exp, v_, MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(exp);
  }

  mpz_class to_integer_nearest() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
  }

  /// |x - nearest integer|.
  BigFloat distance_to_integer() const {
    mpz_class z = to_integer_nearest();
    BigFloat r(precision());
    mpfr_sub_z(r.v_, v_, z.get_mpz_t(), MPFR_RNDN);
    mpfr_abs(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  std::string str(int digits = 0) const {
    if (digits <= 0)
      digits = static_cast<int>(static_cast<double>(precision()) * 0.30103) + 2;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  static long clamp(long p) { return std::max(p, kMinPrecision); }
  mpfr_t v_;
};

inline BigFloat abs(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline BigFloat sqrt(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline BigFloat log(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline BigFloat sin(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_sin(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline BigFloat cot(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_cot(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline std::pair<BigFloat, BigFloat> sin_cos(const BigFloat& x) {
  BigFloat s(x.precision()), c(x.precision());
  mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
  return {std::move(s), std::move(c)};
}
inline BigFloat hypot(const BigFloat& a, const BigFloat& b) {
  BigFloat r(std::max(a.precision(), b.precision()));
  mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

class BigComplex {
 public:
  explicit BigComplex(long precision_bits = 64)
      : re_(precision_bits), im_(precision_bits) {}
  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}

  static BigComplex of(long re, long im, long precision_bits) {
    return {BigFloat::of(re, precision_bits), BigFloat::of(im, precision_bits)};
  }
  /// e^{i*theta} computed directly from the angle.
  static BigComplex unit_angle(const BigFloat& theta) {
    auto [s, c] = sin_cos(theta);
    return {std::move(c), std::move(s)};
  }
  /// Exact i^k.
  static BigComplex i_power(long k, long precision_bits) {
    switch (((k % 4) + 4) % 4) {
      case 0: return of(1, 0, precision_bits);
      case 1: return of(0, 1, precision_bits);
      case 2: return of(-1, 0, precision_bits);
      default: return of(0, -1, precision_bits);
    }
  }

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  long precision() const { return std::max(re_.precision(), im_.precision()); }

  BigComplex conj() const { return {re_, -im_}; }
  BigFloat abs() const { return hypot(re_, im_); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat d = b.re_ * b.re_ + b.im_ * b.im_;
    return {(a.re_ * b.re_ + a.im_ * b.im_) / d,
            (a.im_ * b.re_ - a.re_ * b.im_) / d};
  }
  BigComplex operator-() const { return {-re_, -im_}; }

 private:
  BigFloat re_, im_;
};

}  // namespace qcyclo
