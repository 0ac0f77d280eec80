#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <string>
#include <string_view>
#include <utility>

#include "unitlat/errors.hpp"

namespace unitlat {

/// Binary floating point value of arbitrary precision backed by MPFR.
///
/// Each value carries its own precision in bits. Binary operations produce a
/// result at the larger precision of the two operands, rounded to nearest.
/// Integer operands adopt the precision of the Real they are combined with.
class Real {
 public:
  static constexpr mpfr_prec_t kDefaultBits = 128;

  Real() : Real(kDefaultBits) {}

  explicit Real(mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }

  Real(int x, mpfr_prec_t bits) : Real(static_cast<long>(x), bits) {}

  Real(long x, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }

  Real(double x, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }

  Real(const mpz_class& x, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
  }

  Real(const mpq_class& x, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
  }

  static Real from_string(std::string_view text, mpfr_prec_t bits) {
    Real r(bits);
    std::string s(text);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) throw DomainError("not a decimal number: " + s);
    return r;
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }

  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }

  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }

  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  /// Copy of this value rounded to `bits`.
  Real with_precision(mpfr_prec_t bits) const {
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  /// Base-2 exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
  long exponent2() const { return is_zero() ? -(1L << 40) : static_cast<long>(mpfr_get_exp(v_)); }

  /// Fixed-point decimal with `significant` significant digits, ties to even.
  std::string to_decimal(int significant = 12) const {
    if (is_zero()) return "0";
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    mpfr_exp_t exp10 = 0;
    char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(significant), v_, MPFR_RNDN);
    std::string digits(raw);
    mpfr_free_str(raw);
    bool negative = false;
    if (!digits.empty() && digits.front() == '-') {
      negative = true;
      digits.erase(digits.begin());
    }
    std::string out;
    const long e = static_cast<long>(exp10);
    const long n = static_cast<long>(digits.size());
    if (e <= 0) {
      out = "0." + std::string(static_cast<size_t>(-e), '0') + digits;
    } else if (e >= n) {
      out = digits + std::string(static_cast<size_t>(e - n), '0');
    } else {
      out = digits.substr(0, static_cast<size_t>(e)) + "." + digits.substr(static_cast<size_t>(e));
    }
    return negative ? "-" + out : out;
  }

  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) { return apply(o, mpfr_add); }
  Real& operator-=(const Real& o) { return apply(o, mpfr_sub); }
  Real& operator*=(const Real& o) { return apply(o, mpfr_mul); }
  Real& operator/=(const Real& o) { return apply(o, mpfr_div); }

  Real& operator+=(long o) {
    mpfr_add_si(v_, v_, o, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(long o) {
    mpfr_sub_si(v_, v_, o, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(long o) {
    mpfr_mul_si(v_, v_, o, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(long o) {
    mpfr_div_si(v_, v_, o, MPFR_RNDN);
    return *this;
  }

  friend Real operator+(Real a, const Real& b) { return a.widen(b) += b; }
  friend Real operator-(Real a, const Real& b) { return a.widen(b) -= b; }
  friend Real operator*(Real a, const Real& b) { return a.widen(b) *= b; }
  friend Real operator/(Real a, const Real& b) { return a.widen(b) /= b; }
  friend Real operator+(Real a, long b) { return a += b; }
  friend Real operator-(Real a, long b) { return a -= b; }
  friend Real operator*(Real a, long b) { return a *= b; }
  friend Real operator/(Real a, long b) { return a /= b; }
  friend Real operator*(long a, Real b) { return b *= a; }
  friend Real operator+(long a, Real b) { return b += a; }
  friend Real operator-(long a, const Real& b) { return -b + a; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b) {
    const int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  friend Real abs(const Real& x) {
    Real r(x.precision());
    mpfr_abs(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real sqrt(const Real& x) {
    Real r(x.precision());
    mpfr_sqrt(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real log(const Real& x) {
    Real r(x.precision());
    mpfr_log(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real exp(const Real& x) {
    Real r(x.precision());
    mpfr_exp(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real floor(const Real& x) {
    Real r(x.precision());
    mpfr_floor(r.v_, x.v_);
    return r;
  }

  /// Nearest integer, ties to even; requires a finite value.
  mpz_class round_to_integer() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
  }

  mpz_class floor_to_integer() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
  }

 private:
  template <class Op>
  Real& apply(const Real& o, Op op) {
    widen(o);
    op(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  Real& widen(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return b < a ? b : a; }

/// log((1+√5)/2) at the requested precision.
inline Real log_golden_ratio(mpfr_prec_t bits) {
  Real five(5L, bits + 16);
  Real phi = (sqrt(five) + 1L) / 2L;
  return log(phi).with_precision(bits);
}

/// Relative agreement test |a-b| <= rel * max(|a|,|b|), absolute for values near zero.
inline bool agree_relative(const Real& a, const Real& b, const Real& rel) {
  Real scale = max(abs(a), abs(b));
  if (scale < 1L) scale = Real(1L, scale.precision());
  return abs(a - b) <= rel * scale;
}

/// 2^(-k) at `bits` precision.
inline Real pow2_neg(long k, mpfr_prec_t bits) {
  Real r(1L, bits);
  mpfr_div_2si(r.get(), r.get(), k, MPFR_RNDN);
  return r;
}

namespace detail {

/// Evaluates `eval(work)` at increasing working precision until the result
/// keeps at least `bits` significant bits after cancellation from terms of
/// size 2^mag.
template <class Eval>
Real evaluate_with_cancellation(mpfr_prec_t bits, long mag, Eval&& eval) {
  mpfr_prec_t work = bits + 2 * std::max(0L, mag) + 24;
  for (int attempt = 0; attempt < 10; ++attempt) {
    Real v = eval(work);
    if (!v.is_zero() && static_cast<long>(work) - (mag - v.exponent2()) >= static_cast<long>(bits) + 8)
      return v.with_precision(bits);
    work *= 2;
  }
  throw PrecisionError("evaluation did not stabilise under cancellation");
}

}  // namespace detail

}  // namespace unitlat
