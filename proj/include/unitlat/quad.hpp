#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "unitlat/errors.hpp"
#include "unitlat/rational.hpp"
#include "unitlat/real.hpp"

namespace unitlat {

/// a + b√d in the real quadratic field Q(√d), √d the positive root.
///
/// d is stored as given; the constructor only checks that it is squarefree
/// and greater than 1.
class QuadElem {
 public:
  QuadElem(std::int64_t d, Rational a, Rational b) : d_(d), a_(std::move(a)), b_(std::move(b)) {
    if (d_ <= 1 || !is_squarefree(d_)) throw DomainError("d must be squarefree and > 1, got " + std::to_string(d_));
    a_.canonicalize();
    b_.canonicalize();
  }

  static QuadElem rational(std::int64_t d, Rational a) { return QuadElem(d, std::move(a), Rational(0)); }
  static QuadElem sqrt_d(std::int64_t d) { return QuadElem(d, Rational(0), Rational(1)); }

  std::int64_t d() const { return d_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }

  friend bool operator==(const QuadElem& x, const QuadElem& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  QuadElem operator-() const { return QuadElem(d_, -a_, -b_); }

  friend QuadElem operator+(const QuadElem& x, const QuadElem& y) {
    check_same(x, y);
    return QuadElem(x.d_, x.a_ + y.a_, x.b_ + y.b_);
  }
  friend QuadElem operator-(const QuadElem& x, const QuadElem& y) {
    check_same(x, y);
    return QuadElem(x.d_, x.a_ - y.a_, x.b_ - y.b_);
  }
  friend QuadElem operator*(const QuadElem& x, const QuadElem& y) {
    check_same(x, y);
    return QuadElem(x.d_, x.a_ * y.a_ + Rational(x.d_) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
  }

  /// Image under the nontrivial automorphism √d ↦ -√d.
  QuadElem conj() const { return QuadElem(d_, a_, -b_); }

  Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }
  Rational trace() const { return 2 * a_; }

  QuadElem inverse() const {
    const Rational n = norm();
    if (n == 0) throw DomainError("inverse of zero in Q(√" + std::to_string(d_) + ")");
    return QuadElem(d_, a_ / n, -b_ / n);
  }

  QuadElem pow(unsigned e) const {
    QuadElem result = rational(d_, 1);
    QuadElem base = *this;
    while (e != 0) {
      if (e & 1U) result = result * base;
      base = base * base;
      e >>= 1U;
    }
    return result;
  }

  /// Real value under √d > 0. The working precision grows with the size of
  /// the coordinates so that the result has relative error ~2^-bits even when
  /// a + b√d suffers cancellation (conjugates of large units).
  Real to_real(mpfr_prec_t bits) const {
    if (is_zero()) return Real(bits);
    const Real root_d = sqrt(Real(d_, 64));
    const long mag = std::max(Real(a_, 64).exponent2(), Real(b_, 64).exponent2() + root_d.exponent2()) + 1;
    mpfr_prec_t work = bits + 2 * std::max(0L, mag) + 16;
    for (int attempt = 0; attempt < 8; ++attempt) {
      Real v = Real(a_, work) + Real(b_, work) * sqrt(Real(d_, work));
      // Cancellation lost (mag - exponent(v)) bits; keep going until bits remain.
      if (!v.is_zero() && static_cast<long>(work) - (mag - v.exponent2()) >= static_cast<long>(bits) + 8)
        return v.with_precision(bits);
      work *= 2;
    }
    throw PrecisionError("could not evaluate quadratic irrational to requested precision");
  }

  /// "(1+√5)/2", "8+3√7", "1-√2", "√3", "5/3".
  std::string to_string() const {
    Integer den = lcm(a_.get_den(), b_.get_den());
    const Integer an = a_.get_num() * (den / a_.get_den());
    const Integer bn = b_.get_num() * (den / b_.get_den());
    std::string out;
    if (an != 0) out = an.get_str();
    if (bn != 0) {
      const Integer mag = abs(bn);
      if (bn < 0)
        out += "-";
      else if (!out.empty())
        out += "+";
      if (mag != 1) out += mag.get_str();
      out += "√" + std::to_string(d_);
    }
    if (out.empty()) out = "0";
    if (den != 1) {
      if (an != 0 && bn != 0) out = "(" + out + ")";
      out += "/" + den.get_str();
    }
    return out;
  }

 private:
  static void check_same(const QuadElem& x, const QuadElem& y) {
    if (x.d_ != y.d_)
      throw DomainError("mismatched quadratic fields: d=" + std::to_string(x.d_) + " vs d=" + std::to_string(y.d_));
  }

  std::int64_t d_;
  Rational a_;
  Rational b_;
};

inline QuadElem quad_mul(const QuadElem& x, const QuadElem& y) { return x * y; }
inline QuadElem quad_conj(const QuadElem& x) { return x.conj(); }
inline Rational quad_norm(const QuadElem& x) { return x.norm(); }

/// Algebraic integer test: trace 2a and norm a² - d b² both in Z.
inline bool is_quad_integer(const QuadElem& x) { return is_integral(x.trace()) && is_integral(x.norm()); }

/// Exact sign of p + q√m (m > 1 squarefree, so √m is irrational).
inline int sign_of(const Rational& p, const Rational& q, std::int64_t m) {
  const int sp = sgn(p);
  const int sq = sgn(q);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // Opposite signs: the larger of p² and q²m wins.
  return cmp(p * p, q * q * Rational(m)) > 0 ? sp : sq;
}

/// Exact three-way comparison of x and y as real numbers, across fields.
inline int compare(const QuadElem& x, const QuadElem& y) {
  if (x.d() == y.d()) return sign_of(x.a() - y.a(), x.b() - y.b(), x.d());
  // x - y = P + B√m + C√n
  const Rational P = x.a() - y.a();
  const Rational& B = x.b();
  const Rational C = -y.b();
  const std::int64_t m = x.d();
  const std::int64_t n = y.d();
  const int s1 = sign_of(P, B, m);
  const int s2 = sgn(C);
  if (s1 == 0) return s2;
  if (s2 == 0 || s1 == s2) return s1;
  // |P + B√m|² - C²n = (P² + B²m - C²n) + 2PB√m; nonzero since m ≠ n.
  const int t = sign_of(P * P + B * B * Rational(m) - C * C * Rational(n), 2 * P * B, m);
  return t > 0 ? s1 : s2;
}

struct FundamentalUnitResult {
  QuadElem unit;
  int norm_sign;  // N(unit) ∈ {+1, -1}
  Real log_value;
};

namespace detail {

/// Continued-fraction walk for ξ = (P0 + √d)/Q0 with Q0 | d - P0².
/// Visits (p_n, q_n) convergents in order; `visit` returns true to stop.
template <class Visit>
void walk_convergents(std::int64_t d, Integer P, Integer Q, Visit&& visit) {
  const Integer D = d;
  const Integer root = isqrt(D);
  Integer p_prev = 1, q_prev = 0, p_prev2 = 0, q_prev2 = 1;
  // The expansion is purely periodic from index 1 on; remember that state.
  Integer P1, Q1;
  int returns = 0;
  for (long n = 0;; ++n) {
    const Integer a = (P + root) / Q;  // Q > 0 throughout for these ξ
    const Integer p = a * p_prev + p_prev2;
    const Integer q = a * q_prev + q_prev2;
    if (visit(p, q)) return;
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
    P = a * Q - P;
    Q = (D - P * P) / Q;
    if (n == 0) {
      P1 = P;
      Q1 = Q;
    } else if (P == P1 && Q == Q1 && ++returns > 2) {
      throw std::logic_error("continued fraction period exhausted without a unit for d=" + std::to_string(d));
    }
  }
}

}  // namespace detail

/// Fundamental unit ε > 1 of the ring of integers of Q(√d).
///
/// Expands ξ = √d (d ≡ 2,3 mod 4) or ξ = (1+√d)/2 (d ≡ 1 mod 4) as a continued
/// fraction with exact integer recurrences. The first convergent p/q with
/// N(p - qξ) = ±1 gives ε = p - qξ̄. Every unit ε > 1 yields a convergent of ξ,
/// so the first hit is the generator.
inline FundamentalUnitResult fundamental_unit(std::int64_t d, mpfr_prec_t bits = Real::kDefaultBits) {
  if (d <= 1 || !is_squarefree(d)) throw DomainError("fundamental_unit: d must be squarefree and > 1, got " + std::to_string(d));
  const bool one_mod_four = d % 4 == 1;
  // ξ̄ as a + b√d.
  const Rational conj_a = one_mod_four ? Rational(1, 2) : Rational(0);
  const Rational conj_b = one_mod_four ? Rational(-1, 2) : Rational(-1);
  std::optional<QuadElem> found;
  detail::walk_convergents(d, one_mod_four ? Integer(1) : Integer(0), one_mod_four ? Integer(2) : Integer(1),
                           [&](const Integer& p, const Integer& q) {
                             if (q == 0) return false;
                             const QuadElem eps(d, Rational(p) - Rational(q) * conj_a, -Rational(q) * conj_b);
                             const Rational n = eps.norm();
                             if (n == 1 || n == -1) {
                               found = eps;
                               return true;
                             }
                             return false;
                           });
  const QuadElem& unit = *found;
  const Rational n = unit.norm();
  if (!is_quad_integer(unit) || (n != 1 && n != -1) || compare(unit, QuadElem::rational(d, 1)) <= 0)
    throw std::logic_error("fundamental unit verification failed for d=" + std::to_string(d));
  return FundamentalUnitResult{unit, n == 1 ? 1 : -1, log(unit.to_real(bits + 8)).with_precision(bits)};
}

/// Fundamental units of Q(√m) for squarefree 2 ≤ m ≤ bound, ascending by value.
inline std::vector<std::pair<std::int64_t, FundamentalUnitResult>> smallest_fundamental_units(
    std::int64_t bound, mpfr_prec_t bits = Real::kDefaultBits) {
  if (bound < 13) throw DomainError("smallest_fundamental_units: bound must be >= 13");
  std::vector<std::pair<std::int64_t, FundamentalUnitResult>> out;
  for (std::int64_t m = 2; m <= bound; ++m)
    if (is_squarefree(m)) out.emplace_back(m, fundamental_unit(m, bits));
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return compare(x.second.unit, y.second.unit) < 0; });
  return out;
}

}  // namespace unitlat
