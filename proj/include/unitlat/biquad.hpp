#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>

#include "unitlat/errors.hpp"
#include "unitlat/quad.hpp"
#include "unitlat/rational.hpp"
#include "unitlat/real.hpp"

namespace unitlat {

/// L = Q(√d1, √d2) with rational basis {1, √d1, √d2, √d3}, where d3 is the
/// squarefree part of d1·d2 and √d1·√d2 = s·√d3.
class BiquadField {
 public:
  BiquadField(std::int64_t d1, std::int64_t d2) : d1_(d1), d2_(d2) {
    if (d1 <= 1 || d2 <= 1 || !is_squarefree(d1) || !is_squarefree(d2))
      throw DomainError("biquadratic field needs squarefree d1, d2 > 1");
    if (d1 == d2) throw DomainError("biquadratic field needs d1 != d2");
    const std::int64_t g = std::gcd(d1, d2);
    s_ = g;
    d3_ = (d1 / g) * (d2 / g);
  }

  std::int64_t d1() const { return d1_; }
  std::int64_t d2() const { return d2_; }
  std::int64_t d3() const { return d3_; }
  std::int64_t s() const { return s_; }

  /// Radicand of basis element k (k = 0 is the constant 1).
  std::int64_t radicand(int k) const {
    switch (k) {
      case 0: return 1;
      case 1: return d1_;
      case 2: return d2_;
      default: return d3_;
    }
  }

  /// Basis index whose radicand is d, or -1.
  int index_of(std::int64_t d) const {
    if (d == d1_) return 1;
    if (d == d2_) return 2;
    if (d == d3_) return 3;
    return -1;
  }

  friend bool operator==(const BiquadField& a, const BiquadField& b) { return a.d1_ == b.d1_ && a.d2_ == b.d2_; }

 private:
  std::int64_t d1_;
  std::int64_t d2_;
  std::int64_t d3_ = 0;
  std::int64_t s_ = 1;
};

/// Gal(L/Q) ≅ Z/2 × Z/2; σ_i fixes Q(√d_i). Ordered id, σ1, σ2, σ3.
enum class KleinGalois : int { id = 0, sigma1 = 1, sigma2 = 2, sigma3 = 3 };

inline constexpr std::array<KleinGalois, 4> kKleinOrder = {KleinGalois::id, KleinGalois::sigma1, KleinGalois::sigma2,
                                                           KleinGalois::sigma3};

/// Sign picked up by basis element k (0..3) under g.
constexpr int klein_sign(KleinGalois g, int k) {
  // σ1 flips √d2, √d3; σ2 flips √d1, √d3; σ3 flips √d1, √d2.
  constexpr int table[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  return table[static_cast<int>(g)][k];
}

constexpr KleinGalois klein_compose(KleinGalois g, KleinGalois h) {
  // The group is {0,1,2,3} under xor with σ1=1, σ2=2, σ3=3.
  return static_cast<KleinGalois>(static_cast<int>(g) ^ static_cast<int>(h));
}

inline std::string klein_label(KleinGalois g) {
  constexpr const char* names[] = {"id", "σ1", "σ2", "σ3"};
  return names[static_cast<int>(g)];
}

class BiquadElem {
 public:
  using Coords = std::array<Rational, 4>;

  BiquadElem(BiquadField field, Coords coords) : field_(std::move(field)), c_(std::move(coords)) {
    for (Rational& q : c_) q.canonicalize();
  }

  static BiquadElem rational(const BiquadField& f, Rational q) { return BiquadElem(f, {std::move(q), 0, 0, 0}); }

  /// Image of a + b√d under Q(√d) ⊂ L, d ∈ {d1, d2, d3}.
  static BiquadElem lift(const BiquadField& f, const QuadElem& q) {
    const int k = f.index_of(q.d());
    if (k < 0) throw DomainError("Q(√" + std::to_string(q.d()) + ") is not a subfield of this biquadratic field");
    Coords c{q.a(), 0, 0, 0};
    c[static_cast<std::size_t>(k)] = q.b();
    return BiquadElem(f, c);
  }

  const BiquadField& field() const { return field_; }
  const Coords& coords() const { return c_; }
  const Rational& operator[](std::size_t k) const { return c_[k]; }

  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

  friend bool operator==(const BiquadElem& x, const BiquadElem& y) { return x.field_ == y.field_ && x.c_ == y.c_; }

  BiquadElem operator-() const { return BiquadElem(field_, {-c_[0], -c_[1], -c_[2], -c_[3]}); }

  friend BiquadElem operator+(const BiquadElem& x, const BiquadElem& y) {
    check_same(x, y);
    Coords r;
    for (std::size_t k = 0; k < 4; ++k) r[k] = x.c_[k] + y.c_[k];
    return BiquadElem(x.field_, r);
  }

  friend BiquadElem operator-(const BiquadElem& x, const BiquadElem& y) { return x + (-y); }

  friend BiquadElem operator*(const BiquadElem& x, const BiquadElem& y) {
    check_same(x, y);
    const BiquadField& f = x.field_;
    const Rational d1 = f.d1(), d2 = f.d2(), d3 = f.d3(), s = f.s();
    const Coords& a = x.c_;
    const Coords& b = y.c_;
    // e1e2 = s e3, e1e3 = (d1/s) e2, e2e3 = (d2/s) e1
    return BiquadElem(f, {a[0] * b[0] + d1 * a[1] * b[1] + d2 * a[2] * b[2] + d3 * a[3] * b[3],
                          a[0] * b[1] + a[1] * b[0] + (d2 / s) * (a[2] * b[3] + a[3] * b[2]),
                          a[0] * b[2] + a[2] * b[0] + (d1 / s) * (a[1] * b[3] + a[3] * b[1]),
                          a[0] * b[3] + a[3] * b[0] + s * (a[1] * b[2] + a[2] * b[1])});
  }

  friend BiquadElem operator*(const Rational& q, const BiquadElem& x) {
    return BiquadElem(x.field_, {q * x.c_[0], q * x.c_[1], q * x.c_[2], q * x.c_[3]});
  }

  BiquadElem apply(KleinGalois g) const {
    Coords r;
    for (int k = 0; k < 4; ++k) r[static_cast<std::size_t>(k)] = klein_sign(g, k) * c_[static_cast<std::size_t>(k)];
    return BiquadElem(field_, r);
  }

  Rational norm_to_Q() const {
    const BiquadElem p = *this * apply(KleinGalois::sigma1) * apply(KleinGalois::sigma2) * apply(KleinGalois::sigma3);
    if (!p.is_rational()) throw std::logic_error("norm did not land in Q");
    return p.c_[0];
  }

  BiquadElem inverse() const {
    if (is_zero()) throw DomainError("inverse of zero in biquadratic field");
    const BiquadElem others = apply(KleinGalois::sigma1) * apply(KleinGalois::sigma2) * apply(KleinGalois::sigma3);
    const Rational n = (*this * others).c_[0];
    return Rational(1) / n * others;
  }

  /// x^e for any integer e (negative powers need x ≠ 0).
  BiquadElem pow(long e) const {
    BiquadElem base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    BiquadElem result = rational(field_, 1);
    while (k != 0) {
      if (k & 1UL) result = result * base;
      base = base * base;
      k >>= 1U;
    }
    return result;
  }

  /// Matrix of y ↦ x·y on the rational basis (column j = coords of x·e_j).
  std::array<std::array<Rational, 4>, 4> multiplication_matrix() const {
    std::array<std::array<Rational, 4>, 4> m{};
    for (std::size_t j = 0; j < 4; ++j) {
      Coords e{0, 0, 0, 0};
      e[j] = 1;
      const BiquadElem col = *this * BiquadElem(field_, e);
      for (std::size_t i = 0; i < 4; ++i) m[i][j] = col.c_[i];
    }
    return m;
  }

  std::array<Rational, 5> characteristic_polynomial() const {
    return unitlat::characteristic_polynomial<4>(multiplication_matrix());
  }

  std::string to_string() const {
    static const char* names[] = {"", "√", "√", "√"};
    std::string out;
    for (int k = 0; k < 4; ++k) {
      const Rational& q = c_[static_cast<std::size_t>(k)];
      if (q == 0) continue;
      std::string term = q.get_str();
      if (k > 0) term = (q == 1 ? "" : (q == -1 ? "-" : "(" + term + ")")) + names[k] + std::to_string(field_.radicand(k));
      if (!out.empty() && term.front() != '-') out += "+";
      out += term;
    }
    return out.empty() ? "0" : out;
  }

 private:
  static void check_same(const BiquadElem& x, const BiquadElem& y) {
    if (!(x.field_ == y.field_)) throw DomainError("elements of different biquadratic fields");
  }

  BiquadField field_;
  Coords c_;
};

inline BiquadElem biq_mul(const BiquadElem& x, const BiquadElem& y) { return x * y; }
inline BiquadElem biq_inv(const BiquadElem& x) { return x.inverse(); }
inline Rational biq_norm_to_Q(const BiquadElem& x) { return x.norm_to_Q(); }
inline BiquadElem galois_apply(KleinGalois g, const BiquadElem& x) { return x.apply(g); }

/// Integral iff the characteristic polynomial of multiplication by x has
/// integer coefficients.
inline bool is_algebraic_integer(const BiquadElem& x) {
  for (const Rational& c : x.characteristic_polynomial())
    if (!is_integral(c)) return false;
  return true;
}

inline bool is_unit(const BiquadElem& x) {
  if (!is_algebraic_integer(x)) return false;
  const Rational n = x.norm_to_Q();
  return n == 1 || n == -1;
}

/// The four real embeddings (id, σ1, σ2, σ3) of x, √d > 0 throughout.
inline std::array<Real, 4> embed_real(const BiquadElem& x, mpfr_prec_t bits) {
  if (bits < 64) throw DomainError("embed_real: precision_bits must be >= 64");
  std::array<Real, 4> out{Real(bits), Real(bits), Real(bits), Real(bits)};
  if (x.is_zero()) return out;
  long mag = -(1L << 30);
  for (int k = 0; k < 4; ++k) {
    const Rational& c = x[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    mag = std::max(mag, Real(c, 64).exponent2() + sqrt(Real(x.field().radicand(k), 64)).exponent2());
  }
  mag += 2;
  for (KleinGalois g : kKleinOrder) {
    out[static_cast<std::size_t>(g)] = detail::evaluate_with_cancellation(bits, mag, [&](mpfr_prec_t work) {
      Real v(work);
      for (int k = 0; k < 4; ++k) {
        const Rational& c = x[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        Real term = Real(c, work) * sqrt(Real(x.field().radicand(k), work));
        if (klein_sign(g, k) < 0)
          v -= term;
        else
          v += term;
      }
      return v;
    });
  }
  return out;
}

enum class SqrtStatus {
  found,
  not_totally_positive,  // some embedding negative: no square root in a real field
  no_root,               // every sign pattern excluded with certified precision
  inconclusive,          // search bounds too small to decide
};

inline std::string to_string(SqrtStatus s) {
  switch (s) {
    case SqrtStatus::found: return "found";
    case SqrtStatus::not_totally_positive: return "not totally positive";
    case SqrtStatus::no_root: return "no root";
    default: return "not found at this search bound";
  }
}

struct SqrtOutcome {
  SqrtStatus status;
  std::optional<BiquadElem> root;
};

/// Square root of x in L, chosen with positive identity embedding.
///
/// Each of the 8 sign patterns for the embeddings of a root is solved against
/// the (orthogonal) embedding matrix of the basis, each coordinate is
/// rationally reconstructed with denominator ≤ denom_bound, and the candidate
/// is kept only if β·β == x holds exactly.
///
/// For integral x a root β is integral, and then 4·d_k·β_k = Tr(β√d_k) ∈ Z.
/// When the working precision separates every such rational, failure on all
/// patterns certifies that no root exists (status no_root).
inline SqrtOutcome sqrt_in_field(const BiquadElem& x, mpfr_prec_t bits = 256,
                                 const Integer& denom_bound = Integer(1000000000)) {
  if (x.is_zero()) throw DomainError("sqrt_in_field: x must have nonzero embeddings");
  const std::array<Real, 4> v = embed_real(x, bits);
  for (const Real& e : v)
    if (e.sign() < 0) return {SqrtStatus::not_totally_positive, std::nullopt};

  const BiquadField& f = x.field();
  std::array<Real, 4> roots{sqrt(v[0]), sqrt(v[1]), sqrt(v[2]), sqrt(v[3])};
  std::array<Real, 4> sqrt_radicand;
  for (int k = 0; k < 4; ++k) sqrt_radicand[static_cast<std::size_t>(k)] = sqrt(Real(f.radicand(k), bits));

  Real magnitude(bits);
  for (const Real& r : roots) magnitude += r;
  const Real err = magnitude * pow2_neg(static_cast<long>(bits) - 8, bits);
  const Real tol = max(err * pow2_neg(-16, bits), pow2_neg(static_cast<long>(bits) - 8, bits));

  std::int64_t max_radicand = std::max({f.d1(), f.d2(), f.d3()});
  const Integer cert_denominator = Integer(4) * Integer(static_cast<long>(max_radicand));
  const Real separation = Real(1L, bits) / (Real(cert_denominator, bits) * Real(cert_denominator, bits) * 4L);
  const bool certifiable = is_algebraic_integer(x) && denom_bound >= cert_denominator && tol * 4L < separation;

  for (int pattern = 0; pattern < 8; ++pattern) {
    std::array<Real, 4> b = roots;
    for (int g = 1; g < 4; ++g)
      if ((pattern >> (g - 1)) & 1) b[static_cast<std::size_t>(g)] = -b[static_cast<std::size_t>(g)];
    BiquadElem::Coords coords;
    bool reconstructed = true;
    for (int k = 0; k < 4 && reconstructed; ++k) {
      Real acc(bits);
      for (KleinGalois g : kKleinOrder) {
        if (klein_sign(g, k) < 0)
          acc -= b[static_cast<std::size_t>(g)];
        else
          acc += b[static_cast<std::size_t>(g)];
      }
      acc /= sqrt_radicand[static_cast<std::size_t>(k)] * 4L;
      auto q = reconstruct_rational(acc, denom_bound, tol);
      if (!q) {
        reconstructed = false;
        break;
      }
      coords[static_cast<std::size_t>(k)] = *q;
    }
    if (!reconstructed) continue;
    BiquadElem beta(f, coords);
    if (beta * beta == x) return {SqrtStatus::found, beta};
  }
  return {certifiable ? SqrtStatus::no_root : SqrtStatus::inconclusive, std::nullopt};
}

}  // namespace unitlat
