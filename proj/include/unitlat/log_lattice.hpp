#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "unitlat/biquad.hpp"
#include "unitlat/cyclic_field.hpp"
#include "unitlat/errors.hpp"
#include "unitlat/real.hpp"

namespace unitlat {

/// Which Galois ordering indexes LOG coordinates: Klein (id, σ1, σ2, σ3) or
/// cyclic (id, σ, σ², σ³). The Λ² basis labels follow the same flag.
enum class Convention { klein, cyclic };

inline std::string to_string(Convention c) { return c == Convention::klein ? "klein" : "cyclic"; }

struct LogVector {
  std::array<Real, 4> coords;
  Convention convention = Convention::klein;

  mpfr_prec_t precision() const { return coords[0].precision(); }
  const Real& operator[](std::size_t g) const { return coords[g]; }

  friend LogVector operator+(const LogVector& a, const LogVector& b) {
    check_same(a, b);
    LogVector r = a;
    for (std::size_t g = 0; g < 4; ++g) r.coords[g] += b.coords[g];
    return r;
  }
  friend LogVector operator-(const LogVector& a, const LogVector& b) {
    check_same(a, b);
    LogVector r = a;
    for (std::size_t g = 0; g < 4; ++g) r.coords[g] -= b.coords[g];
    return r;
  }
  friend LogVector operator*(long k, const LogVector& a) {
    LogVector r = a;
    for (auto& c : r.coords) c *= k;
    return r;
  }

  Real two_norm_squared() const {
    Real acc(precision());
    for (const Real& c : coords) acc += c * c;
    return acc;
  }

 private:
  static void check_same(const LogVector& a, const LogVector& b) {
    if (a.convention != b.convention) throw DomainError("LOG vectors use different conventions");
  }
};

namespace detail {

inline LogVector log_of_embeddings(const std::array<Real, 4>& v, Convention conv, mpfr_prec_t bits) {
  LogVector out{{Real(bits), Real(bits), Real(bits), Real(bits)}, conv};
  Real sum(bits + 16);
  for (std::size_t g = 0; g < 4; ++g) {
    const Real l = log(abs(v[g]));
    sum += l;
    out.coords[g] = l.with_precision(bits);
  }
  // Product of the embeddings of a unit is ±1.
  if (abs(sum) > pow2_neg(static_cast<long>(bits) - 10, bits)) throw PrecisionError("LOG coordinates do not sum to zero");
  return out;
}

}  // namespace detail

/// LOG(x)_g = log|g(x)| for g in (id, σ1, σ2, σ3).
inline LogVector log_embed(const BiquadElem& x, mpfr_prec_t bits = Real::kDefaultBits) {
  if (!is_unit(x)) throw DomainError("log_embed: " + x.to_string() + " is not a unit");
  return detail::log_of_embeddings(embed_real(x, bits + 16), Convention::klein, bits);
}

/// LOG(x)_g = log|g(x)| for g in (id, σ, σ², σ³).
inline LogVector log_embed(const CyclicElem& x, mpfr_prec_t bits = Real::kDefaultBits) {
  if (!is_unit(x)) throw DomainError("log_embed: " + x.to_string() + " is not a unit");
  return detail::log_of_embeddings(embed_real(x, bits + 16), Convention::cyclic, bits);
}

/// Λ²R⁴ basis order as index pairs into the Galois ordering; identical for both
/// conventions, only the labels differ.
inline constexpr std::array<std::pair<int, int>, 6> kWedgePairs = {
    {{0, 1}, {2, 3}, {0, 3}, {1, 2}, {0, 2}, {1, 3}}};

inline std::array<std::string, 6> wedge_basis_labels(Convention c) {
  std::array<std::string, 6> out;
  for (std::size_t i = 0; i < 6; ++i) {
    const auto [g, h] = kWedgePairs[i];
    const auto name = [c](int k) {
      return c == Convention::klein ? klein_label(static_cast<KleinGalois>(k)) : cyclic_label(static_cast<CyclicGalois>(k));
    };
    out[i] = name(g) + "∧" + name(h);
  }
  return out;
}

struct Wedge2Vector {
  std::array<Real, 6> coords;
  Convention convention = Convention::klein;

  mpfr_prec_t precision() const { return coords[0].precision(); }
  const Real& operator[](std::size_t i) const { return coords[i]; }

  friend Wedge2Vector operator+(const Wedge2Vector& a, const Wedge2Vector& b) {
    Wedge2Vector r = a;
    for (std::size_t i = 0; i < 6; ++i) r.coords[i] += b.coords[i];
    return r;
  }
  friend Wedge2Vector operator*(long k, const Wedge2Vector& a) {
    Wedge2Vector r = a;
    for (auto& c : r.coords) c *= k;
    return r;
  }
};

inline Wedge2Vector wedge2(const LogVector& a, const LogVector& b) {
  if (a.convention != b.convention) throw DomainError("wedge2: LOG vectors use different conventions");
  const mpfr_prec_t bits = std::max(a.precision(), b.precision());
  Wedge2Vector w{{Real(bits), Real(bits), Real(bits), Real(bits), Real(bits), Real(bits)}, a.convention};
  for (std::size_t i = 0; i < 6; ++i) {
    const auto g = static_cast<std::size_t>(kWedgePairs[i].first);
    const auto h = static_cast<std::size_t>(kWedgePairs[i].second);
    w.coords[i] = a[g] * b[h] - a[h] * b[g];
  }
  return w;
}

inline Real one_norm(const Wedge2Vector& w) {
  Real acc(w.precision());
  for (const Real& c : w.coords) acc += abs(c);
  return acc;
}

inline Real two_norm(const Wedge2Vector& w) {
  Real acc(w.precision());
  for (const Real& c : w.coords) acc += c * c;
  return sqrt(acc);
}

inline Real dot(const Wedge2Vector& a, const Wedge2Vector& b) {
  Real acc(std::max(a.precision(), b.precision()));
  for (std::size_t i = 0; i < 6; ++i) acc += a[i] * b[i];
  return acc;
}

/// ||n1 (u2∧u3) + n2 (u1∧u3) + n3 (u1∧u2)||₁ for the Klein E-basis with
/// X1 = log u2 log u3, X2 = log u1 log u3, X3 = log u1 log u2.
template <class T>
T klein_norm_closed(long n1, long n2, long n3, const T& X1, const T& X2, const T& X3) {
  using std::abs;
  using std::max;
  const T a = abs(T(X1) * n1);
  const T b = abs(T(X2) * n2);
  const T c = abs(T(X3) * n3);
  return (max(b, c) + max(a, b) + max(a, c)) * 4L;
}

/// f(n1, n2, n3) = ||n1 (u_l∧u0) + n2 (u_l∧σu0) + n3 (u0∧σu0)||₁ where
/// LOG(u_l) = (W1, -W1, W1, -W1) and LOG(u0) = (W2, W3, -W2, -W3).
template <class T>
T cyclic_f(long n1, long n2, long n3, const T& W1, const T& W2, const T& W3) {
  using std::abs;
  using std::max;
  const T Y1 = W2 * W2 + W3 * W3;
  const T Y2 = W1 * W2 * 2L;
  const T Y3 = W1 * W3 * 2L;
  const T Y4 = W1 * W2 + W1 * W3;
  const T Y5 = W1 * W2 - W1 * W3;
  const T z = abs(Y1 * n3);
  return max(abs(Y4 * n1 - Y5 * n2), z) * 2L + max(abs(Y5 * n1 + Y4 * n2), z) * 2L + abs(-(Y2 * n1) - Y3 * n2) +
         abs(Y3 * n1 - Y2 * n2);
}

enum class Parity { none, even_sum };

inline std::string to_string(Parity p) { return p == Parity::none ? "none" : "n1+n2+n3 even"; }

/// The lattice (1/denominator)·{n1 b1 + n2 b2 + n3 b3 : n ∈ Z³, parity}.
struct LatticeSpec {
  std::array<Wedge2Vector, 3> basis;
  long denominator = 1;
  Parity parity = Parity::none;
};

struct MinOneNormResult {
  Real value;
  std::array<long, 3> argmin{};
  bool certified = false;
  long shells_searched = 0;
  Real lambda_min_lower;  // certified lower bound on the least Gram eigenvalue
  mpfr_prec_t precision = 0;
};

namespace detail {

using Gram = std::array<std::array<Real, 3>, 3>;

inline Real det3(const Gram& g) {
  return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
         g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

/// True when all leading principal minors of g - c·I are positive.
inline bool shifted_positive_definite(const Gram& g, const Real& c) {
  Gram s = g;
  for (std::size_t i = 0; i < 3; ++i) s[i][i] -= c;
  return s[0][0].sign() > 0 && (s[0][0] * s[1][1] - s[0][1] * s[1][0]).sign() > 0 && det3(s).sign() > 0;
}

/// Certified lower bound on λ_min(g): the Gershgorin bound, improved to just
/// below the floating-point eigenvalue estimate when Sylvester's criterion
/// confirms g - c·I is positive definite.
inline Real lambda_min_lower_bound(const Gram& g) {
  const mpfr_prec_t bits = g[0][0].precision();
  Real gersh = g[0][0] - abs(g[0][1]) - abs(g[0][2]);
  for (std::size_t i = 1; i < 3; ++i) {
    Real row = g[i][i];
    for (std::size_t j = 0; j < 3; ++j)
      if (j != i) row -= abs(g[i][j]);
    gersh = min(gersh, row);
  }
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].to_double();
  const double estimate = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
  Real best = max(gersh, Real(0L, bits));
  for (double shrink : {1e-9, 1e-6, 1e-3, 0.1}) {
    const Real c(estimate * (1.0 - shrink), bits);
    if (c <= best) break;
    if (shifted_positive_definite(g, c)) return c;
  }
  return best;
}

inline bool admissible(const std::array<long, 3>& n, Parity p) {
  return p == Parity::none || (n[0] + n[1] + n[2]) % 2 == 0;
}

}  // namespace detail

/// Minimal 1-norm over nonzero lattice vectors with coefficients in the box
/// max|n_i| ≤ coeff_bound, searched shell by shell (shell k: max|n_i| = k).
///
/// ||w||₁ ≥ ||w||₂ ≥ √λ_min·|n|₂/den ≥ √λ_min·k/den on shell k, so the search
/// stops once that bound exceeds the best value; the result is certified when
/// it also covers every shell beyond coeff_bound. Only one of ±n is visited
/// (first nonzero coefficient positive); ties go to the lexicographically
/// smallest n.
inline MinOneNormResult min_one_norm(const LatticeSpec& spec, long coeff_bound) {
  if (coeff_bound < 1) throw DomainError("min_one_norm: coeff_bound must be >= 1");
  if (spec.denominator < 1) throw DomainError("min_one_norm: denominator must be positive");
  const mpfr_prec_t bits = spec.basis[0].precision();
  detail::Gram g;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) g[i][j] = dot(spec.basis[i], spec.basis[j]);
  const Real margin = pow2_neg(static_cast<long>(bits) / 2, bits) * g[0][0] * g[1][1] * g[2][2];
  if (detail::det3(g) <= margin) throw DomainError("min_one_norm: lattice basis is dependent");

  const Real lambda = detail::lambda_min_lower_bound(g);
  const Real root_lambda = sqrt(lambda);
  const Real tie = pow2_neg(static_cast<long>(bits) / 2, bits);

  MinOneNormResult res{Real(bits), {0, 0, 0}, false, 0, lambda, bits};
  bool have = false;
  Wedge2Vector w = spec.basis[0];
  auto lower_bound = [&](long k) { return root_lambda * k / spec.denominator; };

  long k = 1;
  for (; k <= coeff_bound; ++k) {
    if (have && lower_bound(k) > res.value * (1L + tie)) break;
    res.shells_searched = k;
    for (long n1 = 0; n1 <= k; ++n1)
      for (long n2 = (n1 == 0 ? 0 : -k); n2 <= k; ++n2)
        for (long n3 = (n1 == 0 && n2 == 0 ? 1 : -k); n3 <= k; ++n3) {
          const std::array<long, 3> n{n1, n2, n3};
          if (std::max({std::labs(n1), std::labs(n2), std::labs(n3)}) != k) continue;
          if (!detail::admissible(n, spec.parity)) continue;
          for (std::size_t c = 0; c < 6; ++c)
            w.coords[c] = spec.basis[0][c] * n1 + spec.basis[1][c] * n2 + spec.basis[2][c] * n3;
          const Real value = one_norm(w) / spec.denominator;
          const bool better = !have || value < res.value * (1L - tie);
          const bool tied = have && !better && value <= res.value * (1L + tie) && n < res.argmin;
          if (better || tied) {
            if (better || value < res.value) res.value = value;
            res.argmin = n;
            have = true;
          }
        }
  }
  if (!have) throw DomainError("min_one_norm: no admissible coefficient vector in the box");
  // Stopped early, or the next shell beyond the box is already excluded.
  res.certified = k <= coeff_bound || lower_bound(coeff_bound + 1) >= res.value;
  if (lambda.sign() <= 0) res.certified = false;
  return res;
}

/// Runs min_one_norm on the lattice built at p and 2p bits; on disagreement
/// (relative 2^{-p/2} in value, or a different witness) retries at 4p and
/// compares with 2p, then gives up.
inline MinOneNormResult certified_min_one_norm(const std::function<LatticeSpec(mpfr_prec_t)>& build, long coeff_bound,
                                               mpfr_prec_t bits = Real::kDefaultBits) {
  const Real rel = pow2_neg(static_cast<long>(bits) / 2, bits);
  auto agree = [&](const MinOneNormResult& a, const MinOneNormResult& b) {
    return a.argmin == b.argmin && a.certified == b.certified && agree_relative(a.value, b.value, rel);
  };
  const MinOneNormResult low = min_one_norm(build(bits), coeff_bound);
  MinOneNormResult high = min_one_norm(build(2 * bits), coeff_bound);
  if (agree(low, high)) return high;
  MinOneNormResult higher = min_one_norm(build(4 * bits), coeff_bound);
  if (agree(high, higher)) return higher;
  throw PrecisionError("min_one_norm did not stabilise at " + std::to_string(4 * bits) + " bits");
}

/// |X+Y| + |X-Y| = 2 max{|X|, |Y|}, evaluated at `bits` and compared to
/// relative 2^{-bits+8}.
inline bool summax_check(double X, double Y, mpfr_prec_t bits = Real::kDefaultBits) {
  const Real x(X, bits), y(Y, bits);
  const Real lhs = abs(x + y) + abs(x - y);
  const Real rhs = max(abs(x), abs(y)) * 2L;
  const Real scale = max(max(abs(x), abs(y)), Real(1e-300, bits));
  return abs(lhs - rhs) <= scale * pow2_neg(static_cast<long>(bits) - 8, bits);
}

/// |mX+nY| + |nX-mY| ≥ |X| + |Y| for integers (m, n) ≠ (0, 0), up to
/// rounding of relative size 2^{-bits+8}.
inline bool absin_check(long m, long n, double X, double Y, mpfr_prec_t bits = Real::kDefaultBits) {
  if (m == 0 && n == 0) throw DomainError("absin_check: (m, n) must be nonzero");
  const Real x(X, bits), y(Y, bits);
  const Real lhs = abs(x * m + y * n) + abs(x * n - y * m);
  const Real rhs = abs(x) + abs(y);
  const Real slack = (abs(x) + abs(y)) * (std::labs(m) + std::labs(n)) * pow2_neg(static_cast<long>(bits) - 8, bits);
  return lhs >= rhs - slack;
}

}  // namespace unitlat
