#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unitlat/errors.hpp"
#include "unitlat/real.hpp"

namespace unitlat {

using Integer = mpz_class;
// mpq_class keeps itself canonical (gcd 1, positive denominator) after every
// arithmetic operation; construction from raw parts must call canonicalize().
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p/q" or "p" (optional sign on p).
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw DomainError("empty rational");
  const auto slash = s.find('/');
  Integer num;
  Integer den = 1;
  auto parse_int = [&](const std::string& part, Integer& out) {
    if (part.empty() || out.set_str(part, 10) != 0) throw DomainError("malformed rational: " + s);
  };
  if (slash == std::string::npos) {
    parse_int(s, num);
  } else {
    parse_int(s.substr(0, slash), num);
    parse_int(s.substr(slash + 1), den);
  }
  return make_rational(num, den);
}

/// Always "p/q", denominators of 1 included.
inline std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Integer isqrt(const Integer& n) {
  if (n < 0) throw DomainError("isqrt of negative");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_perfect_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

/// Trial division up to √|d|.
inline bool is_squarefree(std::int64_t d) {
  if (d == 0) return false;
  std::int64_t n = d < 0 ? -d : d;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    if (n % p == 0) n /= p;
  }
  return true;
}

/// Writes n = c² · m with m squarefree (sign carried by m); returns (m, c).
inline std::pair<Integer, Integer> squarefree_decomposition(Integer n) {
  if (n == 0) throw DomainError("squarefree part of zero");
  Integer sign = n < 0 ? -1 : 1;
  n = abs(n);
  Integer core = 1;
  Integer root = 1;
  for (Integer p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      root *= p;
    }
    if (n % p == 0) {
      n /= p;
      core *= p;
    }
  }
  core *= n;
  return {sign * core, root};
}

/// Continued-fraction rational reconstruction.
///
/// Walks the convergents of `x` and returns the first p/q with
/// |x - p/q| <= tol and q <= denom_bound. Returns nullopt when the
/// denominators exceed the bound first.
inline std::optional<Rational> reconstruct_rational(const Real& x, const Integer& denom_bound, const Real& tol) {
  const mpfr_prec_t bits = x.precision();
  Integer p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
  Integer p_prev2 = 0, q_prev2 = 1;  // p_{-2}, q_{-2}
  Real rest = x;
  for (int iter = 0; iter < 4 * static_cast<int>(bits) + 8; ++iter) {
    const Integer a = rest.floor_to_integer();
    const Integer p = a * p_prev + p_prev2;
    const Integer q = a * q_prev + q_prev2;
    if (q > denom_bound) return std::nullopt;
    const Rational candidate = make_rational(p, q);
    if (abs(x - Real(candidate, bits)) <= tol) return candidate;
    Real frac = rest - Real(a, bits);
    if (frac.is_zero()) return std::nullopt;
    rest = Real(1L, bits) / frac;
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
  }
  return std::nullopt;
}

/// Characteristic polynomial det(tI - M) of a square rational matrix via
/// Faddeev–LeVerrier. Coefficients are returned constant term first; the
/// leading coefficient is 1.
template <std::size_t N>
std::array<Rational, N + 1> characteristic_polynomial(const std::array<std::array<Rational, N>, N>& m) {
  using Matrix = std::array<std::array<Rational, N>, N>;
  std::array<Rational, N + 1> coeffs{};
  coeffs[N] = 1;
  Matrix aux{};  // M_k
  for (std::size_t i = 0; i < N; ++i) aux[i][i] = 1;
  for (std::size_t k = 1; k <= N; ++k) {
    // A·M_k
    Matrix prod{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        Rational acc = 0;
        for (std::size_t l = 0; l < N; ++l) acc += m[i][l] * aux[l][j];
        prod[i][j] = acc;
      }
    Rational trace = 0;
    for (std::size_t i = 0; i < N; ++i) trace += prod[i][i];
    const Rational c = -trace / Rational(static_cast<long>(k));
    coeffs[N - k] = c;
    aux = prod;
    for (std::size_t i = 0; i < N; ++i) aux[i][i] += c;
  }
  return coeffs;
}

}  // namespace unitlat
