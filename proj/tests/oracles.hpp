#pragma once

// Reference computations written without the library: plain integer and
// long double arithmetic only. Tests compare library output against these.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>

namespace oracle {

using i128 = __int128;

inline std::int64_t isqrt_floor(i128 n) {
  if (n < 0) return -1;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Fundamental unit (x + y√d)/2 of Q(√d) by scanning y upward.
/// For d ≡ 1 mod 4 the half-integral units come from x² - d y² = ±4;
/// otherwise x, y are integers with x² - d y² = ±1 (stored doubled).
struct PellUnit {
  std::int64_t x2;  // 2·a
  std::int64_t y2;  // 2·b
};

inline std::optional<PellUnit> pell_brute_force(std::int64_t d, std::int64_t y_limit = 2000000) {
  const bool one_mod_four = d % 4 == 1;
  for (std::int64_t y = 1; y <= y_limit; ++y) {
    const i128 dy2 = static_cast<i128>(d) * y * y;
    for (int rhs : {-1, 1}) {
      const i128 target = one_mod_four ? dy2 + 4 * rhs : dy2 + rhs;
      const std::int64_t x = isqrt_floor(target);
      if (x > 0 && static_cast<i128>(x) * x == target) {
        if (one_mod_four) return PellUnit{x, y};
        return PellUnit{2 * x, 2 * y};
      }
    }
  }
  return std::nullopt;
}

inline long double unit_log(std::int64_t d, const PellUnit& u) {
  return std::log((static_cast<long double>(u.x2) + static_cast<long double>(u.y2) * std::sqrt(static_cast<long double>(d))) /
                  2.0L);
}

/// Plain sum of |c| over the six Plücker coordinates a_i b_j - a_j b_i for the
/// pairs (0,1), (2,3), (0,3), (1,2), (0,2), (1,3). The 1-norm does not depend
/// on the pair order, only on covering each unordered pair once.
inline long double plucker_one_norm(const std::array<long double, 4>& a, const std::array<long double, 4>& b) {
  long double s = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) s += std::fabs(a[i] * b[j] - a[j] * b[i]);
  return s;
}

using Vec6 = std::array<long double, 6>;

inline Vec6 plucker(const std::array<long double, 4>& a, const std::array<long double, 4>& b) {
  Vec6 w{};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) w[k++] = a[i] * b[j] - a[j] * b[i];
  return w;
}

/// LOG of a lifted unit of Q(√d_k) in Q(√d1, √d2) ordered (id, σ1, σ2, σ3)
/// where σ_k fixes √d_k: the coordinate is +log ε where the automorphism
/// fixes √d_k and -log ε elsewhere (|ε'| = 1/ε).
inline std::array<long double, 4> klein_log(int k, long double l) {
  // Which automorphisms fix √d_k (k = 1, 2, 3): id always, σ_k only.
  std::array<long double, 4> v{};
  for (int g = 0; g < 4; ++g) v[g] = (g == 0 || g == k) ? l : -l;
  return v;
}

struct MinResult {
  long double value = std::numeric_limits<long double>::infinity();
  std::array<long, 3> argmin{};
};

/// min over 0 ≠ n ∈ [-B, B]³ (optionally n1+n2+n3 even) of ||Σ n_i b_i||₁ / den.
inline MinResult exhaustive_min(const std::array<Vec6, 3>& basis, long B, long den, bool even_sum = false) {
  MinResult best;
  for (long n1 = -B; n1 <= B; ++n1)
    for (long n2 = -B; n2 <= B; ++n2)
      for (long n3 = -B; n3 <= B; ++n3) {
        if (n1 == 0 && n2 == 0 && n3 == 0) continue;
        if (even_sum && ((n1 + n2 + n3) % 2 != 0)) continue;
        long double s = 0;
        for (int c = 0; c < 6; ++c) s += std::fabs(n1 * basis[0][c] + n2 * basis[1][c] + n3 * basis[2][c]);
        s /= static_cast<long double>(den);
        if (s < best.value) best = {s, {n1, n2, n3}};
      }
  return best;
}

/// Bounding lattice (1/den)·span{LOG u_i ∧ LOG u_j} of a Klein field from the
/// three quadratic unit logs, each attached to its fixing automorphism.
inline MinResult klein_min(const std::array<long double, 3>& logs, long den, long B) {
  const auto a = klein_log(1, logs[0]);
  const auto b = klein_log(2, logs[1]);
  const auto c = klein_log(3, logs[2]);
  return exhaustive_min({plucker(b, c), plucker(a, c), plucker(a, b)}, B, den);
}

/// Squarefree test by trial division.
inline bool squarefree(std::int64_t n) {
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return n > 1;
}

inline std::int64_t squarefree_part(std::int64_t n) {
  for (std::int64_t p = 2; p * p <= n; ++p)
    while (n % (p * p) == 0) n /= p * p;
  return n;
}

}  // namespace oracle
