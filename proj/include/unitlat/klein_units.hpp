#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unitlat/biquad.hpp"
#include "unitlat/errors.hpp"
#include "unitlat/log_lattice.hpp"
#include "unitlat/quad.hpp"

namespace unitlat {

struct SubfieldUnits {
  std::array<std::int64_t, 3> radicands;  // radicand of the field of units[i]
  std::array<QuadElem, 3> units;          // 1 < u1 < u2 < u3
  std::array<Real, 3> logs;
  std::array<int, 3> permutation;  // units[i] belongs to input slot permutation[i] of (d1, d2, d3)
};

/// Fundamental units of the three quadratic subfields of Q(√d1, √d2), sorted.
inline SubfieldUnits subfield_units(std::int64_t d1, std::int64_t d2, mpfr_prec_t bits = Real::kDefaultBits) {
  const BiquadField field(d1, d2);
  const std::array<std::int64_t, 3> ds{field.d1(), field.d2(), field.d3()};
  std::vector<FundamentalUnitResult> found;
  for (std::int64_t d : ds) found.push_back(fundamental_unit(d, bits));
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const int c = compare(found[static_cast<std::size_t>(a)].unit, found[static_cast<std::size_t>(b)].unit);
    if (c != 0) return c < 0;
    // Distinct fields cannot give equal units; keep a total order anyway.
    const auto& x = found[static_cast<std::size_t>(a)].unit;
    const auto& y = found[static_cast<std::size_t>(b)].unit;
    return x.a() != y.a() ? x.a() < y.a() : x.b() < y.b();
  });
  auto pick = [&](int i) { return found[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]; };
  return SubfieldUnits{{ds[static_cast<std::size_t>(order[0])], ds[static_cast<std::size_t>(order[1])],
                        ds[static_cast<std::size_t>(order[2])]},
                       {pick(0).unit, pick(1).unit, pick(2).unit},
                       {pick(0).log_value, pick(1).log_value, pick(2).log_value},
                       order};
}

using Exponents = std::array<int, 3>;

struct SqrtPattern {
  Exponents e;
  SqrtStatus status;
  std::optional<BiquadElem> root;  // √(u1^e1 u2^e2 u3^e3) when status == found
};

struct KleinUnitStructure {
  BiquadField field;  // built as Q(√r1, √r2) with r_i the radicand of u_i, so σ_i fixes u_i
  SubfieldUnits subfield;
  std::vector<SqrtPattern> patterns;  // all 7, in lexicographic order of e
  std::vector<Exponents> sqrt_patterns;
  std::vector<Exponents> unresolved_patterns;
  int index_over_E = 1;
  std::array<BiquadElem, 3> generators;
  // 2·(exponent vector of each generator over u1, u2, u3)
  std::array<Exponents, 3> generator_exponents_doubled;

  bool resolved() const { return unresolved_patterns.empty(); }

  /// Denominator of the bounding lattice (1/den)·Λ²LOG(E) ⊇ Λ²LOG(O_L^*).
  long wedge_denominator() const { return index_over_E == 1 ? 1 : (index_over_E == 2 ? 2 : 4); }

  const BiquadElem& lifted_unit(std::size_t i) const { return lifted[i]; }

  std::array<BiquadElem, 3> lifted;
};

struct SqrtSearch {
  mpfr_prec_t bits = 256;
  Integer denom_bound = Integer(1000000000);
  mpfr_prec_t escalated_bits = 512;
  Integer escalated_denom_bound = Integer("1000000000000000");
};

namespace detail {

/// Rank of binary vectors and a reduced basis whose pivots (last set bit) are distinct.
inline std::vector<int> f2_reduced_basis(const std::vector<int>& masks) {
  std::array<int, 3> by_pivot{0, 0, 0};
  for (int m : masks) {
    for (int bit = 2; bit >= 0 && m != 0; --bit) {
      if (!((m >> bit) & 1)) continue;
      if (by_pivot[static_cast<std::size_t>(bit)] == 0) {
        by_pivot[static_cast<std::size_t>(bit)] = m;
        m = 0;
      } else {
        m ^= by_pivot[static_cast<std::size_t>(bit)];
      }
    }
  }
  std::vector<int> basis;
  for (int bit = 0; bit < 3; ++bit)
    if (by_pivot[static_cast<std::size_t>(bit)] != 0) basis.push_back(by_pivot[static_cast<std::size_t>(bit)]);
  return basis;
}

inline int mask_of(const Exponents& e) { return e[0] | (e[1] << 1) | (e[2] << 2); }

inline Exponents exponents_of(int mask) { return {mask & 1, (mask >> 1) & 1, (mask >> 2) & 1}; }

}  // namespace detail

/// O_L^* modulo ±E for L = Q(√d1, √d2), E = <-1, u1, u2, u3>.
///
/// Since u² ∈ E for every unit u of L, O_L^*/E is detected by the square-root
/// tests on u1^e1 u2^e2 u3^e3 with e ∈ {0,1}³ \ {0} (and their negatives, which
/// are never totally positive together with the originals). Patterns that the
/// escalated search still cannot decide are recorded as unresolved.
inline KleinUnitStructure klein_unit_structure(std::int64_t d1, std::int64_t d2, const SqrtSearch& search = {},
                                               mpfr_prec_t bits = Real::kDefaultBits) {
  SubfieldUnits sub = subfield_units(d1, d2, bits);
  const BiquadField field(sub.radicands[0], sub.radicands[1]);
  if (field.d3() != sub.radicands[2]) throw std::logic_error("subfield radicands inconsistent");
  const std::array<BiquadElem, 3> lifted{BiquadElem::lift(field, sub.units[0]), BiquadElem::lift(field, sub.units[1]),
                                         BiquadElem::lift(field, sub.units[2])};

  std::vector<SqrtPattern> patterns;
  std::vector<int> found_masks;
  std::vector<Exponents> found, unresolved;
  // Lexicographic order of (e1, e2, e3).
  for (int lex = 1; lex < 8; ++lex) {
    const Exponents e{(lex >> 2) & 1, (lex >> 1) & 1, lex & 1};
    BiquadElem x = BiquadElem::rational(field, 1);
    for (std::size_t i = 0; i < 3; ++i)
      if (e[i]) x = x * lifted[i];
    SqrtOutcome out = sqrt_in_field(x, search.bits, search.denom_bound);
    if (out.status == SqrtStatus::inconclusive) out = sqrt_in_field(x, search.escalated_bits, search.escalated_denom_bound);
    // -x has the opposite sign at every embedding; x itself may be the one that is not totally positive.
    if (out.status == SqrtStatus::not_totally_positive) {
      SqrtOutcome neg = sqrt_in_field(-x, search.bits, search.denom_bound);
      if (neg.status == SqrtStatus::inconclusive)
        neg = sqrt_in_field(-x, search.escalated_bits, search.escalated_denom_bound);
      if (neg.status != SqrtStatus::not_totally_positive) out = neg;
    }
    if (out.status == SqrtStatus::found) {
      found.push_back(e);
      found_masks.push_back(detail::mask_of(e));
    } else if (out.status == SqrtStatus::inconclusive) {
      unresolved.push_back(e);
    }
    patterns.push_back(SqrtPattern{e, out.status, out.root});
  }

  const std::vector<int> basis = detail::f2_reduced_basis(found_masks);
  std::array<BiquadElem, 3> gens = lifted;
  std::array<Exponents, 3> exps{Exponents{2, 0, 0}, Exponents{0, 2, 0}, Exponents{0, 0, 2}};
  for (int b : basis) {
    const int pivot = b >= 4 ? 2 : (b >= 2 ? 1 : 0);
    const Exponents e = detail::exponents_of(b);
    const auto it = std::find_if(patterns.begin(), patterns.end(), [&](const SqrtPattern& p) { return p.e == e; });
    gens[static_cast<std::size_t>(pivot)] = *it->root;
    exps[static_cast<std::size_t>(pivot)] = e;
  }
  for (auto& g : gens)
    if (!is_unit(g)) throw std::logic_error("generator failed the unit check: " + g.to_string());

  KleinUnitStructure ks{field, sub, patterns, found, unresolved, 1 << basis.size(), gens, exps, lifted};
  return ks;
}

/// Exponents m with x = ±u1^m1 u2^m2 u3^m3, if they exist. The Klein LOG
/// vectors of u1, u2, u3 are orthogonal, which gives m by projection; the
/// candidate is then verified exactly.
inline std::optional<std::array<long, 3>> solve_in_E(const BiquadElem& x, const KleinUnitStructure& ks,
                                                     mpfr_prec_t bits = Real::kDefaultBits) {
  if (!is_unit(x)) return std::nullopt;
  const LogVector lx = log_embed(x, bits);
  std::array<long, 3> m{};
  for (std::size_t i = 0; i < 3; ++i) {
    const LogVector li = log_embed(ks.lifted[i], bits);
    Real num(bits);
    for (std::size_t g = 0; g < 4; ++g) num += lx[g] * li[g];
    const Real q = num / li.two_norm_squared();
    const Integer r = q.round_to_integer();
    if (!r.fits_slong_p() || abs(q - Real(r, bits)) > Real(1e-6, bits)) return std::nullopt;
    m[i] = r.get_si();
  }
  BiquadElem y = BiquadElem::rational(ks.field, 1);
  for (std::size_t i = 0; i < 3; ++i) y = y * ks.lifted[i].pow(m[i]);
  if (y == x || y == -x) return m;
  return std::nullopt;
}

/// g² ∈ E for every generator, by exact exponent solving.
inline bool generators_square_into_E(const KleinUnitStructure& ks, mpfr_prec_t bits = Real::kDefaultBits) {
  for (const BiquadElem& g : ks.generators)
    if (!solve_in_E(g * g, ks, bits)) return false;
  return true;
}

/// |det| of the 3×3 LOG matrix of u1, u2, u3 (coordinates id, σ1, σ2) and
/// whether it clears 2^{-p/2}.
inline std::pair<Real, bool> subfield_units_independent(const KleinUnitStructure& ks,
                                                        mpfr_prec_t bits = Real::kDefaultBits) {
  std::array<std::array<Real, 3>, 3> m;
  for (std::size_t i = 0; i < 3; ++i) {
    const LogVector l = log_embed(ks.lifted[i], bits);
    for (std::size_t g = 0; g < 3; ++g) m[i][g] = l[g];
  }
  const Real det = abs(detail::det3(m));
  return {det, det > pow2_neg(static_cast<long>(bits) / 2, bits)};
}

/// E-wedge basis (u2∧u3, u1∧u3, u1∧u2) at `bits`.
inline std::array<Wedge2Vector, 3> klein_E_wedges(const KleinUnitStructure& ks, mpfr_prec_t bits) {
  const LogVector l1 = log_embed(ks.lifted[0], bits);
  const LogVector l2 = log_embed(ks.lifted[1], bits);
  const LogVector l3 = log_embed(ks.lifted[2], bits);
  return {wedge2(l2, l3), wedge2(l1, l3), wedge2(l1, l2)};
}

/// (1/den)·Λ²LOG(E) with den from the unit index; contains Λ²LOG(O_L^*).
inline LatticeSpec klein_bounding_lattice(const KleinUnitStructure& ks, mpfr_prec_t bits) {
  if (!ks.resolved()) throw UnresolvedError("unresolved square-root pattern for Q(√" + std::to_string(ks.field.d1()) +
                                            ", √" + std::to_string(ks.field.d2()) + ")");
  return LatticeSpec{klein_E_wedges(ks, bits), ks.wedge_denominator(), Parity::none};
}

/// Λ²LOG(O_L^*) itself, spanned by the pairwise wedges of the generators.
inline LatticeSpec klein_unit_lattice(const KleinUnitStructure& ks, mpfr_prec_t bits) {
  if (!ks.resolved()) throw UnresolvedError("unresolved square-root pattern for Q(√" + std::to_string(ks.field.d1()) +
                                            ", √" + std::to_string(ks.field.d2()) + ")");
  const LogVector g1 = log_embed(ks.generators[0], bits);
  const LogVector g2 = log_embed(ks.generators[1], bits);
  const LogVector g3 = log_embed(ks.generators[2], bits);
  return LatticeSpec{{wedge2(g2, g3), wedge2(g1, g3), wedge2(g1, g2)}, 1, Parity::none};
}

}  // namespace unitlat
