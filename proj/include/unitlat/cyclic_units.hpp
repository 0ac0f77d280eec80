#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unitlat/cyclic_field.hpp"
#include "unitlat/errors.hpp"
#include "unitlat/log_lattice.hpp"
#include "unitlat/quad.hpp"

namespace unitlat {

/// A cyclic quartic field with claimed unit generators. Elements are power-basis
/// coordinates in a root θ of the defining polynomial.
struct CyclicCatalogEntry {
  std::string label;
  Quartic polynomial;
  std::int64_t quad_subfield_d = 0;
  QuadElem u_l{2, 1, 1};
  PowerCoords u0{};
  std::optional<PowerCoords> u_star;
  int Q_index = 1;
};

namespace relation {
inline const std::string kCyclicField = "defining polynomial generates a cyclic quartic field";
inline const std::string kSubfield = "l = Q(√d)";
inline const std::string kFundamental = "u_l is the fundamental unit of l";
inline const std::string kQIndex = "Q ∈ {1, 2}";
inline const std::string kU0Unit = "u0 ∈ O_L^*";
inline const std::string kU0NotTrivial = "u0 ≠ ±1";
inline const std::string kRelativeNorm = "N_{L/l}(u0) = ±1";
inline const std::string kSigma2 = "σ²(u0) = ±1/u0";
inline const std::string kStarPresent = "u_* present exactly when Q = 2";
inline const std::string kStarUnit = "u_* ∈ O_L^*";
inline const std::string kStarNorm = "N_{L/l}(u_*) = u_*σ²(u_*) = ±u_l";
inline const std::string kStarSigma = "u_*σ(u_*) = ±u_0";
inline const std::string kStarSquare = "u_*² = ±u_l u_0/σ(u_0)";
inline const std::string kRegulator = "regulator cross-check";
}  // namespace relation

struct RelationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct HasseReport {
  std::string label;
  std::vector<RelationCheck> checks;
  std::shared_ptr<const CyclicQuarticField> field;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.passed; });
  }
  const RelationCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

namespace detail {

inline bool is_plus_minus(const CyclicElem& x, const CyclicElem& y) { return x == y || x == -y; }

inline bool is_plus_minus_one(const CyclicElem& x) {
  return x.is_rational() && (x[0] == 1 || x[0] == -1);
}

}  // namespace detail

/// Units of Z[θ] with power-basis coordinates in [-h, h], excluding ±1,
/// sorted by ||LOG||₂ and then by coordinates.
inline std::vector<CyclicElem> search_units(const std::shared_ptr<const CyclicQuarticField>& field, long height_bound,
                                            mpfr_prec_t bits = Real::kDefaultBits) {
  if (height_bound < 0) throw DomainError("search_units: height_bound must be >= 0");
  std::vector<std::pair<Real, CyclicElem>> hits;
  const long h = height_bound;
  for (long a = -h; a <= h; ++a)
    for (long b = -h; b <= h; ++b)
      for (long c = -h; c <= h; ++c)
        for (long e = -h; e <= h; ++e) {
          const CyclicElem x(field, {a, b, c, e});
          if (x.is_zero() || detail::is_plus_minus_one(x)) continue;
          const Rational n = x.norm_to_Q();
          if (n != 1 && n != -1) continue;
          hits.emplace_back(log_embed(x, bits).two_norm_squared(), x);
        }
  std::stable_sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second.coords() < y.second.coords();
  });
  std::vector<CyclicElem> out;
  for (auto& [_, x] : hits) out.push_back(x);
  return out;
}

/// Relative units (N_{L/l} = ±1) among the units of height ≤ height_bound.
/// Such a unit is independent from u_l: a power u_l^k has N_{L/l} = u_l^{2k}.
inline std::vector<CyclicElem> search_relative_units(const std::shared_ptr<const CyclicQuarticField>& field,
                                                     long height_bound, mpfr_prec_t bits = Real::kDefaultBits) {
  if (height_bound < 1) return {};
  std::vector<CyclicElem> out;
  for (const CyclicElem& x : search_units(field, height_bound, bits))
    if (detail::is_plus_minus_one(x.norm_to_l())) out.push_back(x);
  return out;
}

/// Coefficients of LOG(x) over LOG of three generators, solved numerically.
inline std::optional<std::array<Real, 3>> log_coordinates(const LogVector& x, const std::array<LogVector, 3>& gens) {
  // Least squares on the first three coordinates suffices: LOG lies in the sum-zero hyperplane.
  const mpfr_prec_t bits = x.precision();
  std::array<std::array<Real, 4>, 3> m;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) m[r][c] = gens[c][r];
    m[r][3] = x[r];
  }
  for (std::size_t col = 0; col < 3; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < 3; ++r)
      if (abs(m[r][col]) > abs(m[pivot][col])) pivot = r;
    std::swap(m[col], m[pivot]);
    if (abs(m[col][col]) < pow2_neg(static_cast<long>(bits) / 2, bits)) return std::nullopt;
    for (std::size_t r = 0; r < 3; ++r) {
      if (r == col) continue;
      const Real f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < 4; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return std::array<Real, 3>{m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

/// Generators of O_L^* modulo ±1 as claimed by a verified entry:
/// Q = 1 → {u_l, u0, σ(u0)}, Q = 2 → {u_l, u0, u_*}.
inline std::array<CyclicElem, 3> entry_generators(const CyclicCatalogEntry& e,
                                                  const std::shared_ptr<const CyclicQuarticField>& field) {
  const CyclicElem ul = CyclicElem::lift(field, e.u_l);
  const CyclicElem u0(field, e.u0);
  if (e.Q_index == 2) {
    if (!e.u_star) throw ValidationError(relation::kStarPresent, "Q = 2 without u_*");
    return {ul, u0, CyclicElem(field, *e.u_star)};
  }
  return {ul, u0, u0.apply(CyclicGalois::sigma)};
}

/// Exact Hasse relations for a catalog entry, one check per relation; never
/// throws for a failed relation (see verify_hasse_relations).
inline HasseReport check_hasse_relations(const CyclicCatalogEntry& e, long regulator_height = 2,
                                         mpfr_prec_t bits = Real::kDefaultBits) {
  HasseReport rep{e.label, {}, nullptr};
  auto add = [&](const std::string& name, bool ok, std::string detail = {}) {
    rep.checks.push_back({name, ok, std::move(detail)});
    return ok;
  };
  try {
    rep.field = CyclicQuarticField::create(e.polynomial);
  } catch (const DomainError& err) {
    add(relation::kCyclicField, false, err.what());
    return rep;
  }
  add(relation::kCyclicField, true);
  const auto& field = rep.field;
  if (!add(relation::kSubfield, field->quadratic_subfield_d() == e.quad_subfield_d && e.u_l.d() == e.quad_subfield_d,
           "computed d = " + std::to_string(field->quadratic_subfield_d())))
    return rep;
  add(relation::kFundamental, fundamental_unit(e.quad_subfield_d, bits).unit == e.u_l, e.u_l.to_string());
  if (!add(relation::kQIndex, e.Q_index == 1 || e.Q_index == 2, "Q = " + std::to_string(e.Q_index))) return rep;

  const CyclicElem ul = CyclicElem::lift(field, e.u_l);
  const CyclicElem u0(field, e.u0);
  const bool u0_unit = add(relation::kU0Unit, is_unit(u0), u0.to_string());
  add(relation::kU0NotTrivial, !detail::is_plus_minus_one(u0));
  const CyclicElem n0 = u0.norm_to_l();
  add(relation::kRelativeNorm, detail::is_plus_minus_one(n0), "N_{L/l}(u0) = " + n0.to_string());
  if (!u0.is_zero()) add(relation::kSigma2, detail::is_plus_minus(u0.apply(CyclicGalois::sigma2), u0.inverse()));

  const bool star_ok = add(relation::kStarPresent, e.u_star.has_value() == (e.Q_index == 2));
  if (e.Q_index == 2 && e.u_star) {
    const CyclicElem us(field, *e.u_star);
    add(relation::kStarUnit, is_unit(us), us.to_string());
    add(relation::kStarNorm, detail::is_plus_minus(us.norm_to_l(), ul), "N_{L/l}(u_*) = " + us.norm_to_l().to_string());
    add(relation::kStarSigma, detail::is_plus_minus(us * us.apply(CyclicGalois::sigma), u0));
    if (!u0.is_zero()) add(relation::kStarSquare, detail::is_plus_minus(us * us, ul * u0 * u0.apply(CyclicGalois::sigma).inverse()));
  }

  // Every small unit found by search must be an integral combination of the
  // claimed generators; the index of the span of the found units is reported.
  if (rep.all_passed() && u0_unit && star_ok) {
    const auto gens = entry_generators(e, field);
    const std::array<LogVector, 3> glog{log_embed(gens[0], bits), log_embed(gens[1], bits), log_embed(gens[2], bits)};
    std::vector<std::array<Integer, 3>> coords;
    bool integral = true;
    std::string bad;
    for (const CyclicElem& x : search_units(field, regulator_height, bits)) {
      auto c = log_coordinates(log_embed(x, bits), glog);
      if (!c) {
        integral = false;
        bad = "claimed generators are dependent";
        break;
      }
      std::array<Integer, 3> row;
      for (std::size_t k = 0; k < 3; ++k) {
        row[k] = (*c)[k].round_to_integer();
        if (abs((*c)[k] - Real(row[k], bits)) > Real(1e-9, bits)) {
          integral = false;
          bad = x.to_string() + " has non-integral coordinates";
        }
      }
      coords.push_back(row);
    }
    Integer index = 0;
    for (std::size_t i = 0; i < coords.size() && integral; ++i)
      for (std::size_t j = i + 1; j < coords.size(); ++j)
        for (std::size_t k = j + 1; k < coords.size(); ++k) {
          const auto& a = coords[i];
          const auto& b = coords[j];
          const auto& c = coords[k];
          const Integer det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                              a[2] * (b[0] * c[1] - b[1] * c[0]);
          index = gcd(index, det);
        }
    std::string detail = integral ? (index == 0 ? "found units do not span a full-rank sublattice"
                                                : "index of found units in claimed group = " + Integer(abs(index)).get_str())
                                  : bad;
    add(relation::kRegulator, integral, detail);
  }
  return rep;
}

/// check_hasse_relations, throwing ValidationError on the first failed relation.
inline HasseReport verify_hasse_relations(const CyclicCatalogEntry& e, long regulator_height = 2,
                                          mpfr_prec_t bits = Real::kDefaultBits) {
  HasseReport rep = check_hasse_relations(e, regulator_height, bits);
  if (const RelationCheck* f = rep.first_failure()) throw ValidationError(f->name, e.label + ": " + f->detail);
  return rep;
}

/// Verified generators of O_L^* modulo ±1.
inline std::array<CyclicElem, 3> cyclic_generators(const CyclicCatalogEntry& e) {
  const HasseReport rep = verify_hasse_relations(e);
  return entry_generators(e, rep.field);
}

/// Builds a catalog entry by search: u0 is the shortest relative unit of height
/// ≤ h; Q = 2 when some unit u of height ≤ h has N_{L/l}(u) = ±u_l (u_* := u,
/// and u0 := ±u_*σ(u_*) so that the Hasse relations hold with the same u0).
inline CyclicCatalogEntry populate_catalog_entry(std::string label, const Quartic& polynomial, long height_bound,
                                                 mpfr_prec_t bits = Real::kDefaultBits) {
  const auto field = CyclicQuarticField::create(polynomial);
  CyclicCatalogEntry e;
  e.label = std::move(label);
  e.polynomial = polynomial;
  e.quad_subfield_d = field->quadratic_subfield_d();
  e.u_l = fundamental_unit(e.quad_subfield_d, bits).unit;
  const CyclicElem ul = CyclicElem::lift(field, e.u_l);
  const auto relative = search_relative_units(field, height_bound, bits);
  if (relative.empty()) throw UnresolvedError("no relative unit of height <= " + std::to_string(height_bound));
  e.u0 = relative.front().coords();
  e.Q_index = 1;
  for (const CyclicElem& u : search_units(field, height_bound, bits)) {
    if (detail::is_plus_minus(u.norm_to_l(), ul)) {
      e.Q_index = 2;
      e.u_star = u.coords();
      e.u0 = (u * u.apply(CyclicGalois::sigma)).coords();
      break;
    }
  }
  return e;
}

/// LOG(u_l) = (W1, -W1, W1, -W1), LOG(u0) = (W2, W3, -W2, -W3).
struct CyclicLogParameters {
  Real W1, W2, W3;
};

inline CyclicLogParameters cyclic_log_parameters(const CyclicCatalogEntry& e,
                                                 const std::shared_ptr<const CyclicQuarticField>& field,
                                                 mpfr_prec_t bits) {
  const LogVector ll = log_embed(CyclicElem::lift(field, e.u_l), bits);
  const LogVector l0 = log_embed(CyclicElem(field, e.u0), bits);
  return {ll[0], l0[0], l0[1]};
}

/// Λ²LOG(O_L^*) in the form (1/den)·{n1 (u_l∧u0) + n2 (u_l∧σu0) + n3 (u0∧σu0)}:
/// den 1 for Q = 1; den 2 with n1+n2+n3 even for Q = 2 (u_* contributes
/// ½(LOG u_l + LOG u0 - LOG σu0)).
inline LatticeSpec cyclic_parity_lattice(const CyclicCatalogEntry& e,
                                         const std::shared_ptr<const CyclicQuarticField>& field, mpfr_prec_t bits) {
  const CyclicElem u0(field, e.u0);
  const LogVector ll = log_embed(CyclicElem::lift(field, e.u_l), bits);
  const LogVector l0 = log_embed(u0, bits);
  const LogVector ls = log_embed(u0.apply(CyclicGalois::sigma), bits);
  LatticeSpec spec{{wedge2(ll, l0), wedge2(ll, ls), wedge2(l0, ls)}, 1, Parity::none};
  if (e.Q_index == 2) {
    spec.denominator = 2;
    spec.parity = Parity::even_sum;
  }
  return spec;
}

/// The same lattice spanned directly by the pairwise wedges of the generators.
inline LatticeSpec cyclic_generator_lattice(const CyclicCatalogEntry& e,
                                            const std::shared_ptr<const CyclicQuarticField>& field, mpfr_prec_t bits) {
  const auto gens = entry_generators(e, field);
  const LogVector g1 = log_embed(gens[0], bits);
  const LogVector g2 = log_embed(gens[1], bits);
  const LogVector g3 = log_embed(gens[2], bits);
  return LatticeSpec{{wedge2(g1, g2), wedge2(g1, g3), wedge2(g2, g3)}, 1, Parity::none};
}

}  // namespace unitlat
