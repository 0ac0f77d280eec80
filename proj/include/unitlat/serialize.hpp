#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "unitlat/biquad.hpp"
#include "unitlat/cyclic_units.hpp"
#include "unitlat/errors.hpp"
#include "unitlat/log_lattice.hpp"
#include "unitlat/quad.hpp"
#include "unitlat/verifier.hpp"

namespace unitlat {

using Json = nlohmann::ordered_json;

/// Decimal output everywhere: 12 significant digits, ties to even.
inline constexpr int kDecimalDigits = 12;

inline std::string decimal(const Real& x) { return x.to_decimal(kDecimalDigits); }

inline Json to_json(const QuadElem& x) {
  return Json{{"d", x.d()}, {"a", format_rational(x.a())}, {"b", format_rational(x.b())}};
}

inline Json to_json(const BiquadElem& x) {
  Json coords = Json::array();
  for (const Rational& c : x.coords()) coords.push_back(format_rational(c));
  return Json{{"d1", x.field().d1()}, {"d2", x.field().d2()}, {"coords", coords}};
}

inline Json coords_json(const PowerCoords& c) {
  Json out = Json::array();
  for (const Rational& q : c) out.push_back(format_rational(q));
  return out;
}

inline Json to_json(const LogVector& v) {
  Json coords = Json::array();
  for (const Real& c : v.coords) coords.push_back(decimal(c));
  return Json{{"convention", to_string(v.convention)}, {"coords", coords}, {"precision_bits", v.precision()}};
}

inline Json to_json(const MinOneNormResult& m) {
  return Json{{"value", decimal(m.value)},
              {"argmin", m.argmin},
              {"certified", m.certified},
              {"shells_searched", m.shells_searched},
              {"lambda_min_lower", decimal(m.lambda_min_lower)},
              {"precision_bits", m.precision}};
}

inline Json to_json(const Wedge2Vector& w) {
  Json coords = Json::array();
  for (const Real& c : w.coords) coords.push_back(decimal(c));
  return Json{{"basis_order", wedge_basis_labels(w.convention)}, {"coords", coords}};
}

inline Json to_json(const Wedge2Vector& w, const MinOneNormResult& m) {
  Json j = to_json(w);
  j["min"] = Json{{"value", decimal(m.value)}, {"argmin", m.argmin}, {"certified", m.certified}};
  return j;
}

inline Json to_json(const BoundReport& b) {
  return Json{{"name", b.name},           {"reference_value", b.reference_value}, {"computed", decimal(b.computed_value)},
              {"relation", to_string(b.relation)}, {"tolerance", b.tolerance},   {"note", b.note}};
}

inline Json to_json(const FundamentalUnitResult& r) {
  return Json{{"unit", to_json(r.unit)},
              {"unit_text", r.unit.to_string()},
              {"norm_sign", r.norm_sign},
              {"log", decimal(r.log_value)}};
}

inline Json to_json(const KleinFieldReport& r) {
  Json j{{"d1", r.d1}, {"d2", r.d2}, {"d3", r.d3}};
  if (r.unresolved) {
    j["unresolved"] = r.error;
    return j;
  }
  const KleinUnitStructure& ks = *r.structure;
  j["radicands"] = ks.subfield.radicands;
  Json units = Json::array();
  for (const QuadElem& u : ks.subfield.units) units.push_back(to_json(u));
  j["subfield_units"] = units;
  j["index"] = ks.index_over_E;
  Json gens = Json::array();
  for (const BiquadElem& g : ks.generators) gens.push_back(Json{{"element", to_json(g)}, {"text", g.to_string()}});
  j["generators"] = gens;
  Json patterns = Json::array();
  for (const SqrtPattern& p : ks.patterns) {
    Json row{{"e", p.e}, {"status", to_string(p.status)}};
    if (p.root) row["root"] = to_json(*p.root);
    patterns.push_back(row);
  }
  j["sqrt_patterns"] = patterns;
  j["X"] = {decimal(r.X1), decimal(r.X2), decimal(r.X3)};
  j["denominator"] = ks.wedge_denominator();
  j["min"] = to_json(*r.minimum);
  j["unit_lattice_min"] = to_json(*r.unit_minimum);
  j["bound_8X3"] = decimal(r.bound_8X3);
  j["thin_bound"] = decimal(r.thin_bound);
  j["theorem_margin"] = decimal(r.theorem_margin);
  Json checks = Json::array();
  for (const BoundReport& b : r.checks) checks.push_back(to_json(b));
  j["checks"] = checks;
  return j;
}

// ---------------------------------------------------------------------------
// Catalog

inline Json to_json(const CyclicCatalogEntry& e) {
  Json j{{"label", e.label},
         {"defining_polynomial", Json::array()},
         {"quad_subfield_d", e.quad_subfield_d},
         {"u_l", to_json(e.u_l)},
         {"u0", coords_json(e.u0)},
         {"u_star", e.u_star ? coords_json(*e.u_star) : Json(nullptr)},
         {"Q_index", e.Q_index}};
  // Integer list; strings only beyond the 64-bit range.
  for (const Integer& c : e.polynomial)
    j["defining_polynomial"].push_back(c.fits_slong_p() ? Json(c.get_si()) : Json(c.get_str()));
  return j;
}

namespace detail {

inline Rational rational_field(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ValidationError("catalog format", what + ": expected \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& ex) {
    throw ValidationError("catalog format", what + ": " + ex.what());
  }
}

inline PowerCoords power_coords(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 4) throw ValidationError("catalog format", what + ": expected 4 coordinates");
  PowerCoords c;
  for (std::size_t k = 0; k < 4; ++k) c[k] = rational_field(j[k], what);
  return c;
}

inline Integer integer_field(const Json& j, const std::string& what) {
  const Rational q = rational_field(j, what);
  if (!is_integral(q)) throw ValidationError("catalog format", what + ": expected an integer");
  return q.get_num();
}

}  // namespace detail

inline CyclicCatalogEntry catalog_entry_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("catalog format", "entry is not an object");
  for (const char* key : {"label", "defining_polynomial", "quad_subfield_d", "u_l", "u0", "Q_index"})
    if (!j.contains(key)) throw ValidationError("catalog format", std::string("missing field ") + key);
  CyclicCatalogEntry e;
  e.label = j["label"].get<std::string>();
  const Json& poly = j["defining_polynomial"];
  if (!poly.is_array() || poly.size() != 5)
    throw ValidationError("catalog format", e.label + ": defining_polynomial needs 5 coefficients");
  for (std::size_t k = 0; k < 5; ++k) e.polynomial[k] = detail::integer_field(poly[k], e.label + ": polynomial");
  e.quad_subfield_d = j["quad_subfield_d"].get<std::int64_t>();
  const Json& ul = j["u_l"];
  e.u_l = QuadElem(ul.at("d").get<std::int64_t>(), detail::rational_field(ul.at("a"), e.label + ": u_l"),
                   detail::rational_field(ul.at("b"), e.label + ": u_l"));
  e.u0 = detail::power_coords(j["u0"], e.label + ": u0");
  if (j.contains("u_star") && !j["u_star"].is_null()) e.u_star = detail::power_coords(j["u_star"], e.label + ": u_star");
  e.Q_index = j["Q_index"].get<int>();
  return e;
}

inline std::vector<CyclicCatalogEntry> parse_catalog(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& ex) {
    throw ValidationError("catalog format", ex.what());
  }
  if (!j.is_array()) throw ValidationError("catalog format", "catalog must be a JSON array");
  std::vector<CyclicCatalogEntry> out;
  try {
    for (const Json& e : j) out.push_back(catalog_entry_from_json(e));
  } catch (const Json::exception& ex) {
    throw ValidationError("catalog format", ex.what());
  }
  return out;
}

inline std::vector<CyclicCatalogEntry> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("catalog format", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

inline std::string dump_catalog(const std::vector<CyclicCatalogEntry>& entries) {
  Json j = Json::array();
  for (const auto& e : entries) j.push_back(to_json(e));
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const CyclicFieldReport& r) {
  Json checks = Json::array();
  for (const BoundReport& b : r.checks) checks.push_back(to_json(b));
  Json j{{"label", r.label}, {"checks", checks}};
  if (r.minimum) {
    j["W"] = {decimal(r.W->W1), decimal(r.W->W2), decimal(r.W->W3)};
    j["min"] = to_json(*r.minimum);
    j["generator_lattice_min"] = to_json(*r.generator_minimum);
  }
  return j;
}

inline Json to_json(const ConstrainedMinResult& r) {
  auto fixed = [](double x) { return decimal(Real(x, 64)); };
  return Json{{"minimum", fixed(r.minimum)},
              {"grid_minimum", fixed(r.grid_minimum)},
              {"argmin", {fixed(r.argmin[0]), fixed(r.argmin[1]), fixed(r.argmin[2])}},
              {"expected", r.expected_expression},
              {"claimed_bound", r.claim_expression},
              {"claim_value", fixed(r.claimed_bound)},
              {"relation", to_string(r.relation)}};
}

inline Json to_json(const VerificationReport& r) {
  Json sections = Json::array();
  for (const ReportSection& s : r.sections) {
    Json items = Json::array();
    for (const BoundReport& b : s.items) items.push_back(to_json(b));
    sections.push_back(Json{{"title", s.title}, {"items", items}});
  }
  Json constrained = Json::array();
  for (const auto& c : r.constrained) constrained.push_back(to_json(c));
  Json notes = r.notes;
  return Json{{"violations", r.violations()}, {"sections", sections}, {"constrained_minima", constrained},
              {"notes", notes}};
}

inline std::string text_table(const std::vector<BoundReport>& items) {
  std::ostringstream os;
  for (const BoundReport& b : items) {
    os << "  [" << to_string(b.relation) << "] " << b.name;
    if (!b.reference_value.empty() || b.tolerance != "exact") os << "  computed " << decimal(b.computed_value);
    if (!b.reference_value.empty()) os << "  vs " << b.reference_value;
    if (!b.tolerance.empty() && b.tolerance != "exact") os << "  (tol " << b.tolerance << ")";
    if (!b.note.empty()) os << "  -- " << b.note;
    os << "\n";
  }
  return os.str();
}

inline std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  for (const ReportSection& s : r.sections) os << s.title << "\n" << text_table(s.items) << "\n";
  os << "notes on the bound chain\n";
  for (const std::string& n : r.notes) os << "  * " << n << "\n";
  os << "\nviolated assertable checks: " << r.violations() << "\n";
  return os.str();
}

inline std::string scan_csv_header() { return "d1,d2,d3,index,min_1norm,certified,bound_8X3,theorem_margin"; }

/// Unresolved fields keep their row with empty numeric cells.
inline std::string scan_csv_row(const KleinFieldReport& r) {
  std::ostringstream os;
  os << r.d1 << ',' << r.d2 << ',' << r.d3 << ',';
  if (r.unresolved) {
    os << "unresolved,,,,";
    return os.str();
  }
  os << r.structure->index_over_E << ',' << decimal(r.minimum->value) << ','
     << (r.minimum->certified ? "true" : "false") << ',' << decimal(r.bound_8X3) << ',' << decimal(r.theorem_margin);
  return os.str();
}

}  // namespace unitlat
