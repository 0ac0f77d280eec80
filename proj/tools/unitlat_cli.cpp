#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "unitlat/unitlat.hpp"

using namespace unitlat;

namespace {

enum Exit { kOk = 0, kViolation = 1, kInvalidInput = 2, kUnresolved = 3, kCatalog = 4 };

struct CliConfig {
  int precision_bits = 128;
  long coeff_bound = 20;
  std::int64_t scan_limit = 30;
  std::string denom_bound = "1000000000";
  std::string catalog_path = UNITLAT_DEFAULT_CATALOG;
  std::string format = "text";
};

SqrtSearch sqrt_search(const CliConfig& c) {
  SqrtSearch s;
  try {
    s.denom_bound = Integer(c.denom_bound);
  } catch (const std::invalid_argument&) {
    throw DomainError("--denom-bound must be an integer, got " + c.denom_bound);
  }
  if (s.denom_bound < 1) throw DomainError("--denom-bound must be positive");
  // Escalation keeps the same ratio as the defaults.
  s.escalated_denom_bound = std::max<Integer>(s.escalated_denom_bound, s.denom_bound * 1000000);
  return s;
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_fund_unit(const CliConfig& c, std::int64_t d) {
  const FundamentalUnitResult r = fundamental_unit(d, c.precision_bits);
  if (c.format == "json") {
    Json j = to_json(r);
    j["d"] = d;
    print(j);
  } else if (c.format == "csv") {
    std::cout << "d,unit,a,b,norm_sign,log\n"
              << d << ',' << r.unit.to_string() << ',' << format_rational(r.unit.a()) << ','
              << format_rational(r.unit.b()) << ',' << r.norm_sign << ',' << decimal(r.log_value) << "\n";
  } else {
    std::cout << "fundamental unit of Q(√" << d << "): " << r.unit.to_string() << "\n"
              << "norm " << r.norm_sign << ", log " << decimal(r.log_value) << "\n";
  }
  return kOk;
}

int cmd_klein(const CliConfig& c, std::int64_t d1, std::int64_t d2) {
  const KleinFieldReport r = klein_field_report(d1, d2, c.coeff_bound, c.precision_bits, {}, sqrt_search(c));
  if (c.format == "json") {
    print(to_json(r));
  } else if (c.format == "csv") {
    std::cout << scan_csv_header() << "\n" << scan_csv_row(r) << "\n";
  } else if (!r.unresolved) {
    const KleinUnitStructure& ks = *r.structure;
    std::cout << "L = Q(√" << r.d1 << ", √" << r.d2 << "), d3 = " << r.d3 << "\n";
    for (std::size_t i = 0; i < 3; ++i)
      std::cout << "u" << i + 1 << " = " << ks.subfield.units[i].to_string() << "  log " << decimal(ks.subfield.logs[i])
                << "\n";
    for (const SqrtPattern& p : ks.patterns)
      std::cout << "sqrt(u1^" << p.e[0] << " u2^" << p.e[1] << " u3^" << p.e[2] << "): " << to_string(p.status)
                << (p.root ? " " + p.root->to_string() : "") << "\n";
    std::cout << "index [O_L^* : E] = " << ks.index_over_E << "\n";
    for (std::size_t i = 0; i < 3; ++i) std::cout << "generator " << i + 1 << ": " << ks.generators[i].to_string() << "\n";
    const MinOneNormResult& m = *r.minimum;
    std::cout << "minimum over (1/" << ks.wedge_denominator() << ")Λ²LOG(E): " << decimal(m.value) << " at ("
              << m.argmin[0] << ", " << m.argmin[1] << ", " << m.argmin[2] << ")"
              << (m.certified ? " certified" : " not certified") << "\n"
              << "minimum over Λ²LOG(O_L^*): " << decimal(r.unit_minimum->value) << "\n"
              << "8·X3/den = " << decimal(r.bound_8X3) << ", 2·log u1·log u2 = " << decimal(r.thin_bound)
              << ", margin over 3√3·log²φ = " << decimal(r.theorem_margin) << "\n"
              << text_table(r.checks);
  }
  if (r.unresolved) {
    std::cerr << "unresolved: " << r.error << "\n";
    return kUnresolved;
  }
  const bool bad = std::any_of(r.checks.begin(), r.checks.end(), is_violation);
  return bad ? kViolation : kOk;
}

const CyclicCatalogEntry& find_entry(const std::vector<CyclicCatalogEntry>& cat, const std::string& label) {
  for (const auto& e : cat)
    if (e.label == label) return e;
  throw DomainError("no catalog entry labelled " + label);
}

int cmd_cyclic(const CliConfig& c, const std::string& label) {
  const auto catalog = load_catalog(c.catalog_path);
  const CyclicCatalogEntry& e = find_entry(catalog, label);
  const HasseReport hasse = check_hasse_relations(e, 2, c.precision_bits);
  if (const RelationCheck* first = hasse.first_failure()) {
    if (c.format == "json") {
      Json checks = Json::array();
      for (const auto& r : hasse.checks) checks.push_back(Json{{"relation", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      print(Json{{"label", e.label}, {"relations", checks}, {"failed", first->name}});
    } else {
      for (const auto& r : hasse.checks) std::cout << (r.passed ? "  pass  " : "  FAIL  ") << r.name << "\n";
    }
    std::cerr << "catalog entry " << e.label << " rejected; failed relations:\n";
    for (const auto& r : hasse.checks)
      if (!r.passed) std::cerr << "  " << r.name << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
    return kCatalog;
  }
  const CyclicFieldReport r = cyclic_field_report(e, c.coeff_bound, c.precision_bits);
  const auto gens = entry_generators(e, hasse.field);
  const LatticeSpec spec = cyclic_parity_lattice(e, hasse.field, c.precision_bits);
  if (c.format == "json") {
    Json j = to_json(r);
    j["Q_index"] = e.Q_index;
    j["parity"] = to_string(spec.parity);
    Json g = Json::array();
    for (const auto& x : gens) g.push_back(Json{{"coords", coords_json(x.coords())}, {"text", x.to_string()}});
    j["generators"] = g;
    print(j);
  } else {
    std::cout << "entry " << e.label << "\n";
    for (const auto& rc : hasse.checks) std::cout << "  pass  " << rc.name << (rc.detail.empty() ? "" : "  (" + rc.detail + ")") << "\n";
    std::cout << "Q = " << e.Q_index << ", lattice denominator " << spec.denominator << ", parity: "
              << to_string(spec.parity) << "\n";
    for (const auto& x : gens) std::cout << "generator " << x.to_string() << "\n";
    const MinOneNormResult& m = *r.minimum;
    std::cout << "W = (" << decimal(r.W->W1) << ", " << decimal(r.W->W2) << ", " << decimal(r.W->W3) << ")\n"
              << "minimum " << decimal(m.value) << " at (" << m.argmin[0] << ", " << m.argmin[1] << ", " << m.argmin[2]
              << ")" << (m.certified ? " certified" : " not certified") << "\n"
              << text_table(r.checks);
  }
  const bool bad = std::any_of(r.checks.begin(), r.checks.end(), is_violation);
  return bad ? kViolation : kOk;
}

int cmd_scan(const CliConfig& c) {
  const SqrtSearch search = sqrt_search(c);
  std::vector<KleinFieldReport> rows;
  for (const auto& [d1, d2] : scan_pairs(c.scan_limit))
    rows.push_back(klein_field_report(d1, d2, c.coeff_bound, c.precision_bits, {}, search));
  if (c.format == "json") {
    Json j = Json::array();
    for (const auto& r : rows) {
      Json row{{"d1", r.d1}, {"d2", r.d2}, {"d3", r.d3}};
      if (r.unresolved) {
        row["unresolved"] = r.error;
      } else {
        row["index"] = r.structure->index_over_E;
        row["min_1norm"] = decimal(r.minimum->value);
        row["certified"] = r.minimum->certified;
        row["bound_8X3"] = decimal(r.bound_8X3);
        row["theorem_margin"] = decimal(r.theorem_margin);
      }
      j.push_back(row);
    }
    print(j);
  } else if (c.format == "csv") {
    std::cout << scan_csv_header() << "\n";
    for (const auto& r : rows) std::cout << scan_csv_row(r) << "\n";
  } else {
    std::cout << std::left << std::setw(5) << "d1" << std::setw(5) << "d2" << std::setw(6) << "d3" << std::setw(7)
              << "index" << std::setw(17) << "min_1norm" << std::setw(11) << "certified" << std::setw(17) << "bound_8X3"
              << "theorem_margin\n";
    for (const auto& r : rows) {
      std::cout << std::setw(5) << r.d1 << std::setw(5) << r.d2 << std::setw(6) << r.d3;
      if (r.unresolved) {
        std::cout << "unresolved: " << r.error << "\n";
        continue;
      }
      std::cout << std::setw(7) << r.structure->index_over_E << std::setw(17) << decimal(r.minimum->value)
                << std::setw(11) << (r.minimum->certified ? "yes" : "no") << std::setw(17) << decimal(r.bound_8X3)
                << decimal(r.theorem_margin) << "\n";
    }
  }
  const bool unresolved = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.unresolved; });
  return unresolved ? kUnresolved : kOk;
}

int cmd_verify_all(const CliConfig& c, const std::vector<std::string>& corruptions) {
  VerifyOptions o;
  o.scan_limit = c.scan_limit;
  o.coeff_bound = c.coeff_bound;
  o.bits = c.precision_bits;
  o.search = sqrt_search(c);
  o.catalog = load_catalog(c.catalog_path);
  for (const auto& e : o.catalog) verify_hasse_relations(e, 2, c.precision_bits);
  for (const std::string& kv : corruptions) {
    const auto eq = kv.rfind('=');
    if (eq == std::string::npos) throw DomainError("--corrupt-constant expects NAME=VALUE");
    o.overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  const VerificationReport r = verify_all(o);
  if (c.format == "json")
    print(to_json(r));
  else
    std::cout << to_text(r);
  if (r.unresolved() > 0) return kUnresolved;
  return r.violations() > 0 ? kViolation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit lattices of real quartic Galois fields and minimal 1-norms in their exterior squares"};
  app.require_subcommand(1);
  CliConfig cfg;
  app.add_option("--precision", cfg.precision_bits, "working precision in bits")
      ->envname("UNITLAT_PRECISION")
      ->check(CLI::Range(64, 1 << 16));
  app.add_option("--coeff-bound", cfg.coeff_bound, "initial coefficient box for the 1-norm search")
      ->envname("UNITLAT_COEFF_BOUND")
      ->check(CLI::Range(1L, 1L << 20));
  app.add_option("--scan-limit", cfg.scan_limit, "largest radicand in the Klein scan")
      ->envname("UNITLAT_SCAN_LIMIT")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{10000}));
  app.add_option("--denom-bound", cfg.denom_bound, "denominator bound for square-root reconstruction")
      ->envname("UNITLAT_DENOM_BOUND");
  app.add_option("--catalog", cfg.catalog_path, "cyclic catalog JSON")->envname("UNITLAT_CATALOG");
  app.add_option("--format", cfg.format, "output format")
      ->envname("UNITLAT_FORMAT")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  std::int64_t d = 0, d1 = 0, d2 = 0;
  std::string label;
  std::vector<std::string> corruptions;
  auto* fund = app.add_subcommand("fund-unit", "fundamental unit of Q(√d)");
  fund->add_option("d", d, "squarefree d > 1")->required();
  auto* klein = app.add_subcommand("klein", "unit structure and minimal wedge 1-norm of Q(√d1, √d2)");
  klein->add_option("d1", d1)->required();
  klein->add_option("d2", d2)->required();
  auto* cyclic = app.add_subcommand("cyclic", "verify a cyclic catalog entry and minimise over its wedge lattice");
  cyclic->add_option("label", label)->required();
  auto* scan = app.add_subcommand("scan", "minimal 1-norms over all Klein fields Q(√d1, √d2), d1 < d2 ≤ scan limit");
  auto* verify = app.add_subcommand("verify-all", "run every reproduction and bound check");
  for (auto* sub : {fund, klein, cyclic, scan, verify}) sub->fallthrough();
  // Test hook: replace a reference value to exercise the failure path.
  verify->add_option("--corrupt-constant", corruptions)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidInput;
  }
  // CLI11 drops an environment value that fails its validator and keeps the
  // default; treat that as invalid input instead.
  for (const CLI::Option* opt : app.get_options()) {
    const std::string& env = opt->get_envname();
    if (!env.empty() && opt->count() == 0 && std::getenv(env.c_str()) != nullptr) {
      std::cerr << env << ": invalid value '" << std::getenv(env.c_str()) << "'\n";
      return kInvalidInput;
    }
  }

  try {
    if (*fund) return cmd_fund_unit(cfg, d);
    if (*klein) return cmd_klein(cfg, d1, d2);
    if (*cyclic) return cmd_cyclic(cfg, label);
    if (*scan) return cmd_scan(cfg);
    if (*verify) return cmd_verify_all(cfg, corruptions);
  } catch (const ValidationError& e) {
    std::cerr << "catalog validation failed: " << e.what() << "\n";
    return kCatalog;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const UnresolvedError& e) {
    std::cerr << "unresolved: " << e.what() << "\n";
    return kUnresolved;
  } catch (const PrecisionError& e) {
    std::cerr << "unresolved: " << e.what() << "\n";
    return kUnresolved;
  }
  return kOk;
}
