#include <gtest/gtest.h>

#include "unitlat/cyclic_units.hpp"
#include "unitlat/serialize.hpp"

using namespace unitlat;

namespace {

std::vector<CyclicCatalogEntry> shipped() { return load_catalog(UNITLAT_DEFAULT_CATALOG); }

const CyclicCatalogEntry& entry(const std::vector<CyclicCatalogEntry>& c, const std::string& label) {
  for (const auto& e : c)
    if (e.label == label) return e;
  throw std::runtime_error("missing " + label);
}

bool passed(const HasseReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c.passed;
  return false;
}

}  // namespace

TEST(Catalog, ShippedEntriesEqualSearchOutput) {
  const auto cat = shipped();
  ASSERT_EQ(cat.size(), 2u);
  const CyclicCatalogEntry z16 = populate_catalog_entry("zeta16-plus", {2, 0, -4, 0, 1}, 3);
  const CyclicCatalogEntry z15 = populate_catalog_entry("zeta15-plus", {1, 4, -4, -1, 1}, 3);
  EXPECT_EQ(dump_catalog(cat), dump_catalog({z16, z15}));
  EXPECT_EQ(entry(cat, "zeta16-plus").Q_index, 2);
  EXPECT_EQ(entry(cat, "zeta15-plus").Q_index, 1);
}

TEST(Hasse, ShippedEntriesVerify) {
  for (const auto& e : shipped()) {
    const HasseReport r = verify_hasse_relations(e);
    EXPECT_TRUE(r.all_passed()) << e.label;
    const CyclicElem u0(r.field, e.u0);
    EXPECT_TRUE(detail::is_plus_minus_one(u0.apply(CyclicGalois::sigma2) * u0));
    EXPECT_TRUE(detail::is_plus_minus_one(u0.norm_to_l()));
  }
}

TEST(Hasse, Zeta16StarIdentities) {
  const CyclicCatalogEntry e = entry(shipped(), "zeta16-plus");
  const HasseReport r = verify_hasse_relations(e);
  const CyclicElem us(r.field, *e.u_star), u0(r.field, e.u0);
  const CyclicElem ul = CyclicElem::lift(r.field, e.u_l);
  EXPECT_TRUE(detail::is_plus_minus(us.norm_to_l(), ul));
  EXPECT_TRUE(detail::is_plus_minus(us * us.apply(CyclicGalois::sigma), u0));
  EXPECT_TRUE(detail::is_plus_minus(us * us, ul * u0 * u0.apply(CyclicGalois::sigma).inverse()));
}

TEST(Hasse, BrokenStarIsRejectedNamingTheSquareRelation) {
  CyclicCatalogEntry e = entry(shipped(), "zeta16-plus");
  const auto field = CyclicQuarticField::create(e.polynomial);
  // u_*·u_l keeps u_*σ(u_*) = ±u0 (N(u_l) = -1) but breaks u_*² = ±u_l u0/σ(u0)
  e.u_star = (CyclicElem(field, *e.u_star) * CyclicElem::lift(field, e.u_l)).coords();
  const HasseReport r = check_hasse_relations(e);
  EXPECT_FALSE(r.all_passed());
  EXPECT_FALSE(passed(r, relation::kStarSquare));
  EXPECT_TRUE(passed(r, relation::kStarSigma));
  EXPECT_THROW(verify_hasse_relations(e), ValidationError);
}

TEST(Hasse, RejectsWrongData) {
  const CyclicCatalogEntry good = entry(shipped(), "zeta16-plus");
  CyclicCatalogEntry e = good;
  e.u0 = {1, 0, 0, 0};
  EXPECT_FALSE(passed(check_hasse_relations(e), relation::kU0NotTrivial));
  e = good;
  e.u0 = {0, 1, 0, 0};  // θ has norm 2
  EXPECT_FALSE(passed(check_hasse_relations(e), relation::kU0Unit));
  e = good;
  e.u_l = QuadElem(2, 3, 2);  // (1+√2)²
  EXPECT_FALSE(passed(check_hasse_relations(e), relation::kFundamental));
  e = good;
  e.Q_index = 1;
  EXPECT_FALSE(passed(check_hasse_relations(e), relation::kStarPresent));
  e = good;
  e.Q_index = 3;
  EXPECT_FALSE(check_hasse_relations(e).all_passed());
  e = good;
  e.polynomial = {1, 0, -10, 0, 1};
  EXPECT_FALSE(passed(check_hasse_relations(e), relation::kCyclicField));
}

TEST(Search, RelativeUnitsHaveUnitRelativeNorm) {
  const auto f = CyclicQuarticField::create({2, 0, -4, 0, 1});
  const auto rel = search_relative_units(f, 2);
  ASSERT_FALSE(rel.empty());
  for (const auto& w : rel) EXPECT_TRUE(detail::is_plus_minus_one(w.norm_to_l()));
  EXPECT_TRUE(search_relative_units(f, 0).empty());
  const auto all = search_units(f, 1);
  for (const auto& u : all) {
    EXPECT_TRUE(is_unit(u));
    EXPECT_FALSE(detail::is_plus_minus_one(u));
  }
}

TEST(CyclicLattice, ParityLatticeEqualsGeneratorLattice) {
  for (const auto& e : shipped()) {
    const HasseReport r = verify_hasse_relations(e);
    const auto a = certified_min_one_norm([&](mpfr_prec_t p) { return cyclic_parity_lattice(e, r.field, p); }, 20, 128);
    const auto b = certified_min_one_norm([&](mpfr_prec_t p) { return cyclic_generator_lattice(e, r.field, p); }, 20, 128);
    EXPECT_TRUE(a.certified);
    EXPECT_NEAR(a.value.to_double(), b.value.to_double(), 1e-12) << e.label;
    EXPECT_GT(a.value.to_double(), 1.203233);
    if (e.Q_index == 2) EXPECT_EQ((a.argmin[0] + a.argmin[1] + a.argmin[2]) % 2, 0);
  }
}

TEST(CyclicLattice, LogParametersMatchEmbedding) {
  const CyclicCatalogEntry e = entry(shipped(), "zeta16-plus");
  const HasseReport r = verify_hasse_relations(e);
  const CyclicLogParameters W = cyclic_log_parameters(e, r.field, 128);
  EXPECT_NEAR(W.W1.to_double(), std::log(1 + std::sqrt(2.0)), 1e-15);
  const LogVector s = log_embed(CyclicElem(r.field, e.u0).apply(CyclicGalois::sigma));
  EXPECT_NEAR(s[0].to_double(), W.W3.to_double(), 1e-15);
  EXPECT_NEAR(s[1].to_double(), -W.W2.to_double(), 1e-15);
}
