#include <gtest/gtest.h>

#include "oracles.hpp"
#include "unitlat/klein_units.hpp"
#include "unitlat/verifier.hpp"

using namespace unitlat;

namespace {

QuadElem half(std::int64_t d, long a2, long b2) { return QuadElem(d, Rational(a2, 2), Rational(b2, 2)); }

void expect_pohst(const BiquadElem& u) {
  const double L = log_golden_ratio(64).to_double();
  EXPECT_GE(log_embed(u).two_norm_squared().to_double(), 4 * L * L - 1e-9) << u.to_string();
}

}  // namespace

TEST(SubfieldUnits, SortedBySize) {
  const SubfieldUnits a = subfield_units(2, 5);
  EXPECT_EQ(a.radicands, (std::array<std::int64_t, 3>{5, 2, 10}));
  EXPECT_EQ(a.units[0], half(5, 1, 1));
  EXPECT_EQ(a.units[1], QuadElem(2, 1, 1));
  EXPECT_EQ(a.units[2], QuadElem(10, 3, 1));

  const SubfieldUnits b = subfield_units(5, 13);
  EXPECT_EQ(b.radicands, (std::array<std::int64_t, 3>{5, 13, 65}));
  EXPECT_EQ(b.units[1], half(13, 3, 1));
  EXPECT_EQ(b.units[2], QuadElem(65, 8, 1));

  const SubfieldUnits c = subfield_units(3, 5);
  EXPECT_EQ(c.radicands, (std::array<std::int64_t, 3>{5, 3, 15}));
  EXPECT_EQ(c.units[1], QuadElem(3, 2, 1));
  EXPECT_EQ(c.units[2], QuadElem(15, 4, 1));
}

TEST(KleinStructure, Q2Q5HasIndexTwo) {
  const KleinUnitStructure ks = klein_unit_structure(2, 5);
  EXPECT_TRUE(ks.resolved());
  EXPECT_EQ(ks.index_over_E, 2);
  EXPECT_EQ(ks.wedge_denominator(), 2);
  ASSERT_EQ(ks.sqrt_patterns.size(), 1u);
  EXPECT_EQ(ks.sqrt_patterns[0], (Exponents{1, 1, 1}));
  const BiquadElem& root = ks.generators[2];
  EXPECT_EQ(root * root, ks.lifted[0] * ks.lifted[1] * ks.lifted[2]);
  EXPECT_TRUE(is_unit(root));
  EXPECT_TRUE(generators_square_into_E(ks));
  EXPECT_TRUE(subfield_units_independent(ks).second);
  for (const auto& g : ks.generators) expect_pohst(g);
}

TEST(KleinStructure, Q2Q3HasIndexFour) {
  const KleinUnitStructure ks = klein_unit_structure(2, 3);
  EXPECT_EQ(ks.index_over_E, 4);
  EXPECT_EQ(ks.wedge_denominator(), 4);
  EXPECT_TRUE(generators_square_into_E(ks));
  for (const auto& g : ks.generators) {
    EXPECT_TRUE(is_unit(g));
    expect_pohst(g);
  }
}

TEST(KleinStructure, SolveInE) {
  const KleinUnitStructure ks = klein_unit_structure(5, 13);
  const BiquadElem x = ks.lifted[0].pow(3) * ks.lifted[2].pow(-2);
  const auto m = solve_in_E(-x, ks);
  ASSERT_TRUE(m);
  EXPECT_EQ(*m, (std::array<long, 3>{3, 0, -2}));
  EXPECT_FALSE(solve_in_E(BiquadElem::rational(ks.field, 2), ks));
}

TEST(KleinStructure, PatternStatusesAreDecided) {
  for (const auto& [d1, d2] : scan_pairs(14)) {
    const KleinUnitStructure ks = klein_unit_structure(d1, d2);
    EXPECT_TRUE(ks.resolved()) << d1 << "," << d2;
    EXPECT_EQ(ks.patterns.size(), 7u);
    EXPECT_EQ(ks.index_over_E, 1 << [&] {
      int r = 0;
      for (int n = static_cast<int>(ks.sqrt_patterns.size()) + 1; n > 1; n /= 2) ++r;
      return r;
    }());
    EXPECT_TRUE(generators_square_into_E(ks));
  }
}

TEST(KleinLattice, NamedMinima) {
  const double L = log_golden_ratio(64).to_double();
  struct Case {
    std::int64_t d1, d2;
    double expected;
  };
  for (const Case& c : {Case{2, 5, 4 * L * std::log(1 + std::sqrt(2.0))},
                        Case{5, 13, 4 * L * std::log((3 + std::sqrt(13.0)) / 2)}}) {
    const KleinUnitStructure ks = klein_unit_structure(c.d1, c.d2);
    const MinOneNormResult m =
        certified_min_one_norm([&](mpfr_prec_t p) { return klein_bounding_lattice(ks, p); }, 20, 128);
    EXPECT_TRUE(m.certified);
    EXPECT_NEAR(m.value.to_double(), c.expected, 1e-12);
    const MinOneNormResult t = certified_min_one_norm([&](mpfr_prec_t p) { return klein_unit_lattice(ks, p); }, 20, 128);
    EXPECT_GE(t.value.to_double(), m.value.to_double() - 1e-12);
  }
}

TEST(KleinLattice, BoundingMinimumMatchesExhaustiveOracle) {
  for (const auto& [d1, d2] : scan_pairs(15)) {
    const KleinUnitStructure ks = klein_unit_structure(d1, d2);
    const MinOneNormResult m =
        certified_min_one_norm([&](mpfr_prec_t p) { return klein_bounding_lattice(ks, p); }, 20, 128);
    std::array<long double, 3> logs;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto pu = oracle::pell_brute_force(ks.subfield.radicands[i], 50000000);
      ASSERT_TRUE(pu) << ks.subfield.radicands[i];
      logs[i] = oracle::unit_log(ks.subfield.radicands[i], *pu);
    }
    const auto o = oracle::klein_min(logs, ks.wedge_denominator(), 10);
    EXPECT_NEAR(m.value.to_double(), static_cast<double>(o.value), 1e-10) << d1 << "," << d2;
  }
}
