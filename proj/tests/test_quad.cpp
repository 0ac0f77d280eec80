#include <gtest/gtest.h>

#include "oracles.hpp"
#include "unitlat/quad.hpp"

using namespace unitlat;

namespace {

QuadElem half(std::int64_t d, long a2, long b2) { return QuadElem(d, make_rational(a2, 2), make_rational(b2, 2)); }

}  // namespace

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(format_rational(make_rational(3, 6)), "1/2");
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_THROW(parse_rational("x"), DomainError);
}

TEST(Rational, Squarefree) {
  EXPECT_TRUE(is_squarefree(30));
  EXPECT_FALSE(is_squarefree(12));
  EXPECT_TRUE(is_squarefree(1));
  const auto [m, c] = squarefree_decomposition(Integer(72));
  EXPECT_EQ(m, 2);
  EXPECT_EQ(c, 6);
}

TEST(Rational, Reconstruction) {
  const Real x = Real(Rational(355, 113), 128);
  const auto q = reconstruct_rational(x, Integer(1000), Real(1e-30, 128));
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, Rational(355, 113));
  EXPECT_FALSE(reconstruct_rational(sqrt(Real(2L, 128)), Integer(1000), Real(1e-30, 128)));
}

TEST(Quad, Arithmetic) {
  const QuadElem x(5, 1, 2), y(5, Rational(1, 2), Rational(-1, 3));
  EXPECT_EQ(x * y, QuadElem(5, Rational(1, 2) - Rational(10, 3), Rational(-1, 3) + 1));
  EXPECT_EQ(x * x.inverse(), QuadElem::rational(5, 1));
  EXPECT_EQ(x.norm(), -19);
  EXPECT_EQ(x.trace(), 2);
  EXPECT_EQ(quad_conj(x), QuadElem(5, 1, -2));
  EXPECT_THROW(x * QuadElem(2, 1, 1), DomainError);
  EXPECT_THROW(QuadElem(4, 1, 1), DomainError);
  EXPECT_THROW(QuadElem::rational(3, 0).inverse(), DomainError);
}

TEST(Quad, IntegralityFollowsTheRingOfIntegers) {
  EXPECT_TRUE(is_quad_integer(half(5, 1, 1)));
  EXPECT_FALSE(is_quad_integer(half(3, 1, 1)));
  EXPECT_TRUE(is_quad_integer(half(13, 3, 1)));
}

TEST(Quad, ExactComparison) {
  EXPECT_GT(compare(QuadElem(3, 2, 1), half(13, 3, 1)), 0);  // 3.732 > 3.303
  EXPECT_LT(compare(half(5, 1, 1), QuadElem(2, 1, 1)), 0);
  // 1 + √2 against a rational just below it
  EXPECT_GT(compare(QuadElem(2, 1, 1), QuadElem(3, Rational(2414213, 1000000), 0)), 0);
  EXPECT_EQ(compare(QuadElem(7, 8, 3), QuadElem(7, 8, 3)), 0);
  EXPECT_EQ(sign_of(Rational(-3), Rational(2), 2), -1);  // -3 + 2√2 < 0
  EXPECT_EQ(sign_of(Rational(-2), Rational(2), 2), 1);
}

TEST(FundamentalUnit, NamedValues) {
  EXPECT_EQ(fundamental_unit(5).unit, half(5, 1, 1));
  EXPECT_EQ(fundamental_unit(2).unit, QuadElem(2, 1, 1));
  EXPECT_EQ(fundamental_unit(10).unit, QuadElem(10, 3, 1));
  EXPECT_EQ(fundamental_unit(13).unit, half(13, 3, 1));
  EXPECT_EQ(fundamental_unit(65).unit, QuadElem(65, 8, 1));
  EXPECT_EQ(fundamental_unit(3).unit, QuadElem(3, 2, 1));
  EXPECT_EQ(fundamental_unit(7).unit, QuadElem(7, 8, 3));
  EXPECT_EQ(fundamental_unit(661).unit, half(661, 1789539, 69605));
  EXPECT_EQ(fundamental_unit(5).norm_sign, -1);
  EXPECT_EQ(fundamental_unit(3).norm_sign, 1);
  EXPECT_NEAR(fundamental_unit(5).log_value.to_double(), 0.48121182505960344, 1e-15);
}

TEST(FundamentalUnit, RejectsInvalidRadicand) {
  EXPECT_THROW(fundamental_unit(4), DomainError);
  EXPECT_THROW(fundamental_unit(1), DomainError);
  EXPECT_THROW(fundamental_unit(-5), DomainError);
}

TEST(FundamentalUnit, MatchesPellBruteForce) {
  for (std::int64_t d = 2; d <= 120; ++d) {
    if (!oracle::squarefree(d)) continue;
    const auto brute = oracle::pell_brute_force(d);
    ASSERT_TRUE(brute) << d;
    const FundamentalUnitResult r = fundamental_unit(d);
    EXPECT_EQ(r.unit, QuadElem(d, Rational(brute->x2, 2), Rational(brute->y2, 2))) << "d = " << d;
    EXPECT_NEAR(r.log_value.to_double(), static_cast<double>(oracle::unit_log(d, *brute)), 1e-12) << d;
  }
}

TEST(FundamentalUnit, NormIsPlusMinusOneAndPowersStayUnits) {
  for (std::int64_t d : {2, 3, 5, 6, 7, 13, 29, 94, 109, 661}) {
    const QuadElem u = fundamental_unit(d).unit;
    EXPECT_TRUE(is_quad_integer(u));
    EXPECT_EQ(abs(u.norm()), 1);
    const QuadElem u5 = u.pow(5);
    EXPECT_EQ(abs(u5.norm()), 1);
    EXPECT_EQ(u5 * u.inverse().pow(5), QuadElem::rational(d, 1));
  }
}

TEST(FundamentalUnit, SmallestUnitsOrder) {
  const auto list = smallest_fundamental_units(200);
  ASSERT_GE(list.size(), 4u);
  EXPECT_EQ(list[0].first, 5);
  EXPECT_EQ(list[1].first, 2);
  EXPECT_EQ(list[2].first, 13);
  EXPECT_EQ(list[3].first, 3);
  for (std::size_t i = 4; i < list.size(); ++i) EXPECT_GT(compare(list[i].second.unit, QuadElem(3, 2, 1)), 0);
  std::size_t squarefree = 0;
  for (std::int64_t m = 2; m <= 200; ++m) squarefree += oracle::squarefree(m);
  EXPECT_EQ(list.size(), squarefree);
  EXPECT_THROW(smallest_fundamental_units(12), DomainError);
}

TEST(FundamentalUnit, SmallestUnitsAtThirteen) {
  const auto list = smallest_fundamental_units(13);
  std::vector<std::int64_t> ds;
  for (const auto& e : list) ds.push_back(e.first);
  EXPECT_EQ(ds, (std::vector<std::int64_t>{5, 2, 13, 3, 10, 6, 7, 11}));
}
