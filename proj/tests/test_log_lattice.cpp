#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "unitlat/biquad.hpp"
#include "unitlat/log_lattice.hpp"

using namespace unitlat;

namespace {

constexpr mpfr_prec_t kBits = 128;

LogVector lv(std::array<double, 4> c, Convention conv = Convention::klein) {
  return LogVector{{Real(c[0], kBits), Real(c[1], kBits), Real(c[2], kBits), Real(c[3], kBits)}, conv};
}

std::array<double, 4> zero_sum(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3, 3);
  std::array<double, 4> v{u(rng), u(rng), u(rng), 0};
  v[3] = -(v[0] + v[1] + v[2]);
  return v;
}

std::array<long double, 4> ld(const std::array<double, 4>& v) { return {v[0], v[1], v[2], v[3]}; }

}  // namespace

TEST(LogEmbed, GoldenLiftAndNormCondition) {
  const BiquadField f(2, 5);
  const LogVector l = log_embed(BiquadElem::lift(f, QuadElem(5, Rational(1, 2), Rational(1, 2))));
  const double L = 0.48121182505960344;
  EXPECT_NEAR(l[0].to_double(), L, 1e-15);
  // σ2 fixes √5 in Q(√2, √5).
  EXPECT_NEAR(l[1].to_double(), -L, 1e-15);
  EXPECT_NEAR(l[2].to_double(), L, 1e-15);
  EXPECT_NEAR(l[3].to_double(), -L, 1e-15);
  const Real sum = l[0] + l[1] + l[2] + l[3];
  EXPECT_LT(abs(sum), pow2_neg(kBits - 10, kBits));
  EXPECT_THROW(log_embed(BiquadElem::rational(f, 2)), DomainError);
}

TEST(Wedge, ExplicitCoordinates) {
  // a = (1, 2, -1, -2), b = (0, 1, 1, -2); pairs (0,1),(2,3),(0,3),(1,2),(0,2),(1,3)
  const Wedge2Vector w = wedge2(lv({1, 2, -1, -2}), lv({0, 1, 1, -2}));
  const std::array<double, 6> expected{1, 4, -2, 3, 1, -2};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_DOUBLE_EQ(w[i].to_double(), expected[i]) << i;
  EXPECT_DOUBLE_EQ(one_norm(w).to_double(), 13);
  EXPECT_NEAR(two_norm(w).to_double(), std::sqrt(35.0), 1e-15);
  EXPECT_THROW(wedge2(lv({1, -1, 0, 0}), lv({1, -1, 0, 0}, Convention::cyclic)), DomainError);
}

TEST(Wedge, Antisymmetry) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const LogVector a = lv(zero_sum(rng)), b = lv(zero_sum(rng));
    const Wedge2Vector ab = wedge2(a, b), ba = wedge2(b, a), aa = wedge2(a, a);
    for (std::size_t i = 0; i < 6; ++i) {
      EXPECT_LT(abs(ab[i] + ba[i]).to_double(), 1e-30);
      EXPECT_TRUE(aa[i].is_zero());
    }
  }
}

TEST(Wedge, BasisLabels) {
  EXPECT_EQ(wedge_basis_labels(Convention::klein)[0], "id∧σ1");
  EXPECT_EQ(wedge_basis_labels(Convention::cyclic)[5], "σ∧σ³");
}

TEST(ClosedForms, Examples) {
  EXPECT_DOUBLE_EQ(klein_norm_closed(1, 1, 1, 3.0, 2.0, 1.0), 32.0);
  EXPECT_DOUBLE_EQ(klein_norm_closed(0, 0, 1, 3.0, 2.0, 1.0), 8.0);
  EXPECT_DOUBLE_EQ(cyclic_f(1, 0, 0, 1.0, 1.0, 1.0), 8.0);
  EXPECT_DOUBLE_EQ(cyclic_f(0, 0, 1, 1.0, 1.0, 1.0), 8.0);
}

TEST(ClosedForms, KleinAgreesWithPluckerOracle) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> pos(0.1, 4);
  for (int t = 0; t < 30; ++t) {
    const long double l1 = pos(rng), l2 = pos(rng), l3 = pos(rng);
    const auto a = oracle::klein_log(1, l1), b = oracle::klein_log(2, l2), c = oracle::klein_log(3, l3);
    const auto w23 = oracle::plucker(b, c), w13 = oracle::plucker(a, c), w12 = oracle::plucker(a, b);
    for (long n1 = -3; n1 <= 3; ++n1)
      for (long n2 = -3; n2 <= 3; ++n2)
        for (long n3 = -3; n3 <= 3; ++n3) {
          long double s = 0;
          for (int k = 0; k < 6; ++k) s += std::fabs(n1 * w23[k] + n2 * w13[k] + n3 * w12[k]);
          const long double closed = klein_norm_closed(n1, n2, n3, l2 * l3, l1 * l3, l1 * l2);
          EXPECT_NEAR(static_cast<double>(closed), static_cast<double>(s), 1e-12 * static_cast<double>(s + 1));
        }
  }
}

TEST(ClosedForms, CyclicAgreesWithPluckerOracle) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int t = 0; t < 30; ++t) {
    const long double W1 = u(rng), W2 = u(rng), W3 = u(rng);
    const std::array<long double, 4> ul{W1, -W1, W1, -W1}, u0{W2, W3, -W2, -W3}, s0{W3, -W2, -W3, W2};
    const auto a = oracle::plucker(ul, u0), b = oracle::plucker(ul, s0), c = oracle::plucker(u0, s0);
    for (long n1 = -3; n1 <= 3; ++n1)
      for (long n2 = -3; n2 <= 3; ++n2)
        for (long n3 = -3; n3 <= 3; ++n3) {
          long double s = 0;
          for (int k = 0; k < 6; ++k) s += std::fabs(n1 * a[k] + n2 * b[k] + n3 * c[k]);
          const long double closed = cyclic_f(n1, n2, n3, W1, W2, W3);
          EXPECT_NEAR(static_cast<double>(closed), static_cast<double>(s), 1e-12 * static_cast<double>(s + 1));
        }
  }
}

TEST(Inequalities, SummaxAndAbsin) {
  EXPECT_TRUE(summax_check(3.0, -7.5));
  EXPECT_TRUE(absin_check(2, -3, 1.5, -0.25));
  EXPECT_TRUE(absin_check(0, 1, 0.0, 0.0));
  EXPECT_THROW(absin_check(0, 0, 1.0, 1.0), DomainError);
}

TEST(MinOneNorm, MatchesExhaustiveOracleOnRandomLattices) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 25; ++t) {
    std::array<std::array<double, 4>, 3> v{zero_sum(rng), zero_sum(rng), zero_sum(rng)};
    const std::array<double, 4> w = zero_sum(rng);
    LatticeSpec spec{{wedge2(lv(v[0]), lv(w)), wedge2(lv(v[1]), lv(w)), wedge2(lv(v[2]), lv(v[0]))}, 1 + t % 2,
                     t % 3 == 0 ? Parity::even_sum : Parity::none};
    const MinOneNormResult r = min_one_norm(spec, 120);
    ASSERT_TRUE(r.certified) << t << " lambda " << r.lambda_min_lower.to_decimal(6) << " value " << r.value.to_decimal(6);
    const auto o = oracle::exhaustive_min(
        {oracle::plucker(ld(v[0]), ld(w)), oracle::plucker(ld(v[1]), ld(w)), oracle::plucker(ld(v[2]), ld(v[0]))},
        std::max<long>(12, r.shells_searched + 1), spec.denominator, spec.parity == Parity::even_sum);
    EXPECT_NEAR(r.value.to_double(), static_cast<double>(o.value), 1e-12 * static_cast<double>(o.value)) << t;
  }
}

TEST(MinOneNorm, ParityRestrictsToEvenSums) {
  const LatticeSpec base{{wedge2(lv({1, -1, 0, 0}), lv({0, 0, 1, -1})), wedge2(lv({1, 0, -1, 0}), lv({0, 1, 0, -1})),
                          wedge2(lv({1, 0, 0, -1}), lv({0, 1, -1, 0}))},
                         2,
                         Parity::even_sum};
  const MinOneNormResult r = min_one_norm(base, 3);
  EXPECT_EQ((r.argmin[0] + r.argmin[1] + r.argmin[2]) % 2, 0);
  EXPECT_TRUE(r.certified);
}

TEST(MinOneNorm, Errors) {
  const LogVector a = lv({1, -1, 0, 0}), b = lv({0, 0, 1, -1});
  const Wedge2Vector w = wedge2(a, b);
  EXPECT_THROW(min_one_norm(LatticeSpec{{w, w, wedge2(a, lv({1, 0, -1, 0}))}, 1, Parity::none}, 5), DomainError);
  const LatticeSpec ok{{w, wedge2(a, lv({1, 0, -1, 0})), wedge2(b, lv({1, 0, -1, 0}))}, 1, Parity::none};
  EXPECT_THROW(min_one_norm(ok, 0), DomainError);
  EXPECT_NO_THROW(min_one_norm(ok, 1));
}

TEST(MinOneNorm, CertifiedAcrossPrecisions) {
  const auto build = [](mpfr_prec_t bits) {
    auto v = [&](double a, double b, double c) {
      return LogVector{{Real(a, bits), Real(b, bits), Real(c, bits), Real(-(a + b + c), bits)}, Convention::klein};
    };
    return LatticeSpec{{wedge2(v(1, 0.5, -2), v(0.25, 1, 1)), wedge2(v(0.3, -1, 0.2), v(1, 1, 1)),
                        wedge2(v(2, 0, 0.5), v(-1, 0.5, 0.1))},
                       1,
                       Parity::none};
  };
  const MinOneNormResult r = certified_min_one_norm(build, 20, 128);
  EXPECT_TRUE(r.certified);
  EXPECT_GT(r.lambda_min_lower.to_double(), 0);
}
