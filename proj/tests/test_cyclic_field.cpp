#include <gtest/gtest.h>

#include <random>

#include "unitlat/cyclic_field.hpp"

using namespace unitlat;

namespace {

const Quartic kZeta16{2, 0, -4, 0, 1};         // x⁴ - 4x² + 2
const Quartic kZeta15{1, 4, -4, -1, 1};        // x⁴ - x³ - 4x² + 4x + 1

CyclicElem theta(const std::shared_ptr<const CyclicQuarticField>& f) { return CyclicElem(f, {0, 1, 0, 0}); }

}  // namespace

TEST(CyclicField, Zeta16Structure) {
  const auto f = CyclicQuarticField::create(kZeta16);
  EXPECT_EQ(f->quadratic_subfield_d(), 2);
  // σ(θ) = θ³ - 3θ for θ = 2cos(π/8)
  EXPECT_EQ(f->automorphism(CyclicGalois::sigma), (PowerCoords{0, -3, 0, 1}));
  const CyclicElem r2(f, f->sqrt_d());
  EXPECT_EQ(r2 * r2, CyclicElem::rational(f, 2));
  EXPECT_EQ(r2, CyclicElem(f, {-2, 0, 1, 0}));
}

TEST(CyclicField, GroupIsCyclicOfOrderFour) {
  for (const Quartic& p : {kZeta16, kZeta15}) {
    const auto f = CyclicQuarticField::create(p);
    const CyclicElem t = theta(f);
    EXPECT_NE(t.apply(CyclicGalois::sigma2), t);
    EXPECT_EQ(t.apply(CyclicGalois::sigma).apply(CyclicGalois::sigma).apply(CyclicGalois::sigma).apply(CyclicGalois::sigma), t);
    for (int g = 0; g < 4; ++g)
      for (int h = 0; h < 4; ++h) {
        const auto G = static_cast<CyclicGalois>(g), H = static_cast<CyclicGalois>(h);
        EXPECT_EQ(t.apply(H).apply(G), t.apply(cyclic_compose(G, H)));
      }
    // σ² fixes √d, σ negates it
    const CyclicElem r(f, f->sqrt_d());
    EXPECT_EQ(r.apply(CyclicGalois::sigma2), r);
    EXPECT_EQ(r.apply(CyclicGalois::sigma), -r);
  }
}

TEST(CyclicField, Zeta15) {
  const auto f = CyclicQuarticField::create(kZeta15);
  EXPECT_EQ(f->quadratic_subfield_d(), 5);
}

TEST(CyclicField, RejectsNonCyclicInputs) {
  EXPECT_THROW(CyclicQuarticField::create({1, 0, -10, 0, 1}), DomainError);  // Q(√2, √3): Klein group
  EXPECT_THROW(CyclicQuarticField::create({-2, 0, 0, 0, 1}), DomainError);   // not totally real
  EXPECT_THROW(CyclicQuarticField::create({2, 0, -3, 0, 1}), DomainError);   // (x²-1)(x²-2)
  EXPECT_THROW(CyclicQuarticField::create({-1, -1, 0, 0, 1}), DomainError);  // two real roots
  EXPECT_THROW(CyclicQuarticField::create({2, 0, -4, 0, 2}), DomainError);   // not monic
}

TEST(CyclicField, ArithmeticLaws) {
  const auto f = CyclicQuarticField::create(kZeta16);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
  auto rnd = [&] {
    return CyclicElem(f, {Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                          Rational(num(rng), den(rng))});
  };
  for (int t = 0; t < 100; ++t) {
    const CyclicElem x = rnd(), y = rnd();
    EXPECT_EQ((x * y).apply(CyclicGalois::sigma), x.apply(CyclicGalois::sigma) * y.apply(CyclicGalois::sigma));
    EXPECT_EQ((x * y).norm_to_Q(), x.norm_to_Q() * y.norm_to_Q());
    if (!x.is_zero()) EXPECT_EQ(x * x.inverse(), CyclicElem::rational(f, 1));
    const auto cp = x.characteristic_polynomial();
    CyclicElem acc = CyclicElem::rational(f, 0);
    for (int k = 4; k >= 0; --k) acc = acc * x + CyclicElem::rational(f, cp[static_cast<std::size_t>(k)]);
    EXPECT_TRUE(acc.is_zero());
    // N_{L/l} lands in l: fixed by σ²
    EXPECT_EQ(x.norm_to_l().apply(CyclicGalois::sigma2), x.norm_to_l());
  }
}

TEST(CyclicField, EmbeddingsFollowGaloisOrder) {
  const auto f = CyclicQuarticField::create(kZeta16);
  const CyclicElem t = theta(f);
  const auto e = embed_real(t, 128);
  const auto es = embed_real(t.apply(CyclicGalois::sigma), 128);
  // embedding g of σx equals embedding gσ of x
  for (int g = 0; g < 4; ++g) {
    const auto gs = static_cast<std::size_t>(cyclic_compose(static_cast<CyclicGalois>(g), CyclicGalois::sigma));
    EXPECT_LT(abs(es[static_cast<std::size_t>(g)] - e[gs]).to_double(), 1e-30);
  }
  EXPECT_NEAR(e[0].to_double(), 2 * std::cos(M_PI / 8), 1e-15);
}

TEST(CyclicField, LiftOfQuadraticElement) {
  const auto f = CyclicQuarticField::create(kZeta16);
  const CyclicElem u = CyclicElem::lift(f, QuadElem(2, 1, 1));
  EXPECT_EQ(u, CyclicElem(f, {-1, 0, 1, 0}));
  EXPECT_TRUE(is_unit(u));
  EXPECT_THROW(CyclicElem::lift(f, QuadElem(3, 1, 1)), DomainError);
}
