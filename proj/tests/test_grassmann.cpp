#include <random>

#include <gtest/gtest.h>

#include "kfermion/grassmann.hpp"
#include "kfermion/serialize.hpp"

using namespace kfermion;

namespace {

DeformationParams P(int k) { return DeformationParams::make(k, 1e-9); }

GrassmannElement mono(const DeformationParams& p, int a, int b, Complex c = 1.0) {
  return GrassmannElement::monomial(p, a, b, c);
}

GrassmannElement random_element(const DeformationParams& p, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::bernoulli_distribution keep(0.6);
  GrassmannElement e(p);
  for (int a = 0; a < p.k(); ++a)
    for (int b = 0; b < p.k(); ++b)
      if (keep(rng)) e.add_term(a, b, Complex(u(rng), u(rng)));
  return e;
}

}  // namespace

TEST(Grassmann, SwapRule) {
  for (int k = 2; k <= 8; ++k) {
    const auto p = P(k);
    const auto z = GrassmannElement::z(p);
    const auto zb = GrassmannElement::zbar(p);
    EXPECT_EQ(z * zb, mono(p, 1, 1));
    EXPECT_LT(relative_residual(zb * z, mono(p, 1, 1, std::polar(1.0, -std::numbers::pi / k))), 1e-15);
    EXPECT_TRUE((power(z, k - 1) * z).is_zero());
    EXPECT_TRUE(power(zb, k).is_zero());
    EXPECT_FALSE(power(z, k - 1).is_zero());
  }
}

TEST(Grassmann, CanonicalZeroAndExponentBound) {
  const auto p = P(3);
  GrassmannElement e(p);
  e.add_term(1, 1, 2.0);
  e.add_term(1, 1, -2.0);
  EXPECT_TRUE(e.is_zero());
  e.add_term(3, 0, 1.0);
  EXPECT_TRUE(e.is_zero());
  EXPECT_THROW(mono(p, -1, 0), std::invalid_argument);
  EXPECT_EQ(GrassmannElement(p).to_string(), "0");
}

TEST(Grassmann, MismatchedKRejected) {
  EXPECT_THROW(multiply(GrassmannElement::z(P(3)), GrassmannElement::z(P(4))), std::invalid_argument);
  EXPECT_THROW(GrassmannElement::z(P(3)) + GrassmannElement::z(P(4)), std::invalid_argument);
}

TEST(Grassmann, AssociativityOnRandomTriples) {
  std::mt19937 rng(2024);
  for (int k = 2; k <= 7; ++k) {
    const auto p = P(k);
    for (int t = 0; t < 25; ++t) {
      const auto x = random_element(p, rng);
      const auto y = random_element(p, rng);
      const auto w = random_element(p, rng);
      EXPECT_LT(relative_residual((x * y) * w, x * (y * w)), 1e-12);
      // Distributivity as a second sanity check on the rewrite.
      EXPECT_LT(relative_residual(x * (y + w), x * y + x * w), 1e-12);
    }
  }
}

TEST(Grassmann, MonomialLaw) {
  // (z^a1 zbar^b1)(z^a2 zbar^b2) = q^{-a2 b1/2} z^{a1+a2} zbar^{b1+b2}
  for (int k = 2; k <= 6; ++k) {
    const auto p = P(k);
    for (int a1 = 0; a1 < k; ++a1)
      for (int b1 = 0; b1 < k; ++b1)
        for (int a2 = 0; a2 < k; ++a2)
          for (int b2 = 0; b2 < k; ++b2) {
            const auto got = mono(p, a1, b1) * mono(p, a2, b2);
            GrassmannElement want(p);
            if (a1 + a2 < k && b1 + b2 < k) {
              want = mono(p, a1 + a2, b1 + b2, std::polar(1.0, -std::numbers::pi * a2 * b1 / k));
            }
            EXPECT_LT(relative_residual(got, want), 1e-14);
          }
  }
}

TEST(Grassmann, Derivatives) {
  const auto p = P(5);
  for (int n = 1; n < 5; ++n) {
    EXPECT_LT(relative_residual(d_z(mono(p, n, 0)), mono(p, n - 1, 0, p.qnum(n))), 1e-15);
    EXPECT_LT(relative_residual(d_zbar(mono(p, 0, n)), mono(p, 0, n - 1, p.qnum_bar(n))), 1e-15);
  }
  EXPECT_TRUE(d_z(mono(p, 0, 3)).is_zero());
  // mixed monomial: d_zbar(z^2 zbar^3) = q^{-1} [3]_qbar z^2 zbar^2
  EXPECT_LT(relative_residual(d_zbar(mono(p, 2, 3)), mono(p, 2, 2, p.q_pow(-1) * p.qnum_bar(3))), 1e-15);
}

TEST(Grassmann, DerivativeCommutationOnEveryMonomial) {
  for (int k = 2; k <= 8; ++k) {
    const auto p = P(k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        const auto m = mono(p, a, b);
        EXPECT_LT(relative_residual(d_z(d_zbar(m)), p.q_half_pow(-1) * d_zbar(d_z(m))), 1e-12);
      }
  }
}

TEST(Grassmann, DerivativePowersVanish) {
  for (int k = 2; k <= 8; ++k) {
    const auto p = P(k);
    const auto dz = GrassmannOperator::power(GrassmannOperator::generator(GrassmannOpKind::Dz), k);
    const auto dzb = GrassmannOperator::power(GrassmannOperator::generator(GrassmannOpKind::Dzbar), k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        EXPECT_TRUE(dz.apply(mono(p, a, b)).is_zero());
        EXPECT_TRUE(dzb.apply(mono(p, a, b)).is_zero());
      }
    EXPECT_EQ(dz.kind(), GrassmannOpKind::Composition);
  }
}

TEST(Grassmann, Berezin) {
  const auto p = P(4);
  for (int j = 0; j < 3; ++j) EXPECT_TRUE(berezin_z(mono(p, j, 0)).is_zero());
  EXPECT_EQ(berezin_z(mono(p, 3, 0)), GrassmannElement::constant(p, 1.0));
  const auto f = mono(p, 3, 1, 3.0) + GrassmannElement::z(p);
  EXPECT_EQ(berezin_z(f), mono(p, 0, 1, 3.0));
  EXPECT_EQ(berezin_zbar(mono(p, 2, 3, 5.0)), mono(p, 2, 0, 5.0));
}

TEST(Grassmann, RealizationMatchesFock) {
  for (int k = 2; k <= 8; ++k) {
    const auto p = P(k);
    const auto rep = build_rep(p);
    auto real = [&](GrassmannOpKind kind) {
      return realization_matrix(GrassmannOperator::generator(kind), p);
    };
    EXPECT_LT(relative_residual(real(GrassmannOpKind::Dz), rep.a_minus), 1e-12);
    EXPECT_LT(relative_residual(real(GrassmannOpKind::MultiplyZ), rep.a_plus), 1e-12);
    EXPECT_LT(relative_residual(real(GrassmannOpKind::Dzbar), rep.a_plus_dag), 1e-12);
    EXPECT_LT(relative_residual(real(GrassmannOpKind::MultiplyZbar), rep.a_minus_dag), 1e-12);
    EXPECT_TRUE(realization_check(rep).all_passed());
  }
  const auto p = P(2);
  FockOperator down(2, 2);
  down << 0, 1, 0, 0;
  EXPECT_LT(relative_residual(realization_matrix(GrassmannOperator::generator(GrassmannOpKind::Dz), p), down),
            1e-15);
  const auto mixed = GrassmannOperator::compose(GrassmannOperator::generator(GrassmannOpKind::Dz),
                                                GrassmannOperator::generator(GrassmannOpKind::MultiplyZbar));
  EXPECT_THROW(realization_matrix(mixed, p), std::invalid_argument);
}

TEST(Grassmann, ReorderIdentity) {
  const auto p = P(5);
  // zbar^2 z^2 = q^{-2} z^2 zbar^2 for k = 5
  const auto lhs = power(GrassmannElement::zbar(p), 2) * power(GrassmannElement::z(p), 2);
  EXPECT_LT(relative_residual(lhs, mono(p, 2, 2, p.q_pow(-2))), 1e-15);
  for (int k = 2; k <= 8; ++k) {
    const auto pk = P(k);
    for (int n = 0; n < k; ++n) EXPECT_TRUE(reorder_identity_check(n, pk).all_passed());
    EXPECT_THROW(reorder_identity_check(k, pk), std::invalid_argument);
  }
}

TEST(Grassmann, SuiteChecksPass) {
  for (int k = 2; k <= 8; ++k) {
    const auto p = P(k);
    EXPECT_TRUE(algebra_check(p).all_passed()) << k;
    EXPECT_TRUE(derivative_check(p).all_passed()) << k;
    EXPECT_TRUE(berezin_check(p).all_passed()) << k;
  }
}

TEST(Grassmann, TextAndJson) {
  const auto p = P(3);
  const auto e = mono(p, 2, 1, Complex(1.0, 1.0)) + GrassmannElement::constant(p, 0.5);
  EXPECT_EQ(e.to_string(), "(0.5+0i)·1 + (1+1i)·z^2 z̄^1");
  const auto j = element_to_json(e);
  EXPECT_EQ(j.at("k"), 3);
  EXPECT_EQ(element_from_json(j), e);
  auto bad = j;
  bad["terms"][0]["exp"] = {3, 0};
  EXPECT_THROW(element_from_json(bad), std::invalid_argument);
}
