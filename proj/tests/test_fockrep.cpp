#include <cmath>

#include <gtest/gtest.h>

#include "kfermion/fockrep.hpp"

using namespace kfermion;

namespace {

const Complex I{0.0, 1.0};

DeformationParams P(int k) { return DeformationParams::make(k, 1e-9); }

double max_abs(const FockOperator& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(FockRep, FermionMatrices) {
  const auto rep = build_rep(P(2));
  FockOperator down(2, 2);
  down << 0, 1, 0, 0;
  EXPECT_LT(max_abs(rep.a_minus - down), 1e-15);
  EXPECT_LT(max_abs(rep.a_plus - down.transpose()), 1e-15);
  // k = 2: a_- a_+ + a_+ a_- = 1
  EXPECT_LT(max_abs(rep.a_minus * rep.a_plus + rep.a_plus * rep.a_minus - identity(2)), 1e-15);
}

TEST(FockRep, NumberProductK4) {
  const auto rep = build_rep(P(4));
  FockOperator want = FockOperator::Zero(4, 4);
  want.diagonal() << 0, 1, Complex(1, 1), I;
  EXPECT_LT(max_abs(rep.a_plus * rep.a_minus - want), 1e-14);
  for (int n = 0; n < 4; ++n) EXPECT_EQ(rep.number_op(n, n), Complex(n, 0));
}

TEST(FockRep, BarPairIsAdjoint) {
  for (int k = 2; k <= 16; ++k) {
    const auto rep = build_rep(P(k));
    EXPECT_LT(max_abs(rep.a_plus_dag - rep.a_plus.adjoint()), 1e-14) << k;
    EXPECT_LT(max_abs(rep.a_minus_dag - rep.a_minus.adjoint()), 1e-14) << k;
  }
}

TEST(FockRep, DefiningRelationsHold) {
  for (int k = 2; k <= 16; ++k) {
    const auto rep = build_rep(P(k));
    const auto r = verify_defining_relations(rep);
    EXPECT_TRUE(r.all_passed()) << "k=" << k;
    for (const char* tag : {"Eq.1", "Eq.2a", "Eq.2b", "Eq.16", "Eq.17a", "Eq.17b"}) {
      EXPECT_FALSE(r.find(tag, k).empty()) << tag;
    }
  }
}

TEST(FockRep, DerivedRelationsHold) {
  for (int k = 2; k <= 16; ++k) {
    const auto r = verify_derived_relations(build_rep(P(k)));
    for (const auto& e : r.entries()) EXPECT_TRUE(e.passed) << e.equation_tag << " k=" << k << " " << e.detail;
    EXPECT_FALSE(r.find("Eq.20").empty());
    EXPECT_FALSE(r.find("Eq.9a").empty());
  }
}

TEST(FockRep, Nilpotency) {
  for (int k = 2; k <= 16; ++k) {
    const auto rep = build_rep(P(k));
    EXPECT_LT(max_abs(matrix_power(rep.a_plus, k)), 1e-12);
    EXPECT_LT(max_abs(matrix_power(rep.a_minus, k)), 1e-12);
    EXPECT_GT(max_abs(matrix_power(rep.a_plus, k - 1)), 1e-3);
    EXPECT_GT(max_abs(matrix_power(rep.a_minus, k - 1)), 1e-3);
  }
}

TEST(FockRep, MixedExchangePhase) {
  // a_- a_+^+ = q^{-1/2} a_+^+ a_- checked entry by entry.
  for (int k = 2; k <= 10; ++k) {
    const auto p = P(k);
    const auto rep = build_rep(p);
    const FockOperator lhs = rep.a_minus * rep.a_plus_dag;
    const FockOperator rhs = p.q_half_pow(-1) * rep.a_plus_dag * rep.a_minus;
    EXPECT_LT(max_abs(lhs - rhs), 1e-13) << k;
  }
}

TEST(FockRep, TamperedGeneratorFails) {
  auto rep = build_rep(P(4));
  rep.a_plus *= 2.0;
  const auto r = verify_defining_relations(rep);
  ASSERT_FALSE(r.find("Eq.1").empty());
  EXPECT_FALSE(r.find("Eq.1").front()->passed);
  EXPECT_GT(r.max_residual("Eq.1"), 0.1);
}

TEST(FockRep, MatrixPowerEdges) {
  const auto rep = build_rep(P(3));
  EXPECT_EQ(matrix_power(rep.a_plus, 0), identity(3));
  EXPECT_EQ(matrix_power(rep.a_plus, 1), rep.a_plus);
  EXPECT_THROW(matrix_power(rep.a_plus, -1), std::invalid_argument);
}
