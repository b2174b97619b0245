#pragma once

// The k-dimensional nilpotent Fock representation of the quon algebras
// A_q (a_minus, a_plus, N) and A_qbar (a_plus_dag, a_minus_dag, N).
// Basis order is |0>, ..., |k-1>; matrices act on column vectors.

#include <Eigen/Dense>

#include "kfermion/qcore.hpp"
#include "kfermion/report.hpp"

namespace kfermion {

using FockOperator = Eigen::MatrixXcd;

struct QuonRep {
  static constexpr double s = 0.5;

  DeformationParams params;
  FockOperator a_minus;
  FockOperator a_plus;
  FockOperator a_plus_dag;
  FockOperator a_minus_dag;
  FockOperator number_op;
};

/// a_minus|n> = sqrt([n]_q)|n-1>, a_plus|n> = sqrt([n+1]_q)|n+1>,
/// a_plus_dag|n> = sqrt([n]_qbar)|n-1>, a_minus_dag|n> = sqrt([n+1]_qbar)|n+1>.
/// The A_qbar pair is built from its own coefficients, not by adjoining.
QuonRep build_rep(const DeformationParams& params);

/// q-commutators a_- a_+ - q a_+ a_- = 1 and its A_qbar mirror, plus the
/// number-operator commutators, as matrix identities.
VerificationReport verify_defining_relations(const QuonRep& rep);

/// Consequences of the defining relations: diagonal forms of a_- a_+ and
/// a_+ a_-, ladder identities for every power l < k, number shifts,
/// nilpotency of order exactly k, basis generation from the vacuum, the
/// mixed exchange a_- a_+^+ = q^{-1/2} a_+^+ a_-, and adjointness of the
/// A_qbar generators.
VerificationReport verify_derived_relations(const QuonRep& rep);

FockOperator matrix_power(const FockOperator& m, int n);
FockOperator identity(int dim);

}  // namespace kfermion
