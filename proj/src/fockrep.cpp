#include "kfermion/fockrep.hpp"

#include <stdexcept>
#include <string>

namespace kfermion {

namespace {

FockOperator commutator(const FockOperator& a, const FockOperator& b) { return a * b - b * a; }

FockOperator diagonal_of(const Eigen::VectorXcd& d) { return d.asDiagonal(); }

ParamMap ell_param(int ell) { return {{"l", std::to_string(ell)}}; }

}  // namespace

FockOperator identity(int dim) { return FockOperator::Identity(dim, dim); }

FockOperator matrix_power(const FockOperator& m, int n) {
  if (n < 0) throw std::invalid_argument("matrix_power: negative exponent");
  FockOperator result = identity(static_cast<int>(m.rows()));
  for (int i = 0; i < n; ++i) result = result * m;
  return result;
}

QuonRep build_rep(const DeformationParams& params) {
  const int k = params.k();
  QuonRep rep{params,
              FockOperator::Zero(k, k),
              FockOperator::Zero(k, k),
              FockOperator::Zero(k, k),
              FockOperator::Zero(k, k),
              FockOperator::Zero(k, k)};
  for (int n = 0; n < k; ++n) {
    rep.number_op(n, n) = static_cast<double>(n);
    if (n > 0) {
      rep.a_minus(n - 1, n) = std::sqrt(params.qnum(n));
      rep.a_plus_dag(n - 1, n) = std::sqrt(params.qnum_bar(n));
    }
    if (n < k - 1) {
      rep.a_plus(n + 1, n) = std::sqrt(params.qnum(n + 1));
      rep.a_minus_dag(n + 1, n) = std::sqrt(params.qnum_bar(n + 1));
    }
  }
  return rep;
}

VerificationReport verify_defining_relations(const QuonRep& rep) {
  const auto& p = rep.params;
  const int k = p.k();
  const double tol = p.tol();
  const FockOperator one = identity(k);
  const auto& am = rep.a_minus;
  const auto& ap = rep.a_plus;
  const auto& apd = rep.a_plus_dag;
  const auto& amd = rep.a_minus_dag;
  const auto& N = rep.number_op;

  VerificationReport r;
  r.add("Eq.1", k, relative_residual(am * ap - p.q() * ap * am, one), tol);
  r.add("Eq.2a", k, relative_residual(commutator(N, am), -am), tol);
  r.add("Eq.2b", k, relative_residual(commutator(N, ap), ap), tol);
  r.add("Eq.16", k, relative_residual(apd * amd - p.q_bar() * amd * apd, one), tol);
  r.add("Eq.17a", k, relative_residual(commutator(N, apd), -apd), tol);
  r.add("Eq.17b", k, relative_residual(commutator(N, amd), amd), tol);
  return r;
}

VerificationReport verify_derived_relations(const QuonRep& rep) {
  const auto& p = rep.params;
  const int k = p.k();
  const double tol = p.tol();
  const FockOperator one = identity(k);
  const auto& am = rep.a_minus;
  const auto& ap = rep.a_plus;
  const auto& N = rep.number_op;

  VerificationReport r;

  Eigen::VectorXcd upper(k), lower(k);
  for (int n = 0; n < k; ++n) {
    upper(n) = p.qnum(n + 1);
    lower(n) = p.qnum(n);
  }
  r.add("Eq.4a", k, relative_residual(am * ap, diagonal_of(upper)), tol);
  r.add("Eq.4b", k, relative_residual(ap * am, diagonal_of(lower)), tol);

  Eigen::VectorXcd levels(k);
  for (int n = 0; n < k; ++n) levels(n) = static_cast<double>(n);
  r.add("Eq.13", k, relative_residual(N, diagonal_of(levels)), tol);

  for (int ell = 1; ell <= k - 1; ++ell) {
    const FockOperator ap_l = matrix_power(ap, ell);
    const FockOperator am_l = matrix_power(am, ell);
    const Complex c = p.qnum(ell);
    const Complex ql = p.q_pow(ell);
    r.add("Eq.6a", k,
          relative_residual(am * ap_l, c * matrix_power(ap, ell - 1) + ql * ap_l * am), tol,
          ell_param(ell));
    r.add("Eq.6b", k,
          relative_residual(am_l * ap, c * matrix_power(am, ell - 1) + ql * ap * am_l), tol,
          ell_param(ell));
  }

  const FockOperator ap_k = matrix_power(ap, k);
  const FockOperator am_k = matrix_power(am, k);
  r.add("Eq.7a", k, relative_residual(am * ap_k, ap_k * am), tol, ell_param(k));
  r.add("Eq.7b", k, relative_residual(am_k * ap, ap * am_k), tol, ell_param(k));

  for (int ell = 1; ell <= k; ++ell) {
    const FockOperator shift = N + static_cast<double>(ell) * one;
    const FockOperator ap_l = matrix_power(ap, ell);
    const FockOperator am_l = matrix_power(am, ell);
    r.add("Eq.8a", k, relative_residual(N * ap_l, ap_l * shift), tol, ell_param(ell));
    r.add("Eq.8b", k, relative_residual(am_l * N, shift * am_l), tol, ell_param(ell));
  }

  // Nilpotency: absolute norm of the k-th power, and a nonzero (k-1)-th power.
  r.add("Eq.9a", k, ap_k.norm(), tol, {{"check", "power k vanishes"}});
  r.add("Eq.9b", k, am_k.norm(), tol, {{"check", "power k vanishes"}});
  const double ap_km1 = matrix_power(ap, k - 1).norm();
  const double am_km1 = matrix_power(am, k - 1).norm();
  r.add("Eq.9a", k, ap_km1 > 0.5 ? 0.0 : 1.0, tol, {{"check", "power k-1 nonzero"}},
        "||a_+^(k-1)||_F = " + format_double(ap_km1));
  r.add("Eq.9b", k, am_km1 > 0.5 ? 0.0 : 1.0, tol, {{"check", "power k-1 nonzero"}},
        "||a_-^(k-1)||_F = " + format_double(am_km1));

  // |n> = (a_+)^n |0> / sqrt([n]_q!)
  double worst = 0.0;
  Eigen::VectorXcd v = Eigen::VectorXcd::Unit(k, 0);
  for (int n = 0; n < k; ++n) {
    if (n > 0) v = ap * v;
    const Eigen::VectorXcd state = v / qfactorial_sqrt(n, p.q());
    worst = std::max(worst, relative_residual(state, Eigen::VectorXcd::Unit(k, n)));
  }
  r.add("Eq.14", k, worst, tol);

  r.add("Eq.20", k,
        relative_residual(am * rep.a_plus_dag, p.q_half_pow(-1) * rep.a_plus_dag * am), tol,
        {{"form", "a_- a_+^+ = q^-1/2 a_+^+ a_-"}});
  r.add("Eq.20", k,
        relative_residual(ap * rep.a_minus_dag, p.q_half_pow(1) * rep.a_minus_dag * ap), tol,
        {{"form", "a_+ a_-^+ = q^+1/2 a_-^+ a_+"}});

  r.add("Eq.19", k, relative_residual(rep.a_plus_dag, ap.adjoint()), tol,
        {{"check", "a_+^+ equals adjoint of a_+"}});
  r.add("Eq.19", k, relative_residual(rep.a_minus_dag, am.adjoint()), tol,
        {{"check", "a_-^+ equals adjoint of a_-"}});
  return r;
}

}  // namespace kfermion
