#include "kfermion/phase.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace kfermion {

namespace {

int sign_value(PhaseSign s) { return static_cast<int>(s); }

const char* sign_label(PhaseSign s) { return s == PhaseSign::Plus ? "+" : "-"; }

ParamMap theta_params(double theta0, PhaseSign s) {
  return {{"theta0", format_double(theta0)}, {"sign", sign_label(s)}};
}

}  // namespace

PhaseConfig PhaseConfig::make(double theta0, int k) {
  if (!std::isfinite(theta0)) throw std::invalid_argument("theta0 must be finite");
  const double phase = k * theta0;
  return PhaseConfig{theta0, std::polar(1.0, phase), std::polar(1.0, -phase)};
}

PhaseBasis phase_states(int k, const PhaseConfig& cfg) {
  if (k < 2) throw std::invalid_argument("phase_states: k must be >= 2");
  PhaseBasis b{k, std::vector<double>(k), Eigen::MatrixXcd(k, k)};
  const double norm = 1.0 / std::sqrt(static_cast<double>(k));
  for (int m = 0; m < k; ++m) {
    b.angles[m] = cfg.theta0 + 2.0 * std::numbers::pi * m / k;
    for (int n = 0; n < k; ++n) b.vectors(n, m) = norm * std::polar(1.0, n * b.angles[m]);
  }
  return b;
}

VerificationReport phase_basis_check(const PhaseBasis& basis, double tol) {
  const int k = basis.k;
  VerificationReport r;
  r.add("Eq.70", k, relative_residual(basis.vectors.adjoint() * basis.vectors, identity(k)), tol,
        {{"check", "orthonormal"}});

  // Column n of the inverse expansion must reproduce |n>.
  const double norm = 1.0 / std::sqrt(static_cast<double>(k));
  Eigen::MatrixXcd back(k, k);
  for (int n = 0; n < k; ++n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(k);
    for (int m = 0; m < k; ++m) v += norm * std::polar(1.0, -n * basis.angles[m]) * basis.vectors.col(m);
    back.col(n) = v;
  }
  r.add("Eq.73", k, relative_residual(back, identity(k)), tol);
  return r;
}

FockOperator phase_operator(const PhaseBasis& basis) {
  Eigen::VectorXcd theta(basis.k);
  for (int m = 0; m < basis.k; ++m) theta(m) = basis.angles[m];
  return basis.vectors * theta.asDiagonal() * basis.vectors.adjoint();
}

VerificationReport phase_operator_check(const PhaseBasis& basis, double tol) {
  const int k = basis.k;
  const FockOperator phi = phase_operator(basis);
  VerificationReport r;
  r.add("Eq.74", k, relative_residual(phi, phi.adjoint()), tol, {{"check", "hermitean"}});

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(phi);
  double worst_eig = 0.0;
  double worst_diag = 0.0;
  for (int m = 0; m < k; ++m) {
    worst_eig = std::max(worst_eig, std::abs(es.eigenvalues()(m) - basis.angles[m]) /
                                        std::max(1.0, std::abs(basis.angles[m])));
    const Complex diag = basis.vectors.col(m).dot(phi * basis.vectors.col(m));
    worst_diag = std::max(worst_diag, relative_residual(diag, Complex(basis.angles[m], 0.0)));
  }
  r.add("Eq.74", k, worst_eig, tol, {{"check", "spectrum"}});
  r.add("Eq.74", k, worst_diag, tol, {{"check", "eigenvector expectation"}});
  return r;
}

FockOperator exp_phase(const PhaseBasis& basis, PhaseSign sign) {
  Eigen::VectorXcd ph(basis.k);
  for (int m = 0; m < basis.k; ++m) ph(m) = std::polar(1.0, sign_value(sign) * basis.angles[m]);
  return basis.vectors * ph.asDiagonal() * basis.vectors.adjoint();
}

FockOperator exp_phase_shift(int k, const PhaseConfig& cfg, PhaseSign sign) {
  FockOperator m = FockOperator::Zero(k, k);
  if (sign == PhaseSign::Plus) {
    m(k - 1, 0) = cfg.omega_plus;
    for (int i = 1; i < k; ++i) m(i - 1, i) = 1.0;
  } else {
    m(0, k - 1) = cfg.omega_minus;
    for (int i = 1; i < k; ++i) m(i, i - 1) = 1.0;
  }
  return m;
}

VerificationReport exp_phase_check(const PhaseBasis& basis, const PhaseConfig& cfg, double tol) {
  const int k = basis.k;
  VerificationReport r;
  const FockOperator plus = exp_phase(basis, PhaseSign::Plus);
  const FockOperator minus = exp_phase(basis, PhaseSign::Minus);

  for (PhaseSign s : {PhaseSign::Plus, PhaseSign::Minus}) {
    const FockOperator& spectral = s == PhaseSign::Plus ? plus : minus;
    const FockOperator shift = exp_phase_shift(k, cfg, s);
    auto& e = r.add(s == PhaseSign::Plus ? "Eq.79" : "Eq.80", k,
                    relative_residual(spectral, shift), tol, theta_params(cfg.theta0, s),
                    "spectral vs shift matrix");
    if (!e.passed) {
      std::ostringstream os;
      os << "spectral=\n" << spectral << "\nshift=\n" << shift;
      e.detail = os.str();
    }
  }

  // Column actions on the number basis.
  double worst_plus = 0.0;
  double worst_minus = 0.0;
  for (int n = 0; n < k; ++n) {
    Eigen::VectorXcd want_plus = Eigen::VectorXcd::Zero(k);
    want_plus(n == 0 ? k - 1 : n - 1) = n == 0 ? cfg.omega_plus : Complex(1.0, 0.0);
    worst_plus = std::max(worst_plus, relative_residual(plus.col(n), want_plus));
    Eigen::VectorXcd want_minus = Eigen::VectorXcd::Zero(k);
    want_minus(n == k - 1 ? 0 : n + 1) = n == k - 1 ? cfg.omega_minus : Complex(1.0, 0.0);
    worst_minus = std::max(worst_minus, relative_residual(minus.col(n), want_minus));
  }
  r.add("Eq.76", k, worst_plus, tol, {{"theta0", format_double(cfg.theta0)}});
  r.add("Eq.77", k, worst_minus, tol, {{"theta0", format_double(cfg.theta0)}});
  r.add("Eq.75", k, relative_residual(plus * minus, identity(k)), tol,
        {{"theta0", format_double(cfg.theta0)}, {"check", "e^{+i phi} e^{-i phi} = 1"}});

  r.merge(periodicity_check(plus, k, cfg.omega_plus, "Eq.81", tol, theta_params(cfg.theta0, PhaseSign::Plus)));
  r.merge(periodicity_check(minus, k, cfg.omega_minus, "Eq.81", tol, theta_params(cfg.theta0, PhaseSign::Minus)));
  // The shift has order exactly k: one power short must not be a multiple of 1.
  const double short_defect =
      relative_residual(matrix_power(plus, k - 1), cfg.omega_plus * identity(k));
  r.add("Eq.81", k, short_defect > 1e-6 ? 0.0 : 1.0, tol,
        {{"theta0", format_double(cfg.theta0)}, {"check", "power k-1 is not omega I"}},
        "defect = " + format_double(short_defect));
  return r;
}

VerificationReport periodicity_check(const FockOperator& op, int k, Complex expected,
                                     std::string_view tag, double tol, ParamMap params) {
  const FockOperator target = expected * identity(static_cast<int>(op.rows()));
  VerificationReport r;
  auto& e = r.add(tag, k, relative_residual(matrix_power(op, k), target), tol, std::move(params));
  if (!e.passed) e.detail = "||op^k - expected I|| exceeds tolerance";
  return r;
}

FockOperator quon_phase(const QuonRep& rep, const PhaseConfig& cfg, PhaseSign sign) {
  const auto& p = rep.params;
  const int k = p.k();
  if (sign == PhaseSign::Plus) {
    const Complex scale = 1.0 / principal_root(qfactorial(k - 1, p.q()), k);
    return scale * (rep.a_minus + cfg.omega_plus * matrix_power(rep.a_plus, k - 1));
  }
  const Complex scale = 1.0 / principal_root(qfactorial(k - 1, p.q_bar()), k);
  return scale * (rep.a_minus_dag + cfg.omega_minus * matrix_power(rep.a_plus_dag, k - 1));
}

VerificationReport quon_phase_check(const QuonRep& rep, const PhaseConfig& cfg) {
  const auto& p = rep.params;
  const int k = p.k();
  const double tol = p.tol();
  const FockOperator ep = quon_phase(rep, cfg, PhaseSign::Plus);
  const FockOperator em = quon_phase(rep, cfg, PhaseSign::Minus);
  const ParamMap th{{"theta0", format_double(cfg.theta0)}};
  VerificationReport r;

  // Explicit actions, with the wrap coefficient ([k-1]!)^{1/2 - 1/k} omega.
  const Complex fq = qfactorial(k - 1, p.q());
  const Complex fqb = qfactorial(k - 1, p.q_bar());
  const Complex inv_root_q = 1.0 / principal_root(fq, k);
  const Complex inv_root_qb = 1.0 / principal_root(fqb, k);
  FockOperator want_plus = FockOperator::Zero(k, k);
  FockOperator want_minus = FockOperator::Zero(k, k);
  for (int n = 1; n < k; ++n) want_plus(n - 1, n) = inv_root_q * std::sqrt(p.qnum(n));
  want_plus(k - 1, 0) = qfactorial_sqrt(k - 1, p.q()) * inv_root_q * cfg.omega_plus;
  for (int n = 0; n < k - 1; ++n) want_minus(n + 1, n) = inv_root_qb * std::sqrt(p.qnum_bar(n + 1));
  want_minus(0, k - 1) = qfactorial_sqrt(k - 1, p.q_bar()) * inv_root_qb * cfg.omega_minus;
  r.add("Eq.84", k, relative_residual(ep, want_plus), tol, th);
  r.add("Eq.85", k, relative_residual(em, want_minus), tol, th);

  r.add("Eq.83", k, relative_residual(em, ep.adjoint()), tol,
        {{"theta0", format_double(cfg.theta0)}, {"check", "E- is the adjoint of E+"}});

  const FockOperator pm = ep * em;
  const FockOperator mp = em * ep;
  ParamMap d1 = th, d2 = th;
  d1["check"] = "E+ E- diagonal";
  d2["check"] = "E- E+ diagonal";
  r.add("Eq.84", k, off_diagonal_norm(pm) / std::max(1.0, pm.norm()), tol, d1);
  r.add("Eq.85", k, off_diagonal_norm(mp) / std::max(1.0, mp.norm()), tol, d2);

  r.merge(periodicity_check(ep, k, cfg.omega_plus, "Eq.86", tol, theta_params(cfg.theta0, PhaseSign::Plus)));
  r.merge(periodicity_check(em, k, cfg.omega_minus, "Eq.86", tol, theta_params(cfg.theta0, PhaseSign::Minus)));

  // Structure: unitary for k <= 3 (all ladder weights have modulus one),
  // non-unitary from k = 4 on; Hermitean with square 1 for k = 2, omega = 1.
  const double unitarity_defect = relative_residual(ep * ep.adjoint(), identity(k));
  if (k <= 3) {
    r.add("Eq.82", k, unitarity_defect, tol, {{"theta0", format_double(cfg.theta0)}, {"check", "unitary"}});
  } else {
    r.add("Eq.82", k, unitarity_defect > 1e-6 ? 0.0 : 1.0, tol,
          {{"theta0", format_double(cfg.theta0)}, {"check", "non-unitary"}},
          "||E E^+ - 1|| = " + format_double(unitarity_defect));
  }
  if (k == 2 && std::abs(cfg.omega_plus - 1.0) < tol) {
    r.add("Eq.82", k, relative_residual(ep, ep.adjoint()), tol, {{"check", "hermitean"}});
    r.add("Eq.82", k, relative_residual(ep * ep, identity(k)), tol, {{"check", "square is 1"}});
  }
  return r;
}

}  // namespace kfermion
