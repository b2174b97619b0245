#pragma once

// Phase states and the Hermitian phase operator on the k-level Fock space,
// its exponentials e^{±i phi} (cyclic shifts with wrap phase
// omega_{±k} = exp(±i k theta0)), and the quon-built analogues E^{±i Phi}.

#include <vector>

#include "kfermion/fockrep.hpp"
#include "kfermion/report.hpp"

namespace kfermion {

struct PhaseConfig {
  double theta0 = 0.0;
  Complex omega_plus{1.0, 0.0};
  Complex omega_minus{1.0, 0.0};

  static PhaseConfig make(double theta0, int k);
};

enum class PhaseSign : int { Plus = 1, Minus = -1 };

struct PhaseBasis {
  int k = 0;
  std::vector<double> angles;  // theta_m = theta0 + 2 pi m / k
  Eigen::MatrixXcd vectors;    // column m holds |theta_m>, entries exp(i n theta_m) / sqrt(k)
};

/// Throws std::invalid_argument for k < 2.
PhaseBasis phase_states(int k, const PhaseConfig& cfg);

/// Orthonormality and the inverse expansion |n> = k^{-1/2} sum_m exp(-i n theta_m)|theta_m>.
VerificationReport phase_basis_check(const PhaseBasis& basis, double tol);

/// phi = sum_m theta_m |theta_m)(theta_m|.
FockOperator phase_operator(const PhaseBasis& basis);
/// Hermiticity, spectrum, and diagonal matrix elements of phi.
VerificationReport phase_operator_check(const PhaseBasis& basis, double tol);

/// e^{±i phi} from the spectral decomposition of phi.
FockOperator exp_phase(const PhaseBasis& basis, PhaseSign sign);
/// e^{+i phi} = omega_{+k} E_{k-1,0} + sum_i E_{i-1,i};
/// e^{-i phi} = omega_{-k} E_{0,k-1} + sum_i E_{i,i-1}.
FockOperator exp_phase_shift(int k, const PhaseConfig& cfg, PhaseSign sign);
/// Spectral vs shift-matrix construction and the action on the number basis.
VerificationReport exp_phase_check(const PhaseBasis& basis, const PhaseConfig& cfg, double tol);

/// ||op^k - expected I|| / max(1, ||expected I||) under the given tag.
VerificationReport periodicity_check(const FockOperator& op, int k, Complex expected,
                                     std::string_view tag, double tol, ParamMap params = {});

/// E^{+i Phi} = ([k-1]_q!)^{-1/k} (a_- + omega_{+k} a_+^{k-1}),
/// E^{-i Phi} = ([k-1]_qbar!)^{-1/k} (a_-^+ + omega_{-k} (a_+^+)^{k-1}),
/// principal k-th root.
FockOperator quon_phase(const QuonRep& rep, const PhaseConfig& cfg, PhaseSign sign);
/// Explicit matrix actions, diagonal products, periodicity, and the
/// structural (non-)unitarity properties.
VerificationReport quon_phase_check(const QuonRep& rep, const PhaseConfig& cfg);

}  // namespace kfermion
