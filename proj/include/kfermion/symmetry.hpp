#pragma once

// Clock/shift pairs built from the quon generators, the T-lattice that
// realizes the sine algebra on k x k matrices, and U_q(sl(2)) from T.

#include <compare>
#include <vector>

#include "kfermion/fockrep.hpp"
#include "kfermion/phase.hpp"
#include "kfermion/report.hpp"

namespace kfermion {

struct LatticeIndex {
  int n1 = 0;
  int n2 = 0;

  friend LatticeIndex operator+(LatticeIndex a, LatticeIndex b) { return {a.n1 + b.n1, a.n2 + b.n2}; }
  friend LatticeIndex operator-(LatticeIndex a) { return {-a.n1, -a.n2}; }
  friend auto operator<=>(const LatticeIndex&, const LatticeIndex&) = default;
};

/// m x n = m1 n2 - m2 n1.
inline int cross(LatticeIndex m, LatticeIndex n) { return m.n1 * n.n2 - m.n2 * n.n1; }

struct SymmetryPair {
  DeformationParams params;
  FockOperator U, V;  // U = a_- a_+ - a_+ a_-, V = E^{+i Phi}
  FockOperator X, Y;  // X = a_+^+ a_-^+ - a_-^+ a_+^+, Y = E^{-i Phi}
  FockOperator U_inv, V_inv, X_inv, Y_inv;
};

/// Which pair a T-lattice is built from.
enum class PairSide { UV, XY };

/// Throws std::runtime_error when V or Y has condition number above 1/tol or an
/// inverse fails its round trip.
SymmetryPair build_pair(const QuonRep& rep, const PhaseConfig& cfg);

/// T_n = q^{n1 n2 / 2} U^{n1} V^{n2} (or X, Y), negative powers through the inverses.
FockOperator t_generator(const SymmetryPair& pair, LatticeIndex n, PairSide side = PairSide::UV);

/// T_n for every |n1|, |n2| <= bound, computed once.
class TLattice {
 public:
  TLattice(const SymmetryPair& pair, int bound, PairSide side = PairSide::UV);

  const FockOperator& at(LatticeIndex n) const;
  int bound() const { return bound_; }
  PairSide side() const { return side_; }

 private:
  int bound_;
  PairSide side_;
  std::vector<FockOperator> t_;
};

/// T_m T_n = q^{-(m x n)/2} T_{m+n}.
VerificationReport product_law_check(const SymmetryPair& pair, LatticeIndex m, LatticeIndex n,
                                     PairSide side = PairSide::UV);
/// [T_m, T_n] = -2i sin(pi (m x n) / k) T_{m+n}.
VerificationReport sine_commutator_check(const SymmetryPair& pair, LatticeIndex m, LatticeIndex n,
                                         PairSide side = PairSide::UV);
/// T_m T_n T_{m+n}^{-1} is the scalar q^{-(m x n)/2} times the identity.
VerificationReport phase_consistency_check(const SymmetryPair& pair, LatticeIndex m, LatticeIndex n);

/// U = diag(q^n), X = U^+, Y = V^+, VU = qUV, XY = qbar YX, and
/// V^n U^m = q^{nm} U^m V^n for 0 <= n, m <= 3.
VerificationReport exchange_check(const SymmetryPair& pair);

struct SweepPoint {
  PairSide side = PairSide::UV;
  LatticeIndex m, n;
  double product_residual = 0.0;
  double sine_residual = 0.0;
  double phase_residual = 0.0;  // UV side only
};

inline constexpr int kDefaultSweepBound = 3;

/// Every pair (m, n) with components in [-bound, bound], ordered by (m, n).
std::vector<SweepPoint> lattice_sweep(const SymmetryPair& pair, int bound = kDefaultSweepBound,
                                      PairSide side = PairSide::UV);

/// One entry per relation carrying the worst point of the sweep.
VerificationReport sweep_report(const std::vector<SweepPoint>& points, const DeformationParams& params);

struct UqSl2Generators {
  FockOperator J_plus;
  FockOperator J_minus;
  FockOperator K;
  FockOperator K_inv;
};

/// J_+ = (T_(1,1) - T_(-1,1)) / (q - q^{-1}), J_- = (T_(-1,-1) - T_(1,-1)) / (q - q^{-1}),
/// K = T_(-2,0), K^{-1} = T_(2,0). Throws std::domain_error for k = 2.
UqSl2Generators uqsl2_generators(const SymmetryPair& pair);

/// [J_+, J_-] = (K - K^{-1}) / (q - q^{-1}), K J_pm K^{-1} = q^{pm 2} J_pm,
/// K K^{-1} = 1, and the closed form of J_+ J_-.
VerificationReport uqsl2_relations_check(const UqSl2Generators& gens, const SymmetryPair& pair);

}  // namespace kfermion
