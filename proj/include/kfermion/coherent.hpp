#pragma once

// k-fermionic coherent states, their Grassmann-valued scalar products and
// resolution of identity, the coherence factor, and the Q -> q limit that
// turns a Q-deformed coherent state into a fractional supercoherent state.

#include <string>
#include <vector>

#include "kfermion/fockrep.hpp"
#include "kfermion/grassmann.hpp"
#include "kfermion/report.hpp"

namespace kfermion {

/// Which root a deformed quantity is evaluated at.
enum class RootSide { Q, QBar };

/// |z) (eigenvector of a_- with eigenvalue z) or |zbar) (eigenvector of a_+^+).
enum class CoherentKind { Ket, KetBar };

struct GrassmannState {
  DeformationParams params;
  CoherentKind kind;
  std::vector<GrassmannElement> components;  // coefficient of |n>, n = 0..k-1
};

/// |z) = sum_n z^n / sqrt([n]_q!) |n>.
GrassmannState coherent_ket(const DeformationParams& params);
/// |zbar) = sum_n zbar^n / sqrt([n]_qbar!) |n>.
GrassmannState coherent_ket_bar(const DeformationParams& params);

/// Coefficients of the bra dual to a ket: (z| carries zbar^n / sqrt([n]_qbar!),
/// (zbar| carries z^n / sqrt([n]_q!).
GrassmannState coherent_bra(const DeformationParams& params, CoherentKind kind);

/// Componentwise matrix action sum_m A(n, m) psi_m.
GrassmannState apply(const FockOperator& op, const GrassmannState& state);

/// a_-|z) = z|z) for kets, a_+^+|zbar) = zbar|zbar) for bar-kets.
VerificationReport eigenstate_check(const QuonRep& rep, const GrassmannState& state);

/// sum_n bra_n * ket_n, bra coefficient on the left.
GrassmannElement scalar_product(CoherentKind bra_kind, CoherentKind ket_kind,
                                const DeformationParams& params);

/// e_q(x) = sum_{n<k} x^n / [n]_q! (or with qbar).
GrassmannElement qexp(const GrassmannElement& x, RootSide side = RootSide::Q);

/// (z|z) = e_q(zbar z) and (zbar|zbar) = e_qbar(z zbar), plus the per-term
/// expansion that goes through the factorial conjugation identity.
VerificationReport scalar_product_check(const DeformationParams& params);

/// mu = sum_n sqrt([n]_q!) sqrt([n]_qbar!) z^{k-1-n} zbar^{k-1-n}.
GrassmannElement measure_mu(const DeformationParams& params);
/// mu(zbar, z): same weights with the zbar block written first.
GrassmannElement measure_mu_bar(const DeformationParams& params);

enum class IntegrationOrder {
  /// Integrand written ket * mu * bra with z-block leftmost; integrate dz
  /// first, then dzbar. Equals the (k-1, k-1) normal-form coefficient.
  ZThenZbar,
  /// Integrand with the zbar-block leftmost; integrate dzbar first, then dz.
  /// Reads the coefficient of zbar^{k-1} z^{k-1}, i.e. the normal-form
  /// top coefficient times q^{(k-1)^2/2}.
  ZbarThenZ,
};

Complex double_integral(const GrassmannElement& f, IntegrationOrder order);

/// Resolution-of-identity matrices for both orderings.
FockOperator overcompleteness_matrix(const DeformationParams& params, IntegrationOrder order);
VerificationReport overcompleteness_check(const QuonRep& rep, const DeformationParams& params);

/// g^(m) = q^{-m(m-1)/4} for 1 <= m <= k-1, zero for m >= k.
/// Throws std::invalid_argument for m < 1.
Complex coherence_factor(int m, const DeformationParams& params);
/// The scalar c with zbar^m z^m = c (zbar z)^m in normal form (0 when both vanish).
Complex coherence_factor_ratio(int m, const DeformationParams& params);
VerificationReport coherence_check(int m_max, const DeformationParams& params);

/// One point of a Q -> q limit trace along Q = q (1 - eps).
struct LimitSample {
  std::string ratio;  // "k/rk" or "s/rk+s"
  int r = 0;
  int s = 0;
  double eps = 0.0;
  Complex value;
  double expected = 0.0;
  double abs_err = 0.0;
};

/// [k]_Q / [rk]_Q -> 1/r and [s]_Q / [rk+s]_Q -> 1 along the schedule.
/// Throws std::invalid_argument for r < 1, s outside [0, k-1], or a schedule
/// that is empty, not strictly decreasing, or leaves (0, 0.1].
std::vector<LimitSample> limit_trace(int r, int s, const std::vector<double>& eps_schedule,
                                     const DeformationParams& params);

/// First-order error coefficient C with |err| ~ C eps near Q = q.
double limit_first_order_coefficient(const std::string& ratio, int r, int s,
                                     const DeformationParams& params);

/// Pass iff the error trace is non-increasing and the final error is within
/// twice the first-order prediction. s = 0 is reported as excluded.
VerificationReport limit_ratios(int r, int s, const std::vector<double>& eps_schedule,
                                const DeformationParams& params);

/// Z^n / sqrt([n]_Q!) for n = 0..n_max, Q off the unit circle.
struct QCoherentTruncation {
  Complex Q;
  Complex Z;
  int n_max = 0;
  std::vector<Complex> coefficients;
};

/// Throws std::invalid_argument if |Q| = 1 or n_max < k.
QCoherentTruncation q_coherent_truncation(Complex Q, Complex Z, int n_max,
                                          const DeformationParams& params);

inline constexpr int kDefaultBosonTruncation = 8;

struct SupercoherentState {
  Complex alpha;
  int r_max = 0;
  int k = 0;
  /// c(r, s) = alpha^r / sqrt(r!) / sqrt([s]_q!), the coefficient of z^s |rk+s>.
  Eigen::MatrixXcd grid;
  double tail_magnitude = 0.0;  // |alpha|^r_max / sqrt(r_max!)
  bool tail_warning = false;    // tail_magnitude > tol
};

/// Throws std::invalid_argument for r_max < 1.
SupercoherentState supercoherent_limit(Complex alpha, int r_max, const DeformationParams& params);

/// Index regrouping n = rk + s is a bijection; the tensor form reproduces the
/// single-index double sum; the grid is rank one.
VerificationReport supercoherent_check(const SupercoherentState& state,
                                       const DeformationParams& params);

/// Coefficient of z^s at |rk+s> in the Q-deformed coherent state with
/// Q = q (1 - eps) and Z^k / sqrt([k]_Q!) = alpha. Requires alpha != 0.
Complex supercoherent_numeric_coefficient(Complex alpha, int r, int s, double eps,
                                          const DeformationParams& params);

}  // namespace kfermion
