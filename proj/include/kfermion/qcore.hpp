#pragma once

// Deformed-number arithmetic at a primitive k-th root of unity.
//
// Branch conventions used throughout the library live here:
//   * q = exp(2 pi i / k), q_bar = conj(q), and the square root of q is fixed
//     once as exp(i pi / k) (never recomputed from q).
//   * Scalar fractional powers w^(1/p) use the principal logarithm.
//   * Square roots of q-factorials are taken factor by factor,
//     sqrt([n]!) := prod_j sqrt([j]), which keeps products of ladder
//     coefficients free of sign ambiguities.

#include <complex>
#include <cstdint>

namespace kfermion {

using Complex = std::complex<double>;

class VerificationReport;

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr int kMaxStandardK = 16;
inline constexpr int kMaxExtendedK = 64;
inline constexpr double kExtendedTolerance = 1e-6;

/// Root-of-unity constants for one value of k.
class DeformationParams {
 public:
  /// Throws std::invalid_argument for k < 2, k > kMaxExtendedK or tol <= 0.
  static DeformationParams make(int k, double tol = kDefaultTolerance);

  int k() const { return k_; }
  double tol() const { return tol_; }
  Complex q() const { return q_; }
  Complex q_bar() const { return q_bar_; }
  Complex q_half() const { return q_half_; }

  /// q^(e/2) evaluated from the reduced exponent e mod 2k.
  Complex q_half_pow(std::int64_t e) const;
  Complex q_pow(std::int64_t e) const { return q_half_pow(2 * e); }

  /// [n]_q (or [n]_qbar) for integer n via the polar closed form, with
  /// an exact zero whenever k divides n.
  Complex qnum(std::int64_t n) const;
  Complex qnum_bar(std::int64_t n) const { return std::conj(qnum(n)); }

  DeformationParams with_tol(double tol) const;

  friend bool operator==(const DeformationParams& a, const DeformationParams& b) {
    return a.k_ == b.k_;
  }

 private:
  DeformationParams(int k, double tol);

  int k_;
  double tol_;
  Complex q_;
  Complex q_bar_;
  Complex q_half_;
};

/// (1 - Q^x) / (1 - Q) with Q^x the principal power.
/// Throws std::invalid_argument when Q == 1.
Complex qnum(double x, Complex Q);

/// exp(i (x-1) pi / k) sin(x pi / k) / sin(pi / k).
Complex qnum_polar(double x, const DeformationParams& params);

/// [n]_Q! = [1]_Q [2]_Q ... [n]_Q, with [0]_Q! = 1.
Complex qfactorial(int n, Complex Q);

/// prod_{j=1..n} sqrt([j]_Q), principal root per factor.
Complex qfactorial_sqrt(int n, Complex Q);

/// Principal p-th root exp(log(w) / p).
Complex principal_root(Complex w, int p);

/// Checks [n]_qbar! = q^{-n(n-1)/2} [n]_q! and [x]_qbar = conj([x]_q).
VerificationReport conj_qnum_identity_check(int n, const DeformationParams& params);

}  // namespace kfermion
