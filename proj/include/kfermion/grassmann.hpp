#pragma once

// One pair (z, zbar) of generalized Grassmann variables with
//   z^k = zbar^k = 0,    z zbar = q^{1/2} zbar z.
// Elements are kept in normal form: sum of c_ab z^a zbar^b with every z to
// the left of every zbar and 0 <= a, b < k.

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "kfermion/fockrep.hpp"
#include "kfermion/qcore.hpp"
#include "kfermion/report.hpp"

namespace kfermion {

struct Monomial {
  int z = 0;
  int zbar = 0;
  auto operator<=>(const Monomial&) const = default;
};

class GrassmannElement {
 public:
  using CoeffMap = std::map<Monomial, Complex>;

  explicit GrassmannElement(const DeformationParams& params) : params_(params) {}

  static GrassmannElement constant(const DeformationParams& params, Complex c);
  static GrassmannElement monomial(const DeformationParams& params, int z_exp, int zbar_exp,
                                   Complex c = 1.0);
  static GrassmannElement z(const DeformationParams& params) { return monomial(params, 1, 0); }
  static GrassmannElement zbar(const DeformationParams& params) { return monomial(params, 0, 1); }

  const DeformationParams& params() const { return params_; }
  int k() const { return params_.k(); }
  const CoeffMap& coeffs() const { return coeffs_; }
  Complex coefficient(int z_exp, int zbar_exp) const;
  bool is_zero() const { return coeffs_.empty(); }

  /// Adds c z^a zbar^b. Exponents >= k annihilate the term; exact zeros are
  /// erased so that equal elements have equal maps.
  void add_term(int z_exp, int zbar_exp, Complex c);

  GrassmannElement& operator+=(const GrassmannElement& other);
  GrassmannElement& operator-=(const GrassmannElement& other);
  GrassmannElement& operator*=(Complex c);

  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
  friend GrassmannElement operator*(GrassmannElement a, Complex c) { return a *= c; }
  friend GrassmannElement operator*(Complex c, GrassmannElement a) { return a *= c; }
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);

  friend bool operator==(const GrassmannElement& a, const GrassmannElement& b) {
    return a.params_ == b.params_ && a.coeffs_ == b.coeffs_;
  }

  /// "(1+1i)·z^2 z̄^1 + (0.5+0i)·1"; "0" for the zero element.
  std::string to_string() const;

 private:
  void require_same_params(const GrassmannElement& other) const;

  DeformationParams params_;
  CoeffMap coeffs_;
};

/// Normal-ordered product: (z^a1 zbar^b1)(z^a2 zbar^b2) = q^{-a2 b1 / 2} z^{a1+a2} zbar^{b1+b2}.
/// Throws std::invalid_argument for operands built with different k.
GrassmannElement multiply(const GrassmannElement& x, const GrassmannElement& y);
GrassmannElement power(const GrassmannElement& x, int n);

/// max_ab |x_ab - y_ab| / max(1, max_ab |y_ab|).
double relative_residual(const GrassmannElement& x, const GrassmannElement& y);

/// d_z(z^a zbar^b) = [a]_q z^{a-1} zbar^b.
GrassmannElement d_z(const GrassmannElement& f);
/// d_zbar(z^a zbar^b) = q^{-a/2} [b]_qbar z^a zbar^{b-1}; the phase comes from
/// moving the derivative past z^a.
GrassmannElement d_zbar(const GrassmannElement& f);

/// Keeps the z^{k-1} terms and strips that factor: sum_b c_{k-1,b} zbar^b.
GrassmannElement berezin_z(const GrassmannElement& f);
/// Keeps the zbar^{k-1} terms and strips that factor: sum_a c_{a,k-1} z^a.
GrassmannElement berezin_zbar(const GrassmannElement& f);

enum class GrassmannOpKind { MultiplyZ, MultiplyZbar, Dz, Dzbar, Composition };

/// A word in the four generators, applied right to left.
class GrassmannOperator {
 public:
  static GrassmannOperator generator(GrassmannOpKind kind);
  static GrassmannOperator compose(const GrassmannOperator& outer, const GrassmannOperator& inner);
  static GrassmannOperator power(const GrassmannOperator& op, int n);

  GrassmannOpKind kind() const;
  const std::vector<GrassmannOpKind>& factors() const { return factors_; }
  GrassmannElement apply(const GrassmannElement& f) const;

 private:
  std::vector<GrassmannOpKind> factors_;
};

/// Matrix of `op` on the normalized basis z^n / sqrt([n]_q!) (z-sector words)
/// or zbar^n / sqrt([n]_qbar!) (zbar-sector words). Words mixing the two
/// sectors are rejected with std::invalid_argument.
FockOperator realization_matrix(const GrassmannOperator& op, const DeformationParams& params);

/// zbar^n z^n = q^{-n(n-1)/4} (zbar z)^n, both sides reduced to normal form,
/// plus the closed form q^{-n^2/2} z^n zbar^n of the left side.
VerificationReport reorder_identity_check(int n, const DeformationParams& params);

/// Tolerance for identities that hold coefficient by coefficient.
inline constexpr double kCoefficientTolerance = 1e-12;

/// z^k = zbar^k = 0, zbar z = q^{-1/2} z zbar, and associativity of the
/// normal-ordered product on seeded random triples.
VerificationReport algebra_check(const DeformationParams& params, unsigned seed = 7);

/// Actions on pure powers, d^k = 0 on all k^2 monomials with d^{k-1} != 0 on
/// the top power, and d_z d_zbar = q^{-1/2} d_zbar d_z on every monomial.
VerificationReport derivative_check(const DeformationParams& params);

/// Integrals of z^p and zbar^p: zero below the top power, one at it.
VerificationReport berezin_check(const DeformationParams& params);

/// Realization matrices of the four generators against the Fock matrices,
/// and the defining relations evaluated on the realization.
VerificationReport realization_check(const QuonRep& rep);

}  // namespace kfermion
