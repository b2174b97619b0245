#include "kfermion/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kfermion/report.hpp"

namespace kfermion {

DeformationParams::DeformationParams(int k, double tol)
    : k_(k),
      tol_(tol),
      q_(std::polar(1.0, 2.0 * std::numbers::pi / k)),
      q_bar_(std::conj(q_)),
      q_half_(std::polar(1.0, std::numbers::pi / k)) {}

DeformationParams DeformationParams::make(int k, double tol) {
  if (k < 2 || k > kMaxExtendedK) {
    throw std::invalid_argument("k must lie in [2, " + std::to_string(kMaxExtendedK) +
                                "], got " + std::to_string(k));
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw std::invalid_argument("tolerance must be a positive finite number");
  }
  return DeformationParams(k, tol);
}

DeformationParams DeformationParams::with_tol(double tol) const { return make(k_, tol); }

Complex DeformationParams::q_half_pow(std::int64_t e) const {
  const std::int64_t period = 2 * static_cast<std::int64_t>(k_);
  std::int64_t r = e % period;
  if (r < 0) r += period;
  if (r == 0) return {1.0, 0.0};
  if (2 * r == period) return {-1.0, 0.0};
  if (4 * r == period) return {0.0, 1.0};
  if (4 * r == 3 * period) return {0.0, -1.0};
  return std::polar(1.0, std::numbers::pi * static_cast<double>(r) / k_);
}

Complex DeformationParams::qnum(std::int64_t n) const {
  if (n % k_ == 0) return {0.0, 0.0};
  const double x = static_cast<double>(n);
  const double magnitude = std::sin(x * std::numbers::pi / k_) / std::sin(std::numbers::pi / k_);
  return magnitude * q_half_pow(n - 1);
}

Complex qnum(double x, Complex Q) {
  if (Q == Complex(1.0, 0.0)) {
    throw std::invalid_argument("qnum: Q = 1 makes the deformed number undefined");
  }
  return (1.0 - std::pow(Q, x)) / (1.0 - Q);
}

Complex qnum_polar(double x, const DeformationParams& params) {
  const double k = params.k();
  const double magnitude = std::sin(x * std::numbers::pi / k) / std::sin(std::numbers::pi / k);
  return std::polar(1.0, (x - 1.0) * std::numbers::pi / k) * magnitude;
}

Complex qfactorial(int n, Complex Q) {
  if (n < 0) throw std::invalid_argument("qfactorial: n must be >= 0");
  Complex result{1.0, 0.0};
  for (int j = 1; j <= n; ++j) result *= qnum(j, Q);
  return result;
}

Complex qfactorial_sqrt(int n, Complex Q) {
  if (n < 0) throw std::invalid_argument("qfactorial_sqrt: n must be >= 0");
  Complex result{1.0, 0.0};
  for (int j = 1; j <= n; ++j) result *= std::sqrt(qnum(j, Q));
  return result;
}

Complex principal_root(Complex w, int p) {
  if (p < 1) throw std::invalid_argument("principal_root: p must be >= 1");
  if (w == Complex(0.0, 0.0)) return w;
  return std::exp(std::log(w) / static_cast<double>(p));
}

VerificationReport conj_qnum_identity_check(int n, const DeformationParams& params) {
  if (n < 0 || n > params.k()) {
    throw std::invalid_argument("conj_qnum_identity_check: n must lie in [0, k]");
  }
  VerificationReport report;
  const int k = params.k();
  const ParamMap p{{"n", std::to_string(n)}};

  const Complex lhs = qfactorial(n, params.q_bar());
  const Complex rhs = params.q_half_pow(-static_cast<std::int64_t>(n) * (n - 1)) *
                      qfactorial(n, params.q());
  // At n = k both sides vanish only up to roundoff of the [k-1]! product, so
  // the residual is measured on that scale.
  const double scale = std::max({1.0, std::abs(rhs), std::abs(qfactorial(std::max(n - 1, 0), params.q()))});
  report.add("Eq.44", k, std::abs(lhs - rhs) / scale, params.tol(), p);

  const double x = static_cast<double>(n);
  report.add("Eq.A3", k,
             relative_residual(qnum(x, params.q_bar()), std::conj(qnum(x, params.q()))),
             params.tol(), {{"x", std::to_string(n)}, {"check", "conjugate"}});
  return report;
}

}  // namespace kfermion
