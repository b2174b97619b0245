// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "kfermion/coherent.hpp"
#include "kfermion/grassmann.hpp"
#include "kfermion/harness.hpp"
#include "kfermion/phase.hpp"
#include "kfermion/symmetry.hpp"

using namespace kfermion;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok = true;
  std::string note;

  // Records the first failure and keeps going.
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

DeformationParams P(int k) { return DeformationParams::make(k, kDefaultTolerance); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome defining_relations() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int k = 2; k <= 8; ++k) {
    const auto rep = build_rep(P(k));
    VerificationReport r = verify_defining_relations(rep);
    r.merge(verify_derived_relations(rep));
    for (const char* tag : {"Eq.1", "Eq.2a", "Eq.2b", "Eq.16", "Eq.17a", "Eq.17b", "Eq.20"}) {
      const double res = r.max_residual(tag, k);
      o.require(res >= 0.0, std::string("no entry for ") + tag + " at k=" + std::to_string(k));
      o.require(res < 1e-9, std::string(tag) + " residual " + fmt("%.3g", res) + " at k=" + std::to_string(k));
      worst = std::max(worst, res);
    }
  }
  const double dt = seconds_since(t0);
  o.require(dt < 1.0, fmt("took %.3f s", dt));
  if (o.ok) o.note = "worst " + fmt("%.3g", worst) + ", " + fmt("%.4f s", dt);
  return o;
}

Outcome nilpotency() {
  Outcome o;
  for (int k = 2; k <= 8; ++k) {
    const auto rep = build_rep(P(k));
    const double top = std::max(matrix_power(rep.a_plus, k).cwiseAbs().maxCoeff(),
                                matrix_power(rep.a_minus, k).cwiseAbs().maxCoeff());
    o.require(top < 1e-12, "power k not zero at k=" + std::to_string(k));
    o.require(matrix_power(rep.a_plus, k - 1).cwiseAbs().maxCoeff() > 0.5,
              "power k-1 vanishes at k=" + std::to_string(k));
  }
  return o;
}

Outcome grassmann_engine() {
  Outcome o;
  for (int k = 2; k <= 8; ++k) {
    const auto p = P(k);
    const auto dz = GrassmannOperator::power(GrassmannOperator::generator(GrassmannOpKind::Dz), k);
    const auto dzb = GrassmannOperator::power(GrassmannOperator::generator(GrassmannOpKind::Dzbar), k);
    const std::string at = " at k=" + std::to_string(k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        const auto m = GrassmannElement::monomial(p, a, b);
        o.require(dz.apply(m).is_zero() && dzb.apply(m).is_zero(), "derivative power nonzero" + at);
        const double comm = relative_residual(d_z(d_zbar(m)), p.q_half_pow(-1) * d_zbar(d_z(m)));
        o.require(comm <= kCoefficientTolerance, "derivative commutation" + at);
      }
    for (int n = 0; n < k; ++n)
      o.require(reorder_identity_check(n, p).all_passed(), "reordering identity" + at);
    const auto rep = build_rep(p);
    auto real = [&](GrassmannOpKind kind) { return realization_matrix(GrassmannOperator::generator(kind), p); };
    const double res = std::max({relative_residual(real(GrassmannOpKind::Dz), rep.a_minus),
                                 relative_residual(real(GrassmannOpKind::MultiplyZ), rep.a_plus),
                                 relative_residual(real(GrassmannOpKind::Dzbar), rep.a_plus_dag),
                                 relative_residual(real(GrassmannOpKind::MultiplyZbar), rep.a_minus_dag)});
    o.require(res <= 1e-12, "realization residual " + fmt("%.3g", res) + at);
  }
  return o;
}

Outcome coherent_states() {
  Outcome o;
  double worst = 0.0;
  for (int k = 2; k <= 8; ++k) {
    const auto p = P(k);
    const auto rep = build_rep(p);
    const std::string at = " at k=" + std::to_string(k);
    o.require(eigenstate_check(rep, coherent_ket(p)).all_passed(), "ket eigenvalue" + at);
    o.require(eigenstate_check(rep, coherent_ket_bar(p)).all_passed(), "bar ket eigenvalue" + at);
    const auto sp = scalar_product(CoherentKind::Ket, CoherentKind::Ket, p);
    const auto want = qexp(GrassmannElement::zbar(p) * GrassmannElement::z(p));
    o.require(relative_residual(sp, want) <= kCoefficientTolerance, "scalar product" + at);
    for (auto order : {IntegrationOrder::ZThenZbar, IntegrationOrder::ZbarThenZ}) {
      const double res = relative_residual(overcompleteness_matrix(p, order), identity(k));
      o.require(res < 1e-9, "overcompleteness " + fmt("%.3g", res) + at);
      worst = std::max(worst, res);
    }
  }
  if (o.ok) o.note = "worst overcompleteness " + fmt("%.3g", worst);
  return o;
}

Outcome coherence_factor_values() {
  Outcome o;
  const auto p2 = P(2);
  o.require(coherence_factor(1, p2) == Complex(1.0, 0.0), "k=2 first order");
  for (int m = 2; m <= 5; ++m) o.require(coherence_factor(m, p2) == Complex(0.0, 0.0), "k=2 higher order");
  for (int k = 2; k <= 16; ++k) {
    const auto p = P(k);
    for (int m = 1; m <= k + 3; ++m) {
      const Complex g = coherence_factor(m, p);
      const std::string at = " at k=" + std::to_string(k) + " m=" + std::to_string(m);
      if (m >= k) {
        o.require(g == Complex(0.0, 0.0), "nonzero beyond k-1" + at);
        continue;
      }
      o.require(std::abs(std::abs(g) - 1.0) <= kCoefficientTolerance, "modulus" + at);
      const Complex phase = std::polar(1.0, -kPi * m * (m - 1) / (2.0 * k));
      o.require(std::abs(g - phase) <= kCoefficientTolerance, "phase" + at);
      o.require(std::abs(g - coherence_factor_ratio(m, p)) <= kCoefficientTolerance, "ratio oracle" + at);
    }
  }
  return o;
}

Outcome limits() {
  Outcome o;
  const std::vector<double> schedule{1e-3, 1e-4, 1e-5};
  double worst = 0.0;
  std::string where;
  for (int k = 2; k <= 6; ++k) {
    const auto p = P(k);
    for (int r = 1; r <= 3; ++r)
      for (int s = 0; s < k; ++s)
        for (const auto& t : limit_trace(r, s, schedule, p)) {
          if (t.ratio != "k/rk" && s == 0) continue;  // second ratio needs s >= 1
          if (t.ratio == "k/rk" && s != 0) continue;  // first ratio does not depend on s
          const double scaled = t.abs_err / t.eps;
          if (!(scaled < 5.0) && (scaled > worst || std::isnan(scaled))) {
            worst = scaled;
            where = t.ratio + " k=" + std::to_string(k) + " r=" + std::to_string(r) + " s=" +
                    std::to_string(s) + " eps=" + fmt("%g", t.eps);
          }
          o.require(t.abs_err < 5.0 * t.eps, "");
        }
  }
  if (!o.ok) o.note = "error reaches " + fmt("%.3g", worst) + " eps (" + where + "), bound is 5 eps";

  double rank = 0.0;
  for (int k = 2; k <= 8; ++k) {
    const auto p = P(k);
    const auto st = supercoherent_limit(Complex(0.7, 0.2), kDefaultBosonTruncation, p);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(st.grid);
    const double ratio = svd.singularValues()(1) / svd.singularValues()(0);
    rank = std::max(rank, ratio);
    const bool fact = supercoherent_check(st, p).all_passed();
    if (!(ratio <= 1e-9 && fact)) {
      const std::string msg = "grid not rank one at k=" + std::to_string(k);
      o.note = o.note.empty() ? msg : o.note + "; " + msg;
      o.ok = false;
    }
  }
  if (o.ok) o.note = "grid rank-one ratio " + fmt("%.3g", rank);
  return o;
}

Outcome phase_suite() {
  Outcome o;
  for (int k = 2; k <= 8; ++k)
    for (double th : {0.0, 0.3}) {
      const auto cfg = PhaseConfig::make(th, k);
      const auto b = phase_states(k, cfg);
      const auto rep = build_rep(P(k));
      const std::string at = " at k=" + std::to_string(k) + " theta0=" + fmt("%g", th);
      for (PhaseSign s : {PhaseSign::Plus, PhaseSign::Minus}) {
        const FockOperator spectral = exp_phase(b, s);
        o.require(relative_residual(spectral, exp_phase_shift(k, cfg, s)) < 1e-10, "spectral vs shift" + at);
        const Complex w = s == PhaseSign::Plus ? cfg.omega_plus : cfg.omega_minus;
        const FockOperator wi = w * identity(k);
        o.require(relative_residual(matrix_power(spectral, k), wi) < 1e-9, "shift periodicity" + at);
        o.require(relative_residual(matrix_power(quon_phase(rep, cfg, s), k), wi) < 1e-9,
                  "quon phase periodicity" + at);
      }
      const FockOperator prod = quon_phase(rep, cfg, PhaseSign::Plus) * quon_phase(rep, cfg, PhaseSign::Minus);
      o.require(off_diagonal_norm(prod) < 1e-10, "off-diagonal mass" + at);
    }
  return o;
}

Outcome symmetry_suite() {
  Outcome o;
  double worst = 0.0;
  for (int k = 2; k <= 8; ++k) {
    const auto p = P(k);
    const auto pair = build_pair(build_rep(p), PhaseConfig::make(0.0, k));
    const std::string at = " at k=" + std::to_string(k);
    o.require(relative_residual(FockOperator(pair.V * pair.U), FockOperator(p.q() * pair.U * pair.V)) < 1e-9,
              "VU = qUV" + at);
    if (k == 2) {
      bool rejected = false;
      try {
        uqsl2_generators(pair);
      } catch (const std::domain_error&) {
        rejected = true;
      }
      o.require(rejected, "k=2 quantum-group build not rejected");
      continue;
    }
    for (const auto& pt : lattice_sweep(pair, 3, PairSide::UV)) {
      const double res = std::max(pt.product_residual, pt.sine_residual);
      o.require(res < 1e-8, "lattice relation" + at);
      worst = std::max(worst, res);
    }
    const auto uq = uqsl2_relations_check(uqsl2_generators(pair), pair);
    for (const char* tag : {"Eq.99", "Eq.100"}) {
      const double res = uq.max_residual(tag, k);
      o.require(res >= 0.0 && res < 1e-8, std::string(tag) + at);
      worst = std::max(worst, res);
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig cfg;
  const auto report = run_suites(cfg);
  const std::string json = render_json(cfg, report);
  const double dt = seconds_since(t0);
  o.require(dt < 10.0, fmt("default run took %.2f s", dt));
  o.require(report.all_passed(), "default run has failures");
  if (o.ok) o.note = "worst " + fmt("%.3g", worst) + ", default run " + fmt("%.3f s", dt);
  return o;
}

Outcome determinism() {
  Outcome o;
  RunConfig cfg;
  cfg.theta0 = 0.3;
  const std::string a = render_json(cfg, run_suites(cfg));
  const std::string b = render_json(cfg, run_suites(cfg));
  o.require(a == b, "reports differ");
  if (o.ok) o.note = std::to_string(a.size()) + " bytes";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"defining-relations", defining_relations},
      {"nilpotency", nilpotency},
      {"grassmann-engine", grassmann_engine},
      {"coherent-states", coherent_states},
      {"coherence-factor", coherence_factor_values},
      {"limits", limits},
      {"phase", phase_suite},
      {"symmetry", symmetry_suite},
      {"determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    std::printf("%s %s%s%s\n", o.ok ? "PASS" : "FAIL", name, o.note.empty() ? "" : ": ", o.note.c_str());
    failed += o.ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
