#include "kfermion/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kfermion {

namespace {

Complex root_of(const DeformationParams& p, RootSide side) {
  return side == RootSide::Q ? p.q() : p.q_bar();
}

GrassmannState make_state(const DeformationParams& params, CoherentKind kind, bool z_block,
                          RootSide side) {
  GrassmannState st{params, kind, {}};
  const int k = params.k();
  st.components.reserve(k);
  for (int n = 0; n < k; ++n) {
    const Complex c = 1.0 / qfactorial_sqrt(n, root_of(params, side));
    st.components.push_back(z_block ? GrassmannElement::monomial(params, n, 0, c)
                                    : GrassmannElement::monomial(params, 0, n, c));
  }
  return st;
}

ParamMap rs_params(int r, int s) { return {{"r", std::to_string(r)}, {"s", std::to_string(s)}}; }

std::string matrix_to_string(const FockOperator& m) {
  std::string out = "[";
  for (int i = 0; i < m.rows(); ++i) {
    out += i ? "; " : "";
    for (int j = 0; j < m.cols(); ++j) {
      out += j ? " " : "";
      out += format_double(m(i, j).real()) + (m(i, j).imag() < 0 ? "" : "+") +
             format_double(m(i, j).imag()) + "i";
    }
  }
  return out + "]";
}

}  // namespace

GrassmannState coherent_ket(const DeformationParams& params) {
  return make_state(params, CoherentKind::Ket, true, RootSide::Q);
}

GrassmannState coherent_ket_bar(const DeformationParams& params) {
  return make_state(params, CoherentKind::KetBar, false, RootSide::QBar);
}

GrassmannState coherent_bra(const DeformationParams& params, CoherentKind kind) {
  return kind == CoherentKind::Ket ? make_state(params, kind, false, RootSide::QBar)
                                   : make_state(params, kind, true, RootSide::Q);
}

GrassmannState apply(const FockOperator& op, const GrassmannState& state) {
  const int k = state.params.k();
  if (op.rows() != k || op.cols() != k) throw std::invalid_argument("apply: dimension mismatch");
  GrassmannState out{state.params, state.kind, {}};
  out.components.reserve(k);
  for (int n = 0; n < k; ++n) {
    GrassmannElement acc(state.params);
    for (int m = 0; m < k; ++m) {
      if (op(n, m) != Complex{}) acc += op(n, m) * state.components[m];
    }
    out.components.push_back(std::move(acc));
  }
  return out;
}

VerificationReport eigenstate_check(const QuonRep& rep, const GrassmannState& state) {
  if (!(rep.params == state.params)) {
    throw std::invalid_argument("eigenstate_check: representation and state use different k");
  }
  const bool ket = state.kind == CoherentKind::Ket;
  const auto& params = state.params;
  const GrassmannState lhs = apply(ket ? rep.a_minus : rep.a_plus_dag, state);
  const GrassmannElement eigenvalue =
      ket ? GrassmannElement::z(params) : GrassmannElement::zbar(params);

  VerificationReport r;
  double worst = 0.0;
  int worst_n = 0;
  for (int n = 0; n < params.k(); ++n) {
    const double res = relative_residual(lhs.components[n], eigenvalue * state.components[n]);
    if (res > worst) {
      worst = res;
      worst_n = n;
    }
  }
  r.add(ket ? "Eq.39" : "Eq.40", params.k(), worst, params.tol(),
        {{"worst_component", std::to_string(worst_n)}});
  return r;
}

GrassmannElement scalar_product(CoherentKind bra_kind, CoherentKind ket_kind,
                                const DeformationParams& params) {
  const GrassmannState bra = coherent_bra(params, bra_kind);
  const GrassmannState ket =
      ket_kind == CoherentKind::Ket ? coherent_ket(params) : coherent_ket_bar(params);
  GrassmannElement sum(params);
  for (int n = 0; n < params.k(); ++n) sum += bra.components[n] * ket.components[n];
  return sum;
}

GrassmannElement qexp(const GrassmannElement& x, RootSide side) {
  const auto& p = x.params();
  GrassmannElement sum(p);
  GrassmannElement term = GrassmannElement::constant(p, 1.0);
  for (int n = 0; n < p.k(); ++n) {
    if (n > 0) term = term * x;
    sum += term * (1.0 / qfactorial(n, root_of(p, side)));
  }
  return sum;
}

VerificationReport scalar_product_check(const DeformationParams& params) {
  const int k = params.k();
  const auto z = GrassmannElement::z(params);
  const auto zbar = GrassmannElement::zbar(params);
  const auto zz = scalar_product(CoherentKind::Ket, CoherentKind::Ket, params);
  const auto bb = scalar_product(CoherentKind::KetBar, CoherentKind::KetBar, params);

  VerificationReport r;
  // Term by term: zbar^n z^n / sqrt([n]_qbar! [n]_q!) against (zbar z)^n / [n]_q!.
  double worst46 = 0.0;
  double worst47 = 0.0;
  for (int n = 0; n < k; ++n) {
    const Complex norm = qfactorial_sqrt(n, params.q_bar()) * qfactorial_sqrt(n, params.q());
    const auto lhs = (1.0 / norm) * (power(zbar, n) * power(z, n));
    const auto rhs = (1.0 / qfactorial(n, params.q())) * power(zbar * z, n);
    worst46 = std::max(worst46, relative_residual(lhs, rhs));
    const auto lhs_bar = (1.0 / norm) * (power(z, n) * power(zbar, n));
    const auto rhs_bar = (1.0 / qfactorial(n, params.q_bar())) * power(z * zbar, n);
    worst47 = std::max(worst47, relative_residual(lhs_bar, rhs_bar));
  }
  r.add("Eq.46", k, worst46, params.tol(), {{"check", "term by term"}});
  r.add("Eq.47", k, worst47, params.tol(), {{"check", "term by term"}});
  r.add("Eq.49", k, relative_residual(zz, qexp(zbar * z, RootSide::Q)), params.tol(),
        {{"form", "(z|z) = e_q(zbar z)"}});
  r.add("Eq.49", k, relative_residual(bb, qexp(z * zbar, RootSide::QBar)), params.tol(),
        {{"form", "(zbar|zbar) = e_qbar(z zbar)"}});
  return r;
}

GrassmannElement measure_mu(const DeformationParams& params) {
  const int k = params.k();
  GrassmannElement mu(params);
  for (int n = 0; n < k; ++n) {
    const Complex w = qfactorial_sqrt(n, params.q()) * qfactorial_sqrt(n, params.q_bar());
    mu.add_term(k - 1 - n, k - 1 - n, w);
  }
  return mu;
}

GrassmannElement measure_mu_bar(const DeformationParams& params) {
  const int k = params.k();
  const auto z = GrassmannElement::z(params);
  const auto zbar = GrassmannElement::zbar(params);
  GrassmannElement mu(params);
  for (int n = 0; n < k; ++n) {
    const Complex w = qfactorial_sqrt(n, params.q()) * qfactorial_sqrt(n, params.q_bar());
    mu += w * (power(zbar, k - 1 - n) * power(z, k - 1 - n));
  }
  return mu;
}

Complex double_integral(const GrassmannElement& f, IntegrationOrder order) {
  const auto& p = f.params();
  if (order == IntegrationOrder::ZThenZbar) return berezin_zbar(berezin_z(f)).coefficient(0, 0);
  // z^{k-1} zbar^{k-1} = q^{(k-1)^2/2} zbar^{k-1} z^{k-1}
  const std::int64_t top = p.k() - 1;
  return f.coefficient(p.k() - 1, p.k() - 1) * p.q_half_pow(top * top);
}

FockOperator overcompleteness_matrix(const DeformationParams& params, IntegrationOrder order) {
  const int k = params.k();
  const bool z_first = order == IntegrationOrder::ZThenZbar;
  const GrassmannState ket = z_first ? coherent_ket(params) : coherent_ket_bar(params);
  const GrassmannState bra =
      coherent_bra(params, z_first ? CoherentKind::Ket : CoherentKind::KetBar);
  const GrassmannElement mu = z_first ? measure_mu(params) : measure_mu_bar(params);

  FockOperator m(k, k);
  for (int n = 0; n < k; ++n) {
    const GrassmannElement left = ket.components[n] * mu;
    for (int np = 0; np < k; ++np) {
      m(n, np) = double_integral(left * bra.components[np], order);
    }
  }
  return m;
}

VerificationReport overcompleteness_check(const QuonRep& rep, const DeformationParams& params) {
  if (!(rep.params == params)) {
    throw std::invalid_argument("overcompleteness_check: representation uses a different k");
  }
  const int k = params.k();
  const FockOperator one = identity(k);
  VerificationReport r;
  struct Variant {
    IntegrationOrder order;
    const char* convention;
  };
  for (const Variant v : {Variant{IntegrationOrder::ZThenZbar,
                                  "integrand |z)_n mu(z,zbar) (z|_n'; integrate dz then dzbar"},
                          Variant{IntegrationOrder::ZbarThenZ,
                                  "integrand |zbar)_n mu(zbar,z) (zbar|_n'; integrate dzbar "
                                  "then dz on the zbar-first word"}}) {
    const FockOperator m = overcompleteness_matrix(params, v.order);
    const double res = relative_residual(m, one);
    auto& e = r.add("Eq.51", k, res, params.tol(), {{"convention", v.convention}});
    if (!e.passed) e.detail = "matrix " + matrix_to_string(m);
  }
  return r;
}

Complex coherence_factor(int m, const DeformationParams& params) {
  if (m < 1) throw std::invalid_argument("coherence_factor: order m must be >= 1");
  if (m > params.k() - 1) return {0.0, 0.0};
  const std::int64_t mm = m;
  return params.q_half_pow(-mm * (mm - 1) / 2);
}

Complex coherence_factor_ratio(int m, const DeformationParams& params) {
  if (m < 1) throw std::invalid_argument("coherence_factor_ratio: order m must be >= 1");
  const auto z = GrassmannElement::z(params);
  const auto zbar = GrassmannElement::zbar(params);
  const auto num = power(zbar, m) * power(z, m);
  const auto den = power(zbar * z, m);
  if (num.is_zero() && den.is_zero()) return {0.0, 0.0};
  if (den.is_zero()) throw std::logic_error("coherence_factor_ratio: zero denominator");
  return num.coefficient(m, m) / den.coefficient(m, m);
}

VerificationReport coherence_check(int m_max, const DeformationParams& params) {
  const int k = params.k();
  VerificationReport r;
  for (int m = 1; m <= m_max; ++m) {
    const Complex closed = coherence_factor(m, params);
    const Complex ratio = coherence_factor_ratio(m, params);
    const ParamMap pm{{"m", std::to_string(m)}};
    r.add("Eq.57", k, relative_residual(closed, ratio), params.tol(), pm,
          "g = " + format_double(closed.real()) + (closed.imag() < 0 ? "" : "+") +
              format_double(closed.imag()) + "i");
    const double expected_abs = m <= k - 1 ? 1.0 : 0.0;
    r.add("Eq.55", k, std::abs(std::abs(closed) - expected_abs), params.tol(), pm,
          "step function theta(k-1-m) on |g|");
    if (k == 2) {
      const Complex expected = m == 1 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      r.add("Eq.58", k, relative_residual(closed, expected), params.tol(), pm);
    }
  }
  return r;
}

std::vector<LimitSample> limit_trace(int r, int s, const std::vector<double>& eps_schedule,
                                     const DeformationParams& params) {
  const int k = params.k();
  if (r < 1) throw std::invalid_argument("limit_trace: r must be >= 1");
  if (s < 0 || s > k - 1) throw std::invalid_argument("limit_trace: s must lie in [0, k-1]");
  if (eps_schedule.empty()) throw std::invalid_argument("limit_trace: empty eps schedule");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    const double e = eps_schedule[i];
    if (!(e > 0.0 && e <= 0.1)) throw std::invalid_argument("limit_trace: eps outside (0, 0.1]");
    if (i > 0 && !(e < eps_schedule[i - 1])) {
      throw std::invalid_argument("limit_trace: eps schedule must be strictly decreasing");
    }
  }

  std::vector<LimitSample> out;
  for (double eps : eps_schedule) {
    const Complex Q = params.q() * (1.0 - eps);
    const Complex a = qnum(k, Q) / qnum(static_cast<double>(r) * k, Q);
    out.push_back({"k/rk", r, s, eps, a, 1.0 / r, std::abs(a - 1.0 / r)});
    if (s > 0) {
      const Complex b = qnum(s, Q) / qnum(static_cast<double>(r) * k + s, Q);
      out.push_back({"s/rk+s", r, s, eps, b, 1.0, std::abs(b - 1.0)});
    }
  }
  return out;
}

double limit_first_order_coefficient(const std::string& ratio, int r, int s,
                                     const DeformationParams& params) {
  const double k = params.k();
  if (ratio == "k/rk") return (r - 1) * k / (2.0 * r);
  if (ratio == "s/rk+s") return r * k / std::abs(1.0 - params.q_pow(s));
  throw std::invalid_argument("unknown limit ratio: " + ratio);
}

VerificationReport limit_ratios(int r, int s, const std::vector<double>& eps_schedule,
                                const DeformationParams& params) {
  const int k = params.k();
  const auto trace = limit_trace(r, s, eps_schedule, params);
  VerificationReport rep;

  for (const char* which : {"k/rk", "s/rk+s"}) {
    const std::string ratio = which;
    const char* tag = ratio == "k/rk" ? "Eq.64a" : "Eq.64b";
    ParamMap pm = rs_params(r, s);
    if (ratio == "s/rk+s" && s == 0) {
      rep.add(tag, k, 0.0, params.tol(), pm, "s = 0: 0/0 index convention, excluded from check");
      continue;
    }
    std::vector<const LimitSample*> pts;
    for (const auto& t : trace)
      if (t.ratio == ratio) pts.push_back(&t);

    std::string detail = "trace";
    bool monotone = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      detail += " eps=" + format_double(pts[i]->eps) + ":err=" + format_double(pts[i]->abs_err);
      if (i > 0 && pts[i]->abs_err > pts[i - 1]->abs_err + 1e-14) monotone = false;
    }
    const double eps_min = pts.back()->eps;
    const double bound = 2.0 * limit_first_order_coefficient(ratio, r, s, params) * eps_min + 1e-12;
    const double residual =
        monotone ? pts.back()->abs_err : std::numeric_limits<double>::quiet_NaN();
    if (!monotone) detail = "non-monotone " + detail;
    pm["eps_min"] = format_double(eps_min);
    rep.add(tag, k, residual, bound, pm, detail);
  }
  return rep;
}

QCoherentTruncation q_coherent_truncation(Complex Q, Complex Z, int n_max,
                                          const DeformationParams& params) {
  if (std::abs(std::abs(Q) - 1.0) < 1e-15) {
    throw std::invalid_argument("q_coherent_truncation: Q must lie off the unit circle");
  }
  if (n_max < params.k()) throw std::invalid_argument("q_coherent_truncation: n_max must be >= k");
  QCoherentTruncation t{Q, Z, n_max, {}};
  t.coefficients.reserve(n_max + 1);
  Complex zn{1.0, 0.0};
  Complex root_fact{1.0, 0.0};
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      zn *= Z;
      root_fact *= std::sqrt(qnum(n, Q));
    }
    t.coefficients.push_back(zn / root_fact);
  }
  return t;
}

SupercoherentState supercoherent_limit(Complex alpha, int r_max, const DeformationParams& params) {
  if (r_max < 1) throw std::invalid_argument("supercoherent_limit: r_max must be >= 1");
  const int k = params.k();
  SupercoherentState st{alpha, r_max, k, Eigen::MatrixXcd(r_max + 1, k), 0.0, false};
  Complex boson{1.0, 0.0};  // alpha^r / sqrt(r!)
  for (int r = 0; r <= r_max; ++r) {
    if (r > 0) boson *= alpha / std::sqrt(static_cast<double>(r));
    for (int s = 0; s < k; ++s) st.grid(r, s) = boson / qfactorial_sqrt(s, params.q());
  }
  st.tail_magnitude = std::abs(boson);
  st.tail_warning = st.tail_magnitude > params.tol();
  return st;
}

VerificationReport supercoherent_check(const SupercoherentState& state,
                                       const DeformationParams& params) {
  const int k = params.k();
  const int rows = state.r_max + 1;
  const int total = rows * k;
  VerificationReport rep;

  // n -> (n / k, n % k) -> r k + s must return n and hit each cell once.
  std::vector<int> hits(total, 0);
  int mismatches = 0;
  for (int n = 0; n < total; ++n) {
    const int r = n / k;
    const int s = n % k;
    if (r * k + s != n) ++mismatches;
    ++hits[r * k + s];
  }
  for (int h : hits) mismatches += h == 1 ? 0 : 1;
  rep.add("Eq.63", k, mismatches, params.tol(), {{"cells", std::to_string(total)}});

  // Single-index coefficients alpha^r / sqrt(r!) / sqrt([s]_q!) at n = rk + s
  // against the tensor product of the bosonic and k-fermionic factors.
  Eigen::VectorXcd bosonic(rows), fermionic(k);
  Complex b{1.0, 0.0};
  for (int r = 0; r < rows; ++r) {
    if (r > 0) b *= state.alpha / std::sqrt(static_cast<double>(r));
    bosonic(r) = b;
  }
  for (int s = 0; s < k; ++s) fermionic(s) = 1.0 / qfactorial_sqrt(s, params.q());
  const Eigen::MatrixXcd tensor = bosonic * fermionic.transpose();
  Eigen::MatrixXcd single(rows, k);
  for (int n = 0; n < total; ++n) {
    const int r = n / k;
    const int s = n % k;
    Complex c{1.0, 0.0};
    for (int i = 0; i < r; ++i) c *= state.alpha;
    single(r, s) = c / std::sqrt(std::tgamma(r + 1.0)) / qfactorial_sqrt(s, params.q());
  }
  rep.add("Eq.69", k, relative_residual(state.grid, tensor), params.tol(),
          {{"check", "tensor factorization"}});
  rep.add("Eq.69", k, relative_residual(single, tensor), params.tol(),
          {{"check", "double sum regrouped"}});

  // Rank one: every 2x2 minor against the (0,0) pivot vanishes.
  const Complex pivot = state.grid(0, 0);
  double minor = 0.0;
  for (int r = 0; r < rows; ++r)
    for (int s = 0; s < k; ++s)
      minor = std::max(minor, std::abs(state.grid(r, s) * pivot - state.grid(r, 0) * state.grid(0, s)));
  rep.add("Eq.69", k, minor / std::max(1.0, state.grid.norm()), params.tol(),
          {{"check", "rank one"}},
          state.tail_warning ? "bosonic tail " + format_double(state.tail_magnitude) + " above tol"
                             : "");
  return rep;
}

Complex supercoherent_numeric_coefficient(Complex alpha, int r, int s, double eps,
                                          const DeformationParams& params) {
  if (alpha == Complex{}) throw std::invalid_argument("numeric limit needs alpha != 0");
  const int k = params.k();
  const Complex Q = params.q() * (1.0 - eps);
  const Complex Z = principal_root(alpha * qfactorial_sqrt(k, Q), k);
  const int n = r * k + s;
  const auto t = q_coherent_truncation(Q, Z, std::max(n, k), params);
  return t.coefficients[n] / std::pow(Z, s);
}

}  // namespace kfermion
