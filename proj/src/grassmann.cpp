#include "kfermion/grassmann.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace kfermion {

GrassmannElement GrassmannElement::constant(const DeformationParams& params, Complex c) {
  return monomial(params, 0, 0, c);
}

GrassmannElement GrassmannElement::monomial(const DeformationParams& params, int z_exp,
                                            int zbar_exp, Complex c) {
  if (z_exp < 0 || zbar_exp < 0) throw std::invalid_argument("negative Grassmann exponent");
  GrassmannElement e(params);
  e.add_term(z_exp, zbar_exp, c);
  return e;
}

Complex GrassmannElement::coefficient(int z_exp, int zbar_exp) const {
  const auto it = coeffs_.find({z_exp, zbar_exp});
  return it == coeffs_.end() ? Complex{} : it->second;
}

void GrassmannElement::add_term(int z_exp, int zbar_exp, Complex c) {
  if (z_exp >= k() || zbar_exp >= k()) return;
  if (c == Complex{}) return;
  auto [it, inserted] = coeffs_.try_emplace({z_exp, zbar_exp}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) coeffs_.erase(it);
  }
}

void GrassmannElement::require_same_params(const GrassmannElement& other) const {
  if (!(params_ == other.params_)) {
    throw std::invalid_argument("Grassmann operands built with different k (" +
                                std::to_string(k()) + " vs " + std::to_string(other.k()) + ")");
  }
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& other) {
  require_same_params(other);
  for (const auto& [m, c] : other.coeffs_) add_term(m.z, m.zbar, c);
  return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& other) {
  require_same_params(other);
  for (const auto& [m, c] : other.coeffs_) add_term(m.z, m.zbar, -c);
  return *this;
}

GrassmannElement& GrassmannElement::operator*=(Complex c) {
  if (c == Complex{}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [m, v] : coeffs_) v *= c;
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == Complex{}; });
  return *this;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
  return multiply(a, b);
}

std::string GrassmannElement::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  char buf[96];
  for (const auto& [m, c] : coeffs_) {
    if (!out.empty()) out += " + ";
    std::snprintf(buf, sizeof buf, "(%.12g%+.12gi)", c.real(), c.imag());
    out += buf;
    out += "·";
    if (m.z == 0 && m.zbar == 0) {
      out += "1";
      continue;
    }
    if (m.z > 0) out += "z^" + std::to_string(m.z);
    if (m.z > 0 && m.zbar > 0) out += " ";
    if (m.zbar > 0) out += "z̄^" + std::to_string(m.zbar);
  }
  return out;
}

GrassmannElement multiply(const GrassmannElement& x, const GrassmannElement& y) {
  if (!(x.params() == y.params())) {
    throw std::invalid_argument("multiply: operands built with different k");
  }
  const auto& p = x.params();
  GrassmannElement out(p);
  for (const auto& [mx, cx] : x.coeffs()) {
    for (const auto& [my, cy] : y.coeffs()) {
      const int a = mx.z + my.z;
      const int b = mx.zbar + my.zbar;
      if (a >= p.k() || b >= p.k()) continue;
      // zbar^{b1} z^{a2} = q^{-a2 b1 / 2} z^{a2} zbar^{b1}
      const Complex phase = p.q_half_pow(-static_cast<std::int64_t>(my.z) * mx.zbar);
      out.add_term(a, b, cx * cy * phase);
    }
  }
  return out;
}

GrassmannElement power(const GrassmannElement& x, int n) {
  if (n < 0) throw std::invalid_argument("power: negative exponent");
  GrassmannElement out = GrassmannElement::constant(x.params(), 1.0);
  for (int i = 0; i < n; ++i) out = multiply(out, x);
  return out;
}

double relative_residual(const GrassmannElement& x, const GrassmannElement& y) {
  if (!(x.params() == y.params())) {
    throw std::invalid_argument("relative_residual: operands built with different k");
  }
  double scale = 1.0;
  for (const auto& [m, c] : y.coeffs()) scale = std::max(scale, std::abs(c));
  double diff = 0.0;
  const GrassmannElement d = x - y;
  for (const auto& [m, c] : d.coeffs()) diff = std::max(diff, std::abs(c));
  return diff / scale;
}

GrassmannElement d_z(const GrassmannElement& f) {
  const auto& p = f.params();
  GrassmannElement out(p);
  for (const auto& [m, c] : f.coeffs()) {
    if (m.z == 0) continue;
    out.add_term(m.z - 1, m.zbar, c * p.qnum(m.z));
  }
  return out;
}

GrassmannElement d_zbar(const GrassmannElement& f) {
  const auto& p = f.params();
  GrassmannElement out(p);
  for (const auto& [m, c] : f.coeffs()) {
    if (m.zbar == 0) continue;
    out.add_term(m.z, m.zbar - 1, c * p.q_half_pow(-m.z) * p.qnum_bar(m.zbar));
  }
  return out;
}

GrassmannElement berezin_z(const GrassmannElement& f) {
  GrassmannElement out(f.params());
  for (const auto& [m, c] : f.coeffs()) {
    if (m.z == f.k() - 1) out.add_term(0, m.zbar, c);
  }
  return out;
}

GrassmannElement berezin_zbar(const GrassmannElement& f) {
  GrassmannElement out(f.params());
  for (const auto& [m, c] : f.coeffs()) {
    if (m.zbar == f.k() - 1) out.add_term(m.z, 0, c);
  }
  return out;
}

GrassmannOperator GrassmannOperator::generator(GrassmannOpKind kind) {
  if (kind == GrassmannOpKind::Composition) {
    throw std::invalid_argument("generator: Composition is not a generator");
  }
  GrassmannOperator op;
  op.factors_.push_back(kind);
  return op;
}

GrassmannOperator GrassmannOperator::compose(const GrassmannOperator& outer,
                                             const GrassmannOperator& inner) {
  GrassmannOperator op;
  op.factors_ = outer.factors_;
  op.factors_.insert(op.factors_.end(), inner.factors_.begin(), inner.factors_.end());
  return op;
}

GrassmannOperator GrassmannOperator::power(const GrassmannOperator& op, int n) {
  if (n < 1) throw std::invalid_argument("GrassmannOperator::power: n must be >= 1");
  GrassmannOperator out = op;
  for (int i = 1; i < n; ++i) out = compose(out, op);
  return out;
}

GrassmannOpKind GrassmannOperator::kind() const {
  return factors_.size() == 1 ? factors_.front() : GrassmannOpKind::Composition;
}

GrassmannElement GrassmannOperator::apply(const GrassmannElement& f) const {
  GrassmannElement out = f;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    switch (*it) {
      case GrassmannOpKind::MultiplyZ:
        out = multiply(GrassmannElement::z(f.params()), out);
        break;
      case GrassmannOpKind::MultiplyZbar:
        out = multiply(GrassmannElement::zbar(f.params()), out);
        break;
      case GrassmannOpKind::Dz:
        out = d_z(out);
        break;
      case GrassmannOpKind::Dzbar:
        out = d_zbar(out);
        break;
      case GrassmannOpKind::Composition:
        throw std::logic_error("composition marker inside a factor list");
    }
  }
  return out;
}

FockOperator realization_matrix(const GrassmannOperator& op, const DeformationParams& params) {
  bool holomorphic = false;
  bool antiholomorphic = false;
  for (auto f : op.factors()) {
    if (f == GrassmannOpKind::MultiplyZ || f == GrassmannOpKind::Dz) holomorphic = true;
    if (f == GrassmannOpKind::MultiplyZbar || f == GrassmannOpKind::Dzbar) antiholomorphic = true;
  }
  if (holomorphic == antiholomorphic) {
    throw std::invalid_argument(
        "realization_matrix: operator must act within the z sector or the zbar sector");
  }

  const int k = params.k();
  const Complex root = holomorphic ? params.q() : params.q_bar();
  std::vector<Complex> norm(k);
  for (int n = 0; n < k; ++n) norm[n] = qfactorial_sqrt(n, root);

  auto basis = [&](int n) {
    return holomorphic ? GrassmannElement::monomial(params, n, 0, 1.0 / norm[n])
                       : GrassmannElement::monomial(params, 0, n, 1.0 / norm[n]);
  };

  FockOperator m = FockOperator::Zero(k, k);
  for (int col = 0; col < k; ++col) {
    const GrassmannElement image = op.apply(basis(col));
    for (const auto& [mono, c] : image.coeffs()) {
      const int other = holomorphic ? mono.zbar : mono.z;
      const int row = holomorphic ? mono.z : mono.zbar;
      if (other != 0) throw std::logic_error("realization_matrix: image left its sector");
      m(row, col) = c * norm[row];
    }
  }
  return m;
}

VerificationReport reorder_identity_check(int n, const DeformationParams& params) {
  if (n < 0 || n > params.k() - 1) {
    throw std::invalid_argument("reorder_identity_check: n must lie in [0, k-1]");
  }
  const int k = params.k();
  const auto z = GrassmannElement::z(params);
  const auto zbar = GrassmannElement::zbar(params);
  const auto lhs = power(zbar, n) * power(z, n);
  const std::int64_t nn = n;
  const auto rhs = params.q_half_pow(-nn * (nn - 1) / 2) * power(zbar * z, n);
  const auto closed = GrassmannElement::monomial(params, n, n, params.q_half_pow(-nn * nn));

  VerificationReport r;
  const ParamMap p{{"n", std::to_string(n)}};
  r.add("Eq.45", k, relative_residual(lhs, rhs), params.tol(), p);
  ParamMap p2 = p;
  p2["check"] = "normal form q^{-n^2/2} z^n zbar^n";
  r.add("Eq.45", k, relative_residual(lhs, closed), params.tol(), p2);
  return r;
}

namespace {

GrassmannElement random_element(const DeformationParams& p, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  GrassmannElement e(p);
  for (int a = 0; a < p.k(); ++a)
    for (int b = 0; b < p.k(); ++b) e.add_term(a, b, Complex(u(rng), u(rng)));
  return e;
}

}  // namespace

VerificationReport algebra_check(const DeformationParams& params, unsigned seed) {
  const int k = params.k();
  const double tol = kCoefficientTolerance;
  const auto z = GrassmannElement::z(params);
  const auto zbar = GrassmannElement::zbar(params);
  const GrassmannElement zero(params);
  VerificationReport r;
  r.add("Eq.21", k, relative_residual(power(z, k), zero), tol);
  r.add("Eq.22", k, relative_residual(power(zbar, k), zero), tol);
  r.add("Eq.21", k, power(z, k - 1).is_zero() ? 1.0 : 0.0, tol, {{"check", "z^{k-1} != 0"}});
  r.add("Eq.35", k,
        relative_residual(zbar * z, GrassmannElement::monomial(params, 1, 1, params.q_half_pow(-1))), tol,
        {{"check", "zbar z = q^{-1/2} z zbar"}});
  r.add("Eq.35", k, relative_residual(z * zbar, params.q_half_pow(1) * (zbar * z)), tol,
        {{"check", "z zbar = q^{1/2} zbar z"}});

  std::mt19937 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < 8; ++t) {
    const auto x = random_element(params, rng);
    const auto y = random_element(params, rng);
    const auto w = random_element(params, rng);
    worst = std::max(worst, relative_residual((x * y) * w, x * (y * w)));
  }
  r.add("Eq.35", k, worst, tol, {{"check", "associativity"}, {"seed", std::to_string(seed)}},
        "8 random triples");
  return r;
}

VerificationReport derivative_check(const DeformationParams& params) {
  const int k = params.k();
  const double tol = kCoefficientTolerance;
  VerificationReport r;

  double act_z = 0.0, act_zbar = 0.0;
  for (int n = 0; n < k; ++n) {
    const auto zn = GrassmannElement::monomial(params, n, 0);
    const auto zbn = GrassmannElement::monomial(params, 0, n);
    const GrassmannElement want_z =
        n == 0 ? GrassmannElement(params) : GrassmannElement::monomial(params, n - 1, 0, params.qnum(n));
    const GrassmannElement want_zbar =
        n == 0 ? GrassmannElement(params) : GrassmannElement::monomial(params, 0, n - 1, params.qnum_bar(n));
    act_z = std::max(act_z, relative_residual(d_z(zn), want_z));
    act_zbar = std::max(act_zbar, relative_residual(d_zbar(zbn), want_zbar));
  }
  r.add("Eq.25", k, act_z, tol);
  r.add("Eq.26", k, act_zbar, tol);

  const auto dz = GrassmannOperator::generator(GrassmannOpKind::Dz);
  const auto dzb = GrassmannOperator::generator(GrassmannOpKind::Dzbar);
  const auto dz_k = GrassmannOperator::power(dz, k);
  const auto dzb_k = GrassmannOperator::power(dzb, k);
  const GrassmannElement zero(params);
  double nil_z = 0.0, nil_zbar = 0.0, comm = 0.0;
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const auto m = GrassmannElement::monomial(params, a, b);
      nil_z = std::max(nil_z, relative_residual(dz_k.apply(m), zero));
      nil_zbar = std::max(nil_zbar, relative_residual(dzb_k.apply(m), zero));
      comm = std::max(comm, relative_residual(d_z(d_zbar(m)), params.q_half_pow(-1) * d_zbar(d_z(m))));
    }
  }
  const ParamMap all{{"monomials", std::to_string(k * k)}};
  r.add("Eq.31", k, nil_z, tol, all);
  r.add("Eq.32", k, nil_zbar, tol, all);
  if (k > 1) {
    const auto top_z = GrassmannOperator::power(dz, k - 1).apply(GrassmannElement::monomial(params, k - 1, 0));
    const auto top_zbar =
        GrassmannOperator::power(dzb, k - 1).apply(GrassmannElement::monomial(params, 0, k - 1));
    r.add("Eq.31", k, top_z.is_zero() ? 1.0 : 0.0, tol, {{"check", "d_z^{k-1} z^{k-1} != 0"}});
    r.add("Eq.32", k, top_zbar.is_zero() ? 1.0 : 0.0, tol, {{"check", "d_zbar^{k-1} zbar^{k-1} != 0"}});
  }
  r.add("Eq.36", k, comm, tol, all);
  return r;
}

VerificationReport berezin_check(const DeformationParams& params) {
  const int k = params.k();
  const double tol = kCoefficientTolerance;
  VerificationReport r;
  double low = 0.0;
  for (int p = 0; p + 1 < k; ++p) {
    low = std::max(low, relative_residual(berezin_z(GrassmannElement::monomial(params, p, 0)),
                                          GrassmannElement(params)));
    low = std::max(low, relative_residual(berezin_zbar(GrassmannElement::monomial(params, 0, p)),
                                          GrassmannElement(params)));
  }
  const auto one = GrassmannElement::constant(params, 1.0);
  r.add("Eq.50", k, low, tol, {{"check", "lower powers integrate to 0"}});
  r.add("Eq.50", k,
        std::max(relative_residual(berezin_z(GrassmannElement::monomial(params, k - 1, 0)), one),
                 relative_residual(berezin_zbar(GrassmannElement::monomial(params, 0, k - 1)), one)),
        tol, {{"check", "top power integrates to 1"}});
  return r;
}

VerificationReport realization_check(const QuonRep& rep) {
  const auto& p = rep.params;
  const int k = p.k();
  const double tol = kCoefficientTolerance;
  auto real = [&](GrassmannOpKind kind) {
    return realization_matrix(GrassmannOperator::generator(kind), p);
  };
  QuonRep g = rep;
  g.a_minus = real(GrassmannOpKind::Dz);
  g.a_plus = real(GrassmannOpKind::MultiplyZ);
  g.a_plus_dag = real(GrassmannOpKind::Dzbar);
  g.a_minus_dag = real(GrassmannOpKind::MultiplyZbar);

  VerificationReport r;
  r.add("Eq.33", k, relative_residual(g.a_minus, rep.a_minus), tol, {{"generator", "d_z"}});
  r.add("Eq.33", k, relative_residual(g.a_plus, rep.a_plus), tol, {{"generator", "z"}});
  r.add("Eq.34", k, relative_residual(g.a_plus_dag, rep.a_plus_dag), tol, {{"generator", "d_zbar"}});
  r.add("Eq.34", k, relative_residual(g.a_minus_dag, rep.a_minus_dag), tol, {{"generator", "zbar"}});

  // The same relations the Fock matrices satisfy, now on the realization.
  const VerificationReport on_realization = verify_defining_relations(g);
  for (const auto& e : on_realization.entries()) {
    ParamMap prm = e.params;
    prm["source"] = "grassmann";
    r.add(e.equation_tag, e.k, e.residual, e.tol, std::move(prm), e.detail);
  }
  return r;
}

}  // namespace kfermion
