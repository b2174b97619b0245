#include "kfermion/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace kfermion {

namespace {

std::string idx(LatticeIndex n) {
  return "(" + std::to_string(n.n1) + "," + std::to_string(n.n2) + ")";
}

const char* side_label(PairSide s) { return s == PairSide::UV ? "UV" : "XY"; }

FockOperator checked_inverse(const FockOperator& m, const char* name, double tol) {
  Eigen::JacobiSVD<FockOperator> svd(m);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  const double cond = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  if (!(cond <= 1.0 / tol)) {
    throw std::runtime_error(std::string("conditioning: ") + name + " has condition number " +
                             format_double(cond) + " beyond 1/tol");
  }
  const FockOperator inv = Eigen::FullPivLU<FockOperator>(m).inverse();
  const double rt = relative_residual(FockOperator(m * inv), identity(static_cast<int>(m.rows())));
  if (!(rt <= tol)) {
    throw std::runtime_error(std::string("conditioning: ") + name + " inverse round trip residual " +
                             format_double(rt));
  }
  return inv;
}

FockOperator signed_power(const FockOperator& m, const FockOperator& inv, int n) {
  return n >= 0 ? matrix_power(m, n) : matrix_power(inv, -n);
}

// T_m T_n and T_n T_m compared against the lattice prediction.
struct PairProducts {
  double product = 0.0;
  double sine = 0.0;
};

PairProducts compare(const FockOperator& tm, const FockOperator& tn, const FockOperator& tmn,
                     int cr, const DeformationParams& p) {
  const FockOperator mn = tm * tn;
  const FockOperator nm = tn * tm;
  const FockOperator want_prod = p.q_half_pow(-cr) * tmn;
  const Complex sine(0.0, -2.0 * std::sin(std::numbers::pi * cr / p.k()));
  const FockOperator want_comm = sine * tmn;
  return {relative_residual(mn, want_prod), relative_residual(FockOperator(mn - nm), want_comm)};
}

ParamMap point_params(LatticeIndex m, LatticeIndex n, PairSide side) {
  return {{"m", idx(m)}, {"n", idx(n)}, {"pair", side_label(side)}};
}

}  // namespace

SymmetryPair build_pair(const QuonRep& rep, const PhaseConfig& cfg) {
  const double tol = rep.params.tol();
  SymmetryPair p{rep.params, {}, {}, {}, {}, {}, {}, {}, {}};
  p.U = rep.a_minus * rep.a_plus - rep.a_plus * rep.a_minus;
  p.V = quon_phase(rep, cfg, PhaseSign::Plus);
  p.X = rep.a_plus_dag * rep.a_minus_dag - rep.a_minus_dag * rep.a_plus_dag;
  p.Y = quon_phase(rep, cfg, PhaseSign::Minus);
  p.U_inv = checked_inverse(p.U, "U", tol);
  p.V_inv = checked_inverse(p.V, "V", tol);
  p.X_inv = checked_inverse(p.X, "X", tol);
  p.Y_inv = checked_inverse(p.Y, "Y", tol);
  return p;
}

FockOperator t_generator(const SymmetryPair& pair, LatticeIndex n, PairSide side) {
  const bool uv = side == PairSide::UV;
  const FockOperator a = signed_power(uv ? pair.U : pair.X, uv ? pair.U_inv : pair.X_inv, n.n1);
  const FockOperator b = signed_power(uv ? pair.V : pair.Y, uv ? pair.V_inv : pair.Y_inv, n.n2);
  return pair.params.q_half_pow(static_cast<std::int64_t>(n.n1) * n.n2) * (a * b);
}

TLattice::TLattice(const SymmetryPair& pair, int bound, PairSide side) : bound_(bound), side_(side) {
  if (bound < 0) throw std::invalid_argument("TLattice: bound must be >= 0");
  const int w = 2 * bound + 1;
  const bool uv = side == PairSide::UV;
  std::vector<FockOperator> first(w), second(w);
  for (int e = -bound; e <= bound; ++e) {
    first[e + bound] = signed_power(uv ? pair.U : pair.X, uv ? pair.U_inv : pair.X_inv, e);
    second[e + bound] = signed_power(uv ? pair.V : pair.Y, uv ? pair.V_inv : pair.Y_inv, e);
  }
  t_.resize(static_cast<std::size_t>(w) * w);
  for (int a = -bound; a <= bound; ++a) {
    for (int b = -bound; b <= bound; ++b) {
      t_[(a + bound) * w + (b + bound)] =
          pair.params.q_half_pow(static_cast<std::int64_t>(a) * b) * (first[a + bound] * second[b + bound]);
    }
  }
}

const FockOperator& TLattice::at(LatticeIndex n) const {
  if (std::abs(n.n1) > bound_ || std::abs(n.n2) > bound_) {
    throw std::out_of_range("TLattice: index " + idx(n) + " outside the cached range");
  }
  const int w = 2 * bound_ + 1;
  return t_[(n.n1 + bound_) * w + (n.n2 + bound_)];
}

VerificationReport product_law_check(const SymmetryPair& pair, LatticeIndex m, LatticeIndex n,
                                     PairSide side) {
  const auto res = compare(t_generator(pair, m, side), t_generator(pair, n, side),
                           t_generator(pair, m + n, side), cross(m, n), pair.params);
  VerificationReport r;
  r.add("Eq.93", pair.params.k(), res.product, pair.params.tol(), point_params(m, n, side));
  return r;
}

VerificationReport sine_commutator_check(const SymmetryPair& pair, LatticeIndex m, LatticeIndex n,
                                         PairSide side) {
  const auto res = compare(t_generator(pair, m, side), t_generator(pair, n, side),
                           t_generator(pair, m + n, side), cross(m, n), pair.params);
  VerificationReport r;
  r.add("Eq.95", pair.params.k(), res.sine, pair.params.tol(), point_params(m, n, side));
  return r;
}

namespace {

double phase_defect(const FockOperator& tm, const FockOperator& tn, const FockOperator& tmn_inv,
                    int cr, const DeformationParams& p) {
  const FockOperator ratio = tm * tn * tmn_inv;
  const Complex scalar = ratio(0, 0);
  const double shape = relative_residual(ratio, FockOperator(scalar * identity(static_cast<int>(ratio.rows()))));
  return std::max(shape, relative_residual(scalar, p.q_half_pow(-cr)));
}

}  // namespace

VerificationReport phase_consistency_check(const SymmetryPair& pair, LatticeIndex m, LatticeIndex n) {
  const FockOperator tmn = t_generator(pair, m + n);
  const FockOperator inv = Eigen::FullPivLU<FockOperator>(tmn).inverse();
  VerificationReport r;
  r.add("Eq.91", pair.params.k(),
        phase_defect(t_generator(pair, m), t_generator(pair, n), inv, cross(m, n), pair.params),
        pair.params.tol(), point_params(m, n, PairSide::UV));
  return r;
}

VerificationReport exchange_check(const SymmetryPair& pair) {
  const auto& p = pair.params;
  const int k = p.k();
  const double tol = p.tol();
  VerificationReport r;

  FockOperator clock = FockOperator::Zero(k, k);
  for (int n = 0; n < k; ++n) clock(n, n) = p.q_pow(n);
  r.add("Eq.87", k, relative_residual(pair.U, clock), tol, {{"check", "U = diag(q^n)"}});
  r.add("Eq.87", k, relative_residual(FockOperator(pair.U * pair.U_inv), identity(k)), tol,
        {{"check", "U U^-1 = 1"}});
  r.add("Eq.87", k, relative_residual(FockOperator(pair.V * pair.V_inv), identity(k)), tol,
        {{"check", "V V^-1 = 1"}});
  r.add("Eq.88", k, relative_residual(pair.X, pair.U.adjoint()), tol, {{"check", "X = U^+"}});
  r.add("Eq.88", k, relative_residual(pair.Y, pair.V.adjoint()), tol, {{"check", "Y = V^+"}});
  r.add("Eq.88", k, relative_residual(FockOperator(pair.Y * pair.Y_inv), identity(k)), tol,
        {{"check", "Y Y^-1 = 1"}});

  r.add("Eq.89", k, relative_residual(FockOperator(pair.V * pair.U), FockOperator(p.q() * pair.U * pair.V)),
        tol, {{"pair", "UV"}, {"check", "VU = q UV"}});
  r.add("Eq.89", k,
        relative_residual(FockOperator(pair.X * pair.Y), FockOperator(p.q_bar() * pair.Y * pair.X)), tol,
        {{"pair", "XY"}, {"check", "XY = qbar YX"}});

  double worst = 0.0;
  int worst_n = 0, worst_m = 0;
  for (int n = 0; n <= 3; ++n) {
    for (int m = 0; m <= 3; ++m) {
      const FockOperator vn = matrix_power(pair.V, n);
      const FockOperator um = matrix_power(pair.U, m);
      const double res = relative_residual(FockOperator(vn * um), FockOperator(p.q_pow(n * m) * um * vn));
      if (res > worst) {
        worst = res;
        worst_n = n;
        worst_m = m;
      }
    }
  }
  r.add("Eq.90", k, worst, tol, {{"n", std::to_string(worst_n)}, {"m", std::to_string(worst_m)}},
        "worst over 0 <= n, m <= 3");
  return r;
}

std::vector<SweepPoint> lattice_sweep(const SymmetryPair& pair, int bound, PairSide side) {
  if (bound < 0) throw std::invalid_argument("lattice_sweep: bound must be >= 0");
  const TLattice t(pair, 2 * bound, side);
  std::vector<FockOperator> inverses;
  const int w = 4 * bound + 1;
  if (side == PairSide::UV) {
    inverses.resize(static_cast<std::size_t>(w) * w);
    for (int a = -2 * bound; a <= 2 * bound; ++a)
      for (int b = -2 * bound; b <= 2 * bound; ++b)
        inverses[(a + 2 * bound) * w + (b + 2 * bound)] =
            Eigen::FullPivLU<FockOperator>(t.at({a, b})).inverse();
  }

  std::vector<SweepPoint> out;
  for (int m1 = -bound; m1 <= bound; ++m1)
    for (int m2 = -bound; m2 <= bound; ++m2)
      for (int n1 = -bound; n1 <= bound; ++n1)
        for (int n2 = -bound; n2 <= bound; ++n2) {
          const LatticeIndex m{m1, m2}, n{n1, n2};
          const LatticeIndex s = m + n;
          const int cr = cross(m, n);
          const auto res = compare(t.at(m), t.at(n), t.at(s), cr, pair.params);
          SweepPoint pt{side, m, n, res.product, res.sine, 0.0};
          if (side == PairSide::UV) {
            pt.phase_residual = phase_defect(t.at(m), t.at(n),
                                             inverses[(s.n1 + 2 * bound) * w + (s.n2 + 2 * bound)], cr,
                                             pair.params);
          }
          out.push_back(pt);
        }
  return out;
}

VerificationReport sweep_report(const std::vector<SweepPoint>& points, const DeformationParams& params) {
  VerificationReport r;
  if (points.empty()) return r;
  struct Worst {
    double value = -1.0;
    const SweepPoint* at = nullptr;
  };
  Worst prod, sine, phase;
  for (const auto& pt : points) {
    // A NaN anywhere must surface, so it wins the comparison.
    auto take = [&](Worst& w, double v) {
      if (w.at == nullptr || std::isnan(v) || (!std::isnan(w.value) && v > w.value)) w = {v, &pt};
    };
    take(prod, pt.product_residual);
    take(sine, pt.sine_residual);
    take(phase, pt.phase_residual);
  }
  const PairSide side = points.front().side;
  const std::string count = std::to_string(points.size()) + " lattice pairs";
  r.add("Eq.93", params.k(), prod.value, params.tol(), point_params(prod.at->m, prod.at->n, side),
        "worst of " + count);
  r.add("Eq.95", params.k(), sine.value, params.tol(), point_params(sine.at->m, sine.at->n, side),
        "worst of " + count);
  if (side == PairSide::UV) {
    r.add("Eq.91", params.k(), phase.value, params.tol(), point_params(phase.at->m, phase.at->n, side),
          "worst of " + count);
  }
  return r;
}

UqSl2Generators uqsl2_generators(const SymmetryPair& pair) {
  const auto& p = pair.params;
  if (p.k() == 2) {
    throw std::domain_error("uqsl2_generators: k = 2 gives q = q^{-1}, so q - q^{-1} = 0 divides J_pm");
  }
  const Complex d = p.q() - p.q_bar();
  UqSl2Generators g;
  g.J_plus = (t_generator(pair, {1, 1}) - t_generator(pair, {-1, 1})) / d;
  g.J_minus = (t_generator(pair, {-1, -1}) - t_generator(pair, {1, -1})) / d;
  g.K = t_generator(pair, {-2, 0});
  g.K_inv = t_generator(pair, {2, 0});
  return g;
}

VerificationReport uqsl2_relations_check(const UqSl2Generators& g, const SymmetryPair& pair) {
  const auto& p = pair.params;
  const int k = p.k();
  const double tol = p.tol();
  const Complex d = p.q() - p.q_bar();
  VerificationReport r;

  FockOperator clock2 = FockOperator::Zero(k, k);
  for (int n = 0; n < k; ++n) clock2(n, n) = p.q_pow(-2 * n);
  r.add("Eq.98", k, relative_residual(g.K, clock2), tol, {{"check", "K = U^-2"}});
  r.add("Eq.98", k, relative_residual(FockOperator(g.K * g.K_inv), identity(k)), tol,
        {{"check", "K K^-1 = 1"}});

  // d^2 J_+ J_- = 2 - q U^2 - q^{-1} U^{-2}
  const FockOperator u2 = pair.U * pair.U;
  const FockOperator u2i = pair.U_inv * pair.U_inv;
  const FockOperator closed = (2.0 * identity(k) - p.q() * u2 - p.q_bar() * u2i) / (d * d);
  r.add("Eq.96", k, relative_residual(FockOperator(g.J_plus * g.J_minus), closed), tol,
        {{"check", "J+ J- closed form"}});

  const FockOperator comm = g.J_plus * g.J_minus - g.J_minus * g.J_plus;
  r.add("Eq.99", k, relative_residual(comm, FockOperator((g.K - g.K_inv) / d)), tol);
  r.add("Eq.100", k,
        relative_residual(FockOperator(g.K * g.J_plus * g.K_inv), FockOperator(p.q_pow(2) * g.J_plus)), tol,
        {{"sign", "+"}});
  r.add("Eq.100", k,
        relative_residual(FockOperator(g.K * g.J_minus * g.K_inv), FockOperator(p.q_pow(-2) * g.J_minus)),
        tol, {{"sign", "-"}});
  return r;
}

}  // namespace kfermion
