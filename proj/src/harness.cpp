#include "kfermion/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "kfermion/coherent.hpp"
#include "kfermion/fockrep.hpp"
#include "kfermion/grassmann.hpp"
#include "kfermion/phase.hpp"
#include "kfermion/serialize.hpp"
#include "kfermion/symmetry.hpp"

namespace kfermion {

using nlohmann::json;

namespace {

constexpr Complex kSupercoherentAlpha{0.7, 0.2};
constexpr double kOracleEps = 1e-4;
constexpr int kMaxLimitR = 3;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not an integer: '" + s + "'");
  return v;
}

std::string csv_quote(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string params_string(const ParamMap& p) {
  std::string out;
  for (const auto& [k, v] : p) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

std::size_t tag_rank(const std::string& tag) {
  const auto& reg = equation_registry();
  return static_cast<std::size_t>(std::find(reg.begin(), reg.end(), tag) - reg.begin());
}

// Runs one group of checks; an exception becomes a failed entry under fail_tag.
void guarded(VerificationReport& out, std::string_view fail_tag, int k, double tol, Suite suite,
             const std::function<VerificationReport()>& fn) {
  try {
    out.merge(fn());
  } catch (const std::exception& e) {
    std::string what = e.what();
    if (what.rfind("conditioning", 0) != 0) what = "conditioning: " + what;
    out.add(fail_tag, k, std::numeric_limits<double>::quiet_NaN(), tol,
            {{"suite", std::string(suite_name(suite))}}, what);
  }
}

VerificationReport qcore_checks(const DeformationParams& p) {
  VerificationReport r;
  for (int n = 0; n <= p.k(); ++n) r.merge(conj_qnum_identity_check(n, p));
  double worst = 0.0;
  for (int n = 0; n <= p.k(); ++n) {
    worst = std::max(worst, relative_residual(qnum(static_cast<double>(n), p.q()), qnum_polar(n, p)));
  }
  r.add("Eq.A2", p.k(), worst, p.tol(), {{"check", "polar form"}}, "n = 0..k");
  return r;
}

VerificationReport numeric_limit_oracle(const SupercoherentState& st, int r_top, const DeformationParams& p) {
  const int k = p.k();
  double worst = 0.0;
  int wr = 0, ws = 0;
  for (int r = 0; r <= r_top; ++r) {
    for (int s = 0; s < k; ++s) {
      const Complex c = supercoherent_numeric_coefficient(st.alpha, r, s, kOracleEps, p);
      const double err = std::abs(c - st.grid(r, s)) / std::max(1.0, std::abs(st.grid(r, s)));
      if (!(err <= worst)) {
        worst = err;
        wr = r;
        ws = s;
      }
    }
  }
  VerificationReport rep;
  rep.add("Eq.65", k, worst, 10.0 * k * kOracleEps,
          {{"eps", g17(kOracleEps)}, {"r", std::to_string(wr)}, {"s", std::to_string(ws)}},
          "numeric Q -> q limit, worst over r <= " + std::to_string(r_top));
  return rep;
}

VerificationReport symmetry_checks(const SymmetryPair& pair) {
  const auto& p = pair.params;
  VerificationReport r = exchange_check(pair);
  r.merge(sweep_report(lattice_sweep(pair, kDefaultSweepBound, PairSide::UV), p));
  r.merge(sweep_report(lattice_sweep(pair, kDefaultSweepBound, PairSide::XY), p));
  if (p.k() == 2) {
    try {
      uqsl2_generators(pair);
      r.add("Eq.96", 2, 1.0, p.tol(), {{"check", "k = 2 rejected"}}, "k = 2 was not rejected");
    } catch (const std::domain_error& e) {
      r.add("Eq.96", 2, 0.0, p.tol(), {{"check", "k = 2 rejected"}}, e.what());
    }
    return r;
  }
  r.merge(uqsl2_relations_check(uqsl2_generators(pair), pair));
  return r;
}

}  // namespace

std::string_view suite_name(Suite s) {
  switch (s) {
    case Suite::FockRep: return "fockrep";
    case Suite::Grassmann: return "grassmann";
    case Suite::Coherent: return "coherent";
    case Suite::Phase: return "phase";
    case Suite::Symmetry: return "symmetry";
  }
  return "?";
}

Suite parse_suite(std::string_view name) {
  for (Suite s : all_suites())
    if (suite_name(s) == name) return s;
  throw ConfigError("unknown suite '" + std::string(name) +
                    "' (expected fockrep, grassmann, coherent, phase, symmetry)");
}

std::string_view format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Text: return "text";
  }
  return "?";
}

OutputFormat parse_format(std::string_view name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "text") return OutputFormat::Text;
  throw ConfigError("unknown output format '" + std::string(name) + "' (expected json, csv, text)");
}

TableKind parse_table_kind(std::string_view name) {
  if (name == "coherence") return TableKind::Coherence;
  if (name == "limits") return TableKind::Limits;
  if (name == "residuals") return TableKind::Residuals;
  throw ConfigError("unknown table '" + std::string(name) + "' (expected coherence, limits, residuals)");
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> s{Suite::FockRep, Suite::Grassmann, Suite::Coherent, Suite::Phase,
                                    Suite::Symmetry};
  return s;
}

void RunConfig::validate() const {
  if (k_list.empty()) throw ConfigError("k list is empty");
  const int k_cap = extended ? kMaxExtendedK : kMaxStandardK;
  for (int k : k_list) {
    if (k < 2) throw ConfigError("k = " + std::to_string(k) + " is below 2");
    if (k > k_cap) {
      throw ConfigError("k = " + std::to_string(k) + " exceeds " + std::to_string(k_cap) +
                        (extended ? "" : " (use extended mode for k up to 64)"));
    }
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ConfigError("tol must be a positive finite number");
  if (!std::isfinite(theta0)) throw ConfigError("theta0 must be finite");
  if (r_max < 1) throw ConfigError("r_max must be >= 1");
  if (n_max < 0) throw ConfigError("n_max must be >= 0");
  if (eps_schedule.empty()) throw ConfigError("eps schedule is empty");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    const double e = eps_schedule[i];
    if (!(e > 0.0 && e <= 0.1)) throw ConfigError("eps values must lie in (0, 0.1]");
    if (i > 0 && !(e < eps_schedule[i - 1])) throw ConfigError("eps schedule must be strictly decreasing");
  }
  if (suites.empty()) throw ConfigError("no suites selected");
}

double RunConfig::effective_tol() const { return extended ? std::max(tol, kExtendedTolerance) : tol; }

std::vector<int> parse_k_list(std::string_view text) {
  std::vector<int> out;
  std::string s(text);
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) throw ConfigError("empty entry in k list '" + s + "'");
    const auto dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(tok));
      continue;
    }
    const int a = parse_int(trim(tok.substr(0, dots)));
    const int b = parse_int(trim(tok.substr(dots + 2)));
    if (b < a) throw ConfigError("descending range '" + tok + "'");
    for (int k = a; k <= b; ++k) out.push_back(k);
  }
  if (out.empty()) throw ConfigError("k list is empty");
  return out;
}

namespace {

json config_json(const RunConfig& cfg) {
  json suites = json::array();
  for (Suite s : cfg.suites) suites.push_back(std::string(suite_name(s)));
  return {{"k_list", cfg.k_list},
          {"theta0", cfg.theta0},
          {"tol", cfg.tol},
          {"n_max", cfg.n_max},
          {"r_max", cfg.r_max},
          {"eps_schedule", cfg.eps_schedule},
          {"suites", std::move(suites)},
          {"output_format", std::string(format_name(cfg.output_format))},
          {"output_path", cfg.output_path ? json(*cfg.output_path) : json()},
          {"extended", cfg.extended}};
}

}  // namespace

RunConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "k_list") {
        cfg.k_list = v.is_string() ? parse_k_list(v.get<std::string>()) : v.get<std::vector<int>>();
      } else if (key == "theta0") {
        cfg.theta0 = v.get<double>();
      } else if (key == "tol") {
        cfg.tol = v.get<double>();
      } else if (key == "n_max") {
        cfg.n_max = v.get<int>();
      } else if (key == "r_max") {
        cfg.r_max = v.get<int>();
      } else if (key == "eps_schedule") {
        cfg.eps_schedule = v.get<std::vector<double>>();
      } else if (key == "suites") {
        cfg.suites.clear();
        for (const auto& s : v) cfg.suites.push_back(parse_suite(s.get<std::string>()));
      } else if (key == "output_format") {
        cfg.output_format = parse_format(v.get<std::string>());
      } else if (key == "output_path") {
        if (v.is_null()) cfg.output_path.reset();
        else cfg.output_path = v.get<std::string>();
      } else if (key == "extended") {
        cfg.extended = v.get<bool>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) { return config_json(cfg).dump(2); }

VerificationReport run_suites(const RunConfig& cfg) {
  cfg.validate();
  const double tol = cfg.effective_tol();
  auto selected = [&](Suite s) { return std::find(cfg.suites.begin(), cfg.suites.end(), s) != cfg.suites.end(); };

  VerificationReport out;
  for (int k : cfg.k_list) {
    const auto params = DeformationParams::make(k, tol);
    const auto pc = PhaseConfig::make(cfg.theta0, k);
    std::optional<QuonRep> rep;
    try {
      rep = build_rep(params);
    } catch (const std::exception& e) {
      out.add("Eq.1", k, std::numeric_limits<double>::quiet_NaN(), tol, {},
              std::string("conditioning: ") + e.what());
      continue;
    }

    if (selected(Suite::FockRep)) {
      guarded(out, "Eq.1", k, tol, Suite::FockRep, [&] { return verify_defining_relations(*rep); });
      guarded(out, "Eq.4a", k, tol, Suite::FockRep, [&] { return verify_derived_relations(*rep); });
      guarded(out, "Eq.A2", k, tol, Suite::FockRep, [&] { return qcore_checks(params); });
    }
    if (selected(Suite::Grassmann)) {
      guarded(out, "Eq.35", k, tol, Suite::Grassmann, [&] { return algebra_check(params); });
      guarded(out, "Eq.31", k, tol, Suite::Grassmann, [&] { return derivative_check(params); });
      guarded(out, "Eq.50", k, tol, Suite::Grassmann, [&] { return berezin_check(params); });
      guarded(out, "Eq.33", k, tol, Suite::Grassmann, [&] { return realization_check(*rep); });
      guarded(out, "Eq.45", k, tol, Suite::Grassmann, [&] {
        VerificationReport r;
        for (int n = 0; n < k; ++n) r.merge(reorder_identity_check(n, params));
        return r;
      });
    }
    if (selected(Suite::Coherent)) {
      guarded(out, "Eq.39", k, tol, Suite::Coherent, [&] {
        VerificationReport r = eigenstate_check(*rep, coherent_ket(params));
        r.merge(eigenstate_check(*rep, coherent_ket_bar(params)));
        return r;
      });
      guarded(out, "Eq.49", k, tol, Suite::Coherent, [&] { return scalar_product_check(params); });
      guarded(out, "Eq.51", k, tol, Suite::Coherent, [&] { return overcompleteness_check(*rep, params); });
      guarded(out, "Eq.57", k, tol, Suite::Coherent, [&] { return coherence_check(k + 1, params); });
      guarded(out, "Eq.64a", k, tol, Suite::Coherent, [&] {
        VerificationReport r;
        for (int rr = 1; rr <= kMaxLimitR; ++rr)
          for (int s = 0; s < k; ++s) r.merge(limit_ratios(rr, s, cfg.eps_schedule, params));
        return r;
      });
      guarded(out, "Eq.69", k, tol, Suite::Coherent, [&] {
        const auto st = supercoherent_limit(kSupercoherentAlpha, cfg.r_max, params);
        VerificationReport r = supercoherent_check(st, params);
        r.merge(numeric_limit_oracle(st, std::min(cfg.n_max, cfg.r_max), params));
        return r;
      });
    }
    if (selected(Suite::Phase)) {
      guarded(out, "Eq.70", k, tol, Suite::Phase, [&] {
        const auto basis = phase_states(k, pc);
        VerificationReport r = phase_basis_check(basis, tol);
        r.merge(phase_operator_check(basis, tol));
        r.merge(exp_phase_check(basis, pc, tol));
        return r;
      });
      guarded(out, "Eq.84", k, tol, Suite::Phase, [&] { return quon_phase_check(*rep, pc); });
    }
    if (selected(Suite::Symmetry)) {
      guarded(out, "Eq.87", k, tol, Suite::Symmetry, [&] { return symmetry_checks(build_pair(*rep, pc)); });
    }
  }
  return out;
}

std::string render_json(const RunConfig& cfg, const VerificationReport& r) {
  const json doc{{"config", config_json(cfg)},
                 {"entries", report_to_json(r)},
                 {"summary", {{"total", r.size()}, {"passed", r.passed_count()}, {"failed", r.failed_count()}}}};
  return doc.dump(2) + "\n";
}

std::string render_csv(const VerificationReport& r) {
  std::string out = "k,equation_tag,params,residual,tol,passed,detail\n";
  for (const auto& e : r.entries()) {
    out += std::to_string(e.k) + "," + e.equation_tag + "," + csv_quote(params_string(e.params)) + "," +
           g17(e.residual) + "," + g17(e.tol) + "," + (e.passed ? "true" : "false") + "," +
           csv_quote(e.detail) + "\n";
  }
  return out;
}

std::string render_text(const VerificationReport& r) {
  std::string out;
  for (const auto& e : r.entries()) {
    out += std::string(e.passed ? "PASS " : "FAIL ") + e.equation_tag + " k=" + std::to_string(e.k);
    if (!e.params.empty()) out += " [" + params_string(e.params) + "]";
    out += " residual=" + g17(e.residual) + " tol=" + g17(e.tol);
    if (!e.detail.empty()) out += "  " + e.detail;
    out += "\n";
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu checks, %zu passed, %zu failed\n", r.size(), r.passed_count(),
                r.failed_count());
  return out + buf;
}

std::string render(const RunConfig& cfg, const VerificationReport& r) {
  switch (cfg.output_format) {
    case OutputFormat::Json: return render_json(cfg, r);
    case OutputFormat::Csv: return render_csv(r);
    case OutputFormat::Text: return render_text(r);
  }
  return {};
}

std::string emit_table(TableKind kind, const RunConfig& cfg) {
  cfg.validate();
  const double tol = cfg.effective_tol();
  std::string out;

  if (kind == TableKind::Coherence) {
    out = "k,m,re,im,abs,expected\n";
    for (int k : cfg.k_list) {
      const auto p = DeformationParams::make(k, tol);
      for (int m = 1; m <= k + 1; ++m) {
        const Complex g = coherence_factor(m, p);
        out += std::to_string(k) + "," + std::to_string(m) + "," + g17(g.real()) + "," + g17(g.imag()) + "," +
               g17(std::abs(g)) + "," + (m <= k - 1 ? "1" : "0") + "\n";
      }
    }
    return out;
  }

  if (kind == TableKind::Limits) {
    out = "k,r,s,ratio,eps,ratio_re,ratio_im,expected,abs_err\n";
    auto row = [&](int k, const LimitSample& t) {
      out += std::to_string(k) + "," + std::to_string(t.r) + "," + std::to_string(t.s) + "," + t.ratio + "," +
             g17(t.eps) + "," + g17(t.value.real()) + "," + g17(t.value.imag()) + "," + g17(t.expected) + "," +
             g17(t.abs_err) + "\n";
    };
    for (int k : cfg.k_list) {
      const auto p = DeformationParams::make(k, tol);
      for (int r = 1; r <= kMaxLimitR; ++r) {
        for (const auto& t : limit_trace(r, 0, cfg.eps_schedule, p)) row(k, t);
        for (int s = 1; s < k; ++s)
          for (const auto& t : limit_trace(r, s, cfg.eps_schedule, p))
            if (t.ratio == "s/rk+s") row(k, t);
      }
    }
    return out;
  }

  // Residuals: every report entry plus every symmetry sweep point.
  struct Row {
    int k;
    std::string tag;
    std::string params;
    std::optional<SweepPoint> pt;
    double residual;
    double tol;
    bool passed;
  };
  std::vector<Row> rows;
  const VerificationReport rep = run_suites(cfg);
  for (const auto& e : rep.entries()) {
    rows.push_back({e.k, e.equation_tag, params_string(e.params), std::nullopt, e.residual, e.tol, e.passed});
  }
  if (std::find(cfg.suites.begin(), cfg.suites.end(), Suite::Symmetry) != cfg.suites.end()) {
    for (int k : cfg.k_list) {
      const auto p = DeformationParams::make(k, tol);
      std::optional<SymmetryPair> pair;
      try {
        pair = build_pair(build_rep(p), PhaseConfig::make(cfg.theta0, k));
      } catch (const std::exception&) {
        continue;  // already reported as a failed entry above
      }
      for (PairSide side : {PairSide::UV, PairSide::XY}) {
        const std::string label = side == PairSide::UV ? "pair=UV" : "pair=XY";
        for (const auto& pt : lattice_sweep(*pair, kDefaultSweepBound, side)) {
          auto add = [&](const char* tag, double res) {
            rows.push_back({k, tag, label, pt, res, tol, std::isfinite(res) && res <= tol});
          };
          add("Eq.93", pt.product_residual);
          add("Eq.95", pt.sine_residual);
          if (side == PairSide::UV) add("Eq.91", pt.phase_residual);
        }
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.k != b.k) return a.k < b.k;
    return tag_rank(a.tag) < tag_rank(b.tag);
  });

  out = "k,equation_tag,params,m1,m2,n1,n2,residual,tol,passed\n";
  for (const auto& r : rows) {
    out += std::to_string(r.k) + "," + r.tag + "," + csv_quote(r.params) + ",";
    if (r.pt) {
      out += std::to_string(r.pt->m.n1) + "," + std::to_string(r.pt->m.n2) + "," + std::to_string(r.pt->n.n1) +
             "," + std::to_string(r.pt->n.n2) + ",";
    } else {
      out += ",,,,";
    }
    out += g17(r.residual) + "," + g17(r.tol) + "," + (r.passed ? "true" : "false") + "\n";
  }
  return out;
}

std::string export_matrices(int k, double theta0) {
  const auto p = DeformationParams::make(k, kDefaultTolerance);
  const auto pc = PhaseConfig::make(theta0, k);
  const auto rep = build_rep(p);
  const auto basis = phase_states(k, pc);

  json ops{{"a_minus", matrix_to_json(rep.a_minus)},
           {"a_plus", matrix_to_json(rep.a_plus)},
           {"a_plus_dag", matrix_to_json(rep.a_plus_dag)},
           {"a_minus_dag", matrix_to_json(rep.a_minus_dag)},
           {"number", matrix_to_json(rep.number_op)},
           {"phi", matrix_to_json(phase_operator(basis))},
           {"exp_plus_i_phi", matrix_to_json(exp_phase(basis, PhaseSign::Plus))},
           {"exp_minus_i_phi", matrix_to_json(exp_phase(basis, PhaseSign::Minus))},
           {"E_plus_i_Phi", matrix_to_json(quon_phase(rep, pc, PhaseSign::Plus))},
           {"E_minus_i_Phi", matrix_to_json(quon_phase(rep, pc, PhaseSign::Minus))}};
  json doc{{"k", k}, {"theta0", theta0}, {"q", complex_to_json(p.q())}};
  try {
    const auto pair = build_pair(rep, pc);
    ops["U"] = matrix_to_json(pair.U);
    ops["V"] = matrix_to_json(pair.V);
    ops["X"] = matrix_to_json(pair.X);
    ops["Y"] = matrix_to_json(pair.Y);
    if (k > 2) {
      const auto g = uqsl2_generators(pair);
      ops["J_plus"] = matrix_to_json(g.J_plus);
      ops["J_minus"] = matrix_to_json(g.J_minus);
      ops["K"] = matrix_to_json(g.K);
      ops["K_inv"] = matrix_to_json(g.K_inv);
    }
  } catch (const std::exception& e) {
    doc["symmetry_error"] = e.what();
  }
  doc["operators"] = std::move(ops);
  return doc.dump(2) + "\n";
}

void write_file(const std::string& path, std::string_view text) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  std::ofstream f(target, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write '" + path + "'");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw IoError("write to '" + path + "' failed");
}

std::optional<std::string> default_output_dir() {
  const char* v = std::getenv("KFERMION_OUT_DIR");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

}  // namespace kfermion
