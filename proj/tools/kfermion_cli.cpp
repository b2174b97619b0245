// kfermion: command-line front end over the C interface.
//
//   kfermion verify [--k 2..8] [--theta0 0.3] [--tol 1e-9] [--suite phase,symmetry]
//                   [--format json|csv|text] [--out report.json] [--extended]
//   kfermion table coherence|limits|residuals [--k ...] [--out file.csv]
//   kfermion export-matrices --k 4 [--theta0 0] [--out m.json]
//
// Exit status: 0 all checks passed, 1 some check failed, 2 usage error, 3 I/O error.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kfermion/kfermion.h"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct CommonOpts {
  std::string k;
  double theta0 = 0.0;
  double tol = 1e-9;
  std::vector<double> eps;
  int r_max = 8;
  int n_max = 8;
  bool extended = false;
  std::vector<std::string> suites;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--k", o.k, "k values: list and ranges, e.g. 2..8 or 3,5,7");
  cmd->add_option("--theta0", o.theta0, "reference angle of the phase states (radians)");
  cmd->add_option("--tol", o.tol, "relative residual tolerance");
  cmd->add_option("--eps", o.eps, "strictly decreasing eps schedule for the Q -> q limits")->delimiter(',');
  cmd->add_option("--r-max", o.r_max, "bosonic rows of the supercoherent grid");
  cmd->add_option("--n-max", o.n_max, "bosonic rows compared against the numeric limit");
  cmd->add_flag("--extended", o.extended, "allow k up to 64 (tolerance floor 1e-6)");
  cmd->add_option("--out", o.out, "output file (default: $KFERMION_OUT_DIR/<name> or stdout)");
}

std::string config_json(const CommonOpts& o, const std::string& format) {
  nlohmann::json j{{"theta0", o.theta0}, {"tol", o.tol}, {"r_max", o.r_max}, {"n_max", o.n_max},
                   {"extended", o.extended}, {"output_format", format}};
  if (!o.k.empty()) j["k_list"] = o.k;
  if (!o.eps.empty()) j["eps_schedule"] = o.eps;
  if (!o.suites.empty()) j["suites"] = o.suites;
  if (!o.out.empty()) j["output_path"] = o.out;
  return j.dump();
}

int report_error(kf_status s) {
  std::fprintf(stderr, "kfermion: %s\n", kf_last_error());
  if (s == KF_ERR_IO) return kExitIo;
  if (s == KF_ERR_INVALID_ARGUMENT || s == KF_ERR_DOMAIN) return kExitUsage;
  return kExitFailed;
}

// Writes to --out, else to $KFERMION_OUT_DIR/default_name, else stdout.
int emit(const std::string& out, const std::string& default_name, const char* text) {
  std::string path = out;
  if (path.empty()) {
    char* dir = nullptr;
    if (kf_default_output_dir(&dir) == KF_OK && dir != nullptr) {
      path = std::string(dir) + "/" + default_name;
      kf_string_free(dir);
    }
  }
  if (path.empty()) {
    std::fputs(text, stdout);
    return 0;
  }
  if (kf_status s = kf_write_file(path.c_str(), text); s != KF_OK) return report_error(s);
  std::fprintf(stderr, "wrote %s\n", path.c_str());
  return 0;
}

const char* extension(const std::string& format) {
  if (format == "csv") return "csv";
  if (format == "text") return "txt";
  return "json";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify the k-fermion (quon) algebra identities on explicit matrices"};
  app.require_subcommand(1);

  CommonOpts verify_opts;
  std::string format = "json";
  auto* verify = app.add_subcommand("verify", "run the verification suites");
  add_common(verify, verify_opts);
  verify->add_option("--suite", verify_opts.suites, "fockrep, grassmann, coherent, phase, symmetry")
      ->delimiter(',');
  verify->add_option("--format", format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  CommonOpts table_opts;
  std::string table_kind;
  auto* table = app.add_subcommand("table", "emit a CSV table");
  table->add_option("kind", table_kind, "coherence, limits or residuals")
      ->required()
      ->check(CLI::IsMember({"coherence", "limits", "residuals"}));
  add_common(table, table_opts);

  int export_k = 0;
  double export_theta0 = 0.0;
  std::string export_out;
  auto* exp = app.add_subcommand("export-matrices", "dump every constructed operator as JSON");
  exp->add_option("--k", export_k, "k")->required();
  exp->add_option("--theta0", export_theta0, "reference angle of the phase states (radians)");
  exp->add_option("--out", export_out, "output file (default: $KFERMION_OUT_DIR/matrices_k<k>.json or stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (*verify) {
    const std::string cfg = config_json(verify_opts, format);
    kf_report* rep = nullptr;
    if (kf_status s = kf_run_verify(cfg.c_str(), &rep); s != KF_OK) return report_error(s);
    char* text = nullptr;
    kf_status s = kf_report_render(rep, nullptr, &text);
    if (s != KF_OK) {
      kf_report_destroy(rep);
      return report_error(s);
    }
    int rc = emit(verify_opts.out, std::string("report.") + extension(format), text);
    kf_string_free(text);
    std::fprintf(stderr, "%zu checks, %zu passed, %zu failed\n", kf_report_total(rep), kf_report_passed(rep),
                 kf_report_total(rep) - kf_report_passed(rep));
    if (rc == 0 && !kf_report_all_passed(rep)) rc = kExitFailed;
    kf_report_destroy(rep);
    return rc;
  }

  if (*table) {
    const std::string cfg = config_json(table_opts, "csv");
    char* text = nullptr;
    if (kf_status s = kf_emit_table(table_kind.c_str(), cfg.c_str(), &text); s != KF_OK) return report_error(s);
    const int rc = emit(table_opts.out, table_kind + ".csv", text);
    kf_string_free(text);
    return rc;
  }

  char* text = nullptr;
  if (kf_status s = kf_export_matrices(export_k, export_theta0, &text); s != KF_OK) return report_error(s);
  const int rc = emit(export_out, "matrices_k" + std::to_string(export_k) + ".json", text);
  kf_string_free(text);
  return rc;
}
