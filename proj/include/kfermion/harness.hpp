#pragma once

// Run configuration, suite orchestration, and report/table rendering.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kfermion/report.hpp"

namespace kfermion {

enum class Suite { FockRep, Grassmann, Coherent, Phase, Symmetry };
enum class OutputFormat { Json, Csv, Text };
enum class TableKind { Coherence, Limits, Residuals };

/// Bad configuration or bad command-line input.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A path that could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string_view suite_name(Suite s);
Suite parse_suite(std::string_view name);
std::string_view format_name(OutputFormat f);
OutputFormat parse_format(std::string_view name);
TableKind parse_table_kind(std::string_view name);

const std::vector<Suite>& all_suites();

struct RunConfig {
  std::vector<int> k_list{2, 3, 4, 5, 6, 7, 8};
  double theta0 = 0.0;
  double tol = kDefaultTolerance;
  int n_max = 8;  // boson truncation for the Q-deformed coherent states
  int r_max = 8;
  std::vector<double> eps_schedule{1e-2, 1e-3, 1e-4, 1e-5};
  std::vector<Suite> suites = all_suites();
  OutputFormat output_format = OutputFormat::Json;
  std::optional<std::string> output_path;
  bool extended = false;

  /// Throws ConfigError.
  void validate() const;
  /// tol, raised to the extended-mode floor when extended is set.
  double effective_tol() const;
};

/// Fields missing from the JSON keep their defaults. Throws ConfigError.
RunConfig config_from_json(std::string_view text);
std::string config_to_json(const RunConfig& cfg);

/// "2,3,5" or "2..8" or a mix ("2..4,7"). Throws ConfigError.
std::vector<int> parse_k_list(std::string_view text);

/// Every selected suite for every k. Exceptions inside a suite become failed
/// entries with a "conditioning" detail and the run continues.
VerificationReport run_suites(const RunConfig& cfg);

/// {config, entries[], summary{total, passed, failed}}; byte-stable.
std::string render_json(const RunConfig& cfg, const VerificationReport& r);
/// k,equation_tag,params,residual,tol,passed,detail
std::string render_csv(const VerificationReport& r);
std::string render_text(const VerificationReport& r);
std::string render(const RunConfig& cfg, const VerificationReport& r);

/// CSV tables with fixed columns and 17 significant digits.
///   coherence: k,m,re,im,abs,expected
///   limits:    k,r,s,ratio,eps,ratio_re,ratio_im,expected,abs_err
///   residuals: k,equation_tag,params,m1,m2,n1,n2,residual,tol,passed
std::string emit_table(TableKind kind, const RunConfig& cfg);

/// Every constructed operator for one k as JSON.
std::string export_matrices(int k, double theta0);

/// Writes text to path, creating parent directories. Throws IoError.
void write_file(const std::string& path, std::string_view text);

/// Value of KFERMION_OUT_DIR, if set and non-empty.
std::optional<std::string> default_output_dir();

}  // namespace kfermion
