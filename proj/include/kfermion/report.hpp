#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "kfermion/qcore.hpp"

namespace kfermion {

using ParamMap = std::map<std::string, std::string>;

struct ReportEntry {
  std::string equation_tag;
  int k = 0;
  ParamMap params;
  double residual = 0.0;
  double tol = 0.0;
  bool passed = false;
  std::string detail;
};

/// Ordered list of identity checks. An entry passes iff its residual is a
/// finite number not exceeding its tolerance.
class VerificationReport {
 public:
  /// Throws std::invalid_argument if the tag is not in the equation registry.
  ReportEntry& add(std::string_view tag, int k, double residual, double tol,
                   ParamMap params = {}, std::string detail = {});

  void merge(const VerificationReport& other);

  const std::vector<ReportEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t passed_count() const;
  std::size_t failed_count() const { return size() - passed_count(); }
  bool all_passed() const { return passed_count() == size(); }

  /// Largest residual among entries with the given tag (and, optionally,
  /// the given k); -1 when nothing matches.
  double max_residual(std::string_view tag, int k = -1) const;
  std::vector<const ReportEntry*> find(std::string_view tag, int k = -1) const;

 private:
  std::vector<ReportEntry> entries_;
};

/// The fixed set of equation tags a report may carry.
const std::vector<std::string_view>& equation_registry();
bool is_registered_equation(std::string_view tag);

/// ||lhs - rhs||_F / max(1, ||rhs||_F).
double relative_residual(const Eigen::MatrixXcd& lhs, const Eigen::MatrixXcd& rhs);
double relative_residual(Complex lhs, Complex rhs);

/// Frobenius mass of the off-diagonal part.
double off_diagonal_norm(const Eigen::MatrixXcd& m);

/// 17 significant digits, enough for a bit-exact round trip.
std::string format_double(double v);

}  // namespace kfermion
