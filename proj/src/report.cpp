#include "kfermion/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kfermion {

const std::vector<std::string_view>& equation_registry() {
  static const std::vector<std::string_view> registry{
      "Eq.1",   "Eq.2a",  "Eq.2b",  "Eq.4a",  "Eq.4b",  "Eq.6a",  "Eq.6b",  "Eq.7a",
      "Eq.7b",  "Eq.8a",  "Eq.8b",  "Eq.9a",  "Eq.9b",  "Eq.12",  "Eq.13",  "Eq.14",
      "Eq.16",  "Eq.17a", "Eq.17b", "Eq.19",  "Eq.20",  "Eq.21",  "Eq.22",  "Eq.25",
      "Eq.26",  "Eq.31",  "Eq.32",  "Eq.33",  "Eq.34",  "Eq.35",  "Eq.36",  "Eq.39",
      "Eq.40",  "Eq.44",  "Eq.45",  "Eq.46",  "Eq.47",  "Eq.49",  "Eq.50",  "Eq.51",
      "Eq.52",  "Eq.55",  "Eq.57",  "Eq.58",  "Eq.59",  "Eq.63",  "Eq.64a", "Eq.64b",
      "Eq.65",  "Eq.69",  "Eq.70",  "Eq.73",  "Eq.74",  "Eq.75",  "Eq.76",  "Eq.77",
      "Eq.79",  "Eq.80",  "Eq.81",  "Eq.82",  "Eq.83",  "Eq.84",  "Eq.85",  "Eq.86",  "Eq.87",  "Eq.88",
      "Eq.89",  "Eq.90",  "Eq.91",  "Eq.93",  "Eq.95",  "Eq.96",  "Eq.97",  "Eq.98",
      "Eq.99",  "Eq.100", "Eq.A2",  "Eq.A3",
  };
  return registry;
}

bool is_registered_equation(std::string_view tag) {
  const auto& r = equation_registry();
  return std::find(r.begin(), r.end(), tag) != r.end();
}

ReportEntry& VerificationReport::add(std::string_view tag, int k, double residual, double tol,
                                     ParamMap params, std::string detail) {
  if (!is_registered_equation(tag)) {
    throw std::invalid_argument("unregistered equation tag: " + std::string(tag));
  }
  ReportEntry e;
  e.equation_tag = std::string(tag);
  e.k = k;
  e.params = std::move(params);
  e.residual = residual;
  e.tol = tol;
  e.passed = std::isfinite(residual) && residual <= tol;
  e.detail = std::move(detail);
  if (!std::isfinite(residual) && e.detail.empty()) e.detail = "conditioning: non-finite residual";
  entries_.push_back(std::move(e));
  return entries_.back();
}

void VerificationReport::merge(const VerificationReport& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

std::size_t VerificationReport::passed_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const ReportEntry& e) { return e.passed; }));
}

std::vector<const ReportEntry*> VerificationReport::find(std::string_view tag, int k) const {
  std::vector<const ReportEntry*> out;
  for (const auto& e : entries_) {
    if (e.equation_tag == tag && (k < 0 || e.k == k)) out.push_back(&e);
  }
  return out;
}

double VerificationReport::max_residual(std::string_view tag, int k) const {
  double worst = -1.0;
  for (const auto* e : find(tag, k)) {
    if (!std::isfinite(e->residual)) return e->residual;
    worst = std::max(worst, e->residual);
  }
  return worst;
}

double relative_residual(const Eigen::MatrixXcd& lhs, const Eigen::MatrixXcd& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    throw std::invalid_argument("relative_residual: shape mismatch");
  }
  return (lhs - rhs).norm() / std::max(1.0, rhs.norm());
}

double relative_residual(Complex lhs, Complex rhs) {
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

double off_diagonal_norm(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd off = m;
  off.diagonal().setZero();
  return off.norm();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace kfermion
