#include "kfermion/serialize.hpp"

#include <cmath>
#include <stdexcept>

namespace kfermion {

namespace {

Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("expected a complex number as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

}  // namespace

nlohmann::json complex_to_json(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    data.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw std::invalid_argument("matrix JSON needs rows, cols and data");
  }
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 || !data.is_array() || static_cast<Eigen::Index>(data.size()) != rows) {
    throw std::invalid_argument("matrix JSON: data does not match rows");
  }
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = data[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix JSON: row " + std::to_string(i) + " does not match cols");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(row[c]);
  }
  return m;
}

nlohmann::json element_to_json(const GrassmannElement& e) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : e.coeffs()) {
    terms.push_back({{"exp", {m.z, m.zbar}}, {"coeff", complex_to_json(c)}});
  }
  return {{"k", e.k()}, {"terms", std::move(terms)}};
}

GrassmannElement element_from_json(const nlohmann::json& j, double tol) {
  if (!j.is_object() || !j.contains("k") || !j.contains("terms") || !j.at("terms").is_array()) {
    throw std::invalid_argument("Grassmann JSON needs k and terms");
  }
  const auto params = DeformationParams::make(j.at("k").get<int>(), tol);
  GrassmannElement e(params);
  for (const auto& t : j.at("terms")) {
    const auto& ex = t.at("exp");
    if (!ex.is_array() || ex.size() != 2) throw std::invalid_argument("Grassmann JSON: exp must be [a, b]");
    const int a = ex[0].get<int>();
    const int b = ex[1].get<int>();
    if (a < 0 || b < 0 || a >= params.k() || b >= params.k()) {
      throw std::invalid_argument("Grassmann JSON: exponent outside [0, k-1]");
    }
    e.add_term(a, b, complex_from_json(t.at("coeff")));
  }
  return e;
}

nlohmann::json entry_to_json(const ReportEntry& e) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, v] : e.params) params[key] = v;
  return {{"equation_tag", e.equation_tag},
          {"k", e.k},
          {"params", std::move(params)},
          {"residual", finite_or_null(e.residual)},
          {"tol", e.tol},
          {"passed", e.passed},
          {"detail", e.detail}};
}

nlohmann::json report_to_json(const VerificationReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries()) entries.push_back(entry_to_json(e));
  return entries;
}

}  // namespace kfermion
