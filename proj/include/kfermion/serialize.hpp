#pragma once

// JSON forms of matrices, Grassmann elements and reports.
//   matrix:   {"rows": r, "cols": c, "data": [[[re, im], ...], ...]}  (row-major)
//   element:  {"k": k, "terms": [{"exp": [a, b], "coeff": [re, im]}, ...]}

#include "json.hpp"

#include "kfermion/fockrep.hpp"
#include "kfermion/grassmann.hpp"
#include "kfermion/report.hpp"

namespace kfermion {

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);
/// Throws std::invalid_argument on malformed input.
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j);

nlohmann::json complex_to_json(Complex c);

nlohmann::json element_to_json(const GrassmannElement& e);
/// Throws std::invalid_argument on malformed input or exponents outside [0, k-1].
GrassmannElement element_from_json(const nlohmann::json& j, double tol = kDefaultTolerance);

/// Non-finite residuals become null.
nlohmann::json entry_to_json(const ReportEntry& e);
nlohmann::json report_to_json(const VerificationReport& r);

}  // namespace kfermion
