// JSON persistence for basis candidates.
//
// Schema (format_version 1):
//   {
//     "format_version": 1,
//     "d": 4,
//     "schmidt": [c0, ...],
//     "generators": [ [ [[re, im], ...row...], ...rows... ], ... ]
//   }
// Complex numbers are [re, im] pairs, matrices row-major nested arrays.
// Numbers round-trip bit-exactly.
#pragma once

#include <string>

#include <json.hpp>

#include "lunmeb/basis.hpp"

namespace lunmeb {

// Raised for unreadable or structurally malformed input (CLI exit 1), as
// opposed to well-formed input that fails validation (CLI exit 2).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json complex_to_json(const Complex& z);
Complex complex_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json basis_to_json(const BasisCandidate& c);
BasisCandidate basis_from_json(const nlohmann::json& j, const Tolerance& tol = {});

void save_basis(const std::string& path, const BasisCandidate& c);
BasisCandidate load_basis(const std::string& path, const Tolerance& tol = {});

}  // namespace lunmeb
