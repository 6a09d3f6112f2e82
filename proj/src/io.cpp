#include "lunmeb/io.hpp"

#include <fstream>

namespace lunmeb {

using nlohmann::json;

nlohmann::json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  Matrix m;
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array()) throw ParseError("matrix row is not an array");
    if (r == 0) {
      cols = j[r].size();
      if (cols == 0) throw ParseError("matrix row is empty");
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (j[r].size() != cols) {
      throw ParseError("ragged matrix rows");
    }
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
  }
  if (!is_finite(m)) throw ParseError("non-finite matrix entry");
  return m;
}

json basis_to_json(const BasisCandidate& c) {
  json out;
  out["format_version"] = 1;
  out["d"] = c.d;
  out["schmidt"] = std::vector<double>(c.seed.c.data(), c.seed.c.data() + c.seed.c.size());
  json gens = json::array();
  for (const Matrix& g : c.generators) gens.push_back(matrix_to_json(g));
  out["generators"] = std::move(gens);
  return out;
}

BasisCandidate basis_from_json(const json& j, const Tolerance& tol) {
  if (!j.is_object()) throw ParseError("basis file: expected a JSON object");
  if (!j.contains("format_version") || !j["format_version"].is_number_integer() ||
      j["format_version"].get<int>() != 1)
    throw ParseError("basis file: unsupported or missing format_version");
  for (const char* key : {"d", "schmidt", "generators"})
    if (!j.contains(key)) throw ParseError(std::string("basis file: missing field ") + key);
  if (!j["d"].is_number_integer() || !j["schmidt"].is_array() || !j["generators"].is_array())
    throw ParseError("basis file: wrong field types");

  const int d = j["d"].get<int>();
  if (d < 1 || d > kMaxDim) throw ParseError("basis file: dimension out of range");
  if (j["schmidt"].size() != static_cast<std::size_t>(d))
    throw ParseError("basis file: schmidt length differs from d");
  RealVector c(d);
  for (int k = 0; k < d; ++k) {
    if (!j["schmidt"][k].is_number()) throw ParseError("basis file: schmidt entry not a number");
    c(k) = j["schmidt"][k].get<double>();
  }
  if (j["generators"].empty()) throw ParseError("basis file: no generators");
  std::vector<Matrix> generators;
  generators.reserve(j["generators"].size());
  for (const json& g : j["generators"]) {
    Matrix m = matrix_from_json(g);
    if (m.rows() != d || m.cols() != d)
      throw ParseError("basis file: generator dimension differs from d");
    generators.push_back(std::move(m));
  }
  // Shape problems above are parse errors; from here on invalid values
  // (bad normalization, non-unitary generators) surface as validation
  // failures out of make_candidate.
  return make_candidate(SchmidtVector{d, std::move(c)}, std::move(generators), tol);
}

void save_basis(const std::string& path, const BasisCandidate& c) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  out << basis_to_json(c).dump(2) << '\n';
  if (!out) throw ParseError("write failed: " + path);
}

BasisCandidate load_basis(const std::string& path, const Tolerance& tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return basis_from_json(j, tol);
}

}  // namespace lunmeb
