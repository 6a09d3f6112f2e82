#include "lunmeb/bipartite.hpp"

#include <cmath>

namespace lunmeb {

SchmidtVector make_schmidt(const RealVector& c, const Tolerance& tol) {
  if (c.size() < 1) throw std::invalid_argument("SchmidtVector: empty coefficient list");
  if (!c.allFinite()) throw std::invalid_argument("SchmidtVector: non-finite coefficient");
  if ((c.array() < 0.0).any())
    throw std::invalid_argument("SchmidtVector: negative coefficient");
  if (std::abs(c.squaredNorm() - 1.0) > tol.verify_tol)
    throw std::invalid_argument("SchmidtVector: squares do not sum to one");
  return {static_cast<int>(c.size()), c};
}

SchmidtVector normalize_schmidt(const RealVector& raw, const Tolerance& tol) {
  if (raw.size() < 1) throw std::invalid_argument("SchmidtVector: empty coefficient list");
  if (!raw.allFinite()) throw std::invalid_argument("SchmidtVector: non-finite coefficient");
  if ((raw.array() < 0.0).any())
    throw std::invalid_argument("SchmidtVector: negative coefficient");
  const double norm = raw.norm();
  if (norm <= 0.0) throw std::invalid_argument("SchmidtVector: all coefficients zero");
  return make_schmidt(raw / norm, tol);
}

const char* to_string(EntanglementClass c) {
  switch (c) {
    case EntanglementClass::Product: return "Product";
    case EntanglementClass::NonMaximallyEntangled: return "NonMaximallyEntangled";
    case EntanglementClass::MaximallyEntangled: return "MaximallyEntangled";
  }
  return "?";
}

BipartiteState schmidt_state(const SchmidtVector& sv) {
  return {Matrix(sv.c.cast<Complex>().asDiagonal())};
}

BipartiteState apply_local(const Matrix& u, const BipartiteState& s, const Tolerance& tol) {
  if (u.rows() != s.d() || u.cols() != s.d())
    throw std::invalid_argument("apply_local: operator dimension mismatch");
  if (!is_unitary(u, tol.verify_tol))
    throw std::invalid_argument("apply_local: operator is not unitary");
  return {u * s.m};
}

Complex inner_product(const BipartiteState& a, const BipartiteState& b) {
  if (a.d() != b.d()) throw std::invalid_argument("inner_product: dimension mismatch");
  return hs_inner(a.m, b.m);
}

RealVector schmidt_coefficients(const BipartiteState& s) { return svd(s.m).s; }

EntanglementClass entanglement_class(const BipartiteState& s, const Tolerance& tol) {
  const RealVector sing = schmidt_coefficients(s);
  const int d = s.d();
  if (d == 1 || sing(1) < tol.verify_tol) return EntanglementClass::Product;
  const double uniform = 1.0 / std::sqrt(static_cast<double>(d));
  if ((sing.array() - uniform).abs().maxCoeff() < tol.verify_tol)
    return EntanglementClass::MaximallyEntangled;
  return EntanglementClass::NonMaximallyEntangled;
}

namespace {

// Extend d x r orthonormal columns to a full orthonormal basis, pulling the
// missing directions from identity columns in index order.
Matrix complete_orthonormal(const Matrix& cols) {
  const int d = static_cast<int>(cols.rows());
  int have = static_cast<int>(cols.cols());
  Matrix full(d, d);
  if (have > 0) full.leftCols(have) = cols;
  for (int j = 0; j < d && have < d; ++j) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Unit(d, j);
    for (int pass = 0; pass < 2; ++pass)
      if (have > 0) v -= full.leftCols(have) * (full.leftCols(have).adjoint() * v);
    const double n = v.norm();
    if (n > 1e-8) full.col(have++) = v / n;
  }
  if (have < d) throw std::logic_error("complete_orthonormal: basis completion failed");
  return full;
}

}  // namespace

std::optional<Matrix> lu_connector(const BipartiteState& a, const BipartiteState& b,
                                   const Tolerance& tol) {
  if (a.d() != b.d()) throw std::invalid_argument("lu_connector: dimension mismatch");
  const Matrix gram_a = a.m.adjoint() * a.m;
  const Matrix gram_b = b.m.adjoint() * b.m;
  if ((gram_a - gram_b).norm() >= tol.verify_tol) return std::nullopt;

  const int d = a.d();
  const SvdResult f = svd(a.m * b.m.adjoint());
  // Rank cut near machine precision: exact zero Schmidt coefficients land in
  // the completion, tiny nonzero ones stay with the polar factor.
  const double cut = std::max(1e-14, d * 1e-15 * f.s(0));
  int rank = 0;
  while (rank < d && f.s(rank) > cut) ++rank;
  const Matrix u_full = complete_orthonormal(f.u.leftCols(rank));
  const Matrix w_full = complete_orthonormal(f.w.leftCols(rank));
  Matrix connector = u_full * w_full.adjoint();
  // A returned connector must actually connect.
  if ((connector * b.m - a.m).norm() >= tol.search_tol) return std::nullopt;
  return connector;
}

}  // namespace lunmeb
