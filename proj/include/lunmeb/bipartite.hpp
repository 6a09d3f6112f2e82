// Bipartite pure states on C^d (x) C^d, carried by their d x d coefficient
// matrix M: |psi> = sum_{jk} M_{jk} |j>|k>.  One-sided local action
// (U (x) I) maps M to U*M, so Schmidt coefficients are the singular values
// of M and state overlaps are Hilbert-Schmidt inner products of the
// coefficient matrices.
#pragma once

#include <optional>

#include "lunmeb/linalg.hpp"

namespace lunmeb {

// Nonnegative Schmidt coefficients with unit sum of squares.
struct SchmidtVector {
  int d = 0;
  RealVector c;
};

// Validates nonnegativity and normalization within tol.verify_tol.
SchmidtVector make_schmidt(const RealVector& c, const Tolerance& tol = {});

// Rescales raw nonnegative coefficients to unit sum of squares.
SchmidtVector normalize_schmidt(const RealVector& raw, const Tolerance& tol = {});

struct BipartiteState {
  Matrix m;  // unit Frobenius norm
  int d() const { return static_cast<int>(m.rows()); }
};

enum class EntanglementClass { Product, NonMaximallyEntangled, MaximallyEntangled };

const char* to_string(EntanglementClass c);

// Diagonal coefficient matrix diag(c): the Schmidt-form state sum_k c_k |kk>.
BipartiteState schmidt_state(const SchmidtVector& sv);

// (u (x) I)|s>; u must be unitary within tol.verify_tol since a one-sided
// local action has to preserve the Schmidt spectrum.
BipartiteState apply_local(const Matrix& u, const BipartiteState& s, const Tolerance& tol = {});

// <a|b> = tr(m_a^† m_b), antilinear in a.
Complex inner_product(const BipartiteState& a, const BipartiteState& b);

// Singular values of the coefficient matrix, descending.
RealVector schmidt_coefficients(const BipartiteState& s);

// Product iff Schmidt rank 1; maximal iff the whole spectrum sits at
// 1/sqrt(d) within tol.verify_tol.
EntanglementClass entanglement_class(const BipartiteState& s, const Tolerance& tol = {});

// Unitary u with (u (x) I)|b> = |a> when one exists, i.e. when the reduced
// Gram matrices m^† m agree; built from the polar factor of m_a m_b^†, with
// deterministic completion on any common kernel.  nullopt when the Schmidt
// spectra differ.
std::optional<Matrix> lu_connector(const BipartiteState& a, const BipartiteState& b,
                                   const Tolerance& tol = {});

}  // namespace lunmeb
