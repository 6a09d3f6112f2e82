#include "lunmeb/linalg.hpp"

#include <cmath>

#include <Eigen/SVD>
#include <Eigen/QR>

namespace lunmeb {

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] so the log is finite.
  const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

bool is_finite(const Matrix& a) { return a.allFinite(); }

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("mat_mul: inner dimensions differ");
  return a * b;
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hs_inner: shape mismatch");
  return (a.conjugate().cwiseProduct(b)).sum();
}

double unitarity_error(const Matrix& a) {
  const Matrix gram = a.adjoint() * a;
  return (gram - Matrix::Identity(a.cols(), a.cols())).norm();
}

bool is_unitary(const Matrix& a, double tol) {
  return a.rows() == a.cols() && unitarity_error(a) < tol;
}

SvdResult svd(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("svd: matrix not square");
  if (a.rows() > kMaxDim) throw std::invalid_argument("svd: dimension above supported maximum");
  if (!is_finite(a)) throw std::invalid_argument("svd: non-finite entries");
  Eigen::JacobiSVD<Matrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

Matrix polar_unitary_factor(const Matrix& a, double tol) {
  const SvdResult f = svd(a);
  const double smallest = f.s(f.s.size() - 1);
  if (!(smallest > tol))
    throw std::domain_error("polar_unitary_factor: singular input");
  return f.u * f.w.adjoint();
}

Matrix haar_random_unitary(int d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("haar_random_unitary: d must be positive");
  Matrix g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = rng.complex_gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Absorb the phases of diag(R) so the factorization with positive
  // diagonal is unique; this makes Q exactly Haar rather than merely unitary.
  for (int c = 0; c < d; ++c) {
    const Complex rc = r(c, c);
    const double mod = std::abs(rc);
    q.col(c) *= (mod > 0.0) ? rc / mod : Complex(1.0, 0.0);
  }
  return q;
}

std::vector<Matrix> orthonormalize_span(const std::vector<Matrix>& constraints,
                                        double drop_tol) {
  std::vector<Matrix> residual = constraints;
  std::vector<Matrix> basis;
  std::vector<bool> used(residual.size(), false);
  for (std::size_t step = 0; step < residual.size(); ++step) {
    // Pivot on the largest remaining residual.
    std::size_t pick = residual.size();
    double best = drop_tol;
    for (std::size_t i = 0; i < residual.size(); ++i) {
      if (used[i]) continue;
      const double n = residual[i].norm();
      if (n > best) {
        best = n;
        pick = i;
      }
    }
    if (pick == residual.size()) break;
    used[pick] = true;
    Matrix q = residual[pick] / best;
    // Second orthogonalization pass keeps the basis orthonormal to
    // machine precision.
    for (const Matrix& b : basis) q -= hs_inner(b, q) * b;
    const double qn = q.norm();
    if (qn <= drop_tol) continue;
    q /= qn;
    for (std::size_t i = 0; i < residual.size(); ++i) {
      if (used[i]) continue;
      residual[i] -= hs_inner(q, residual[i]) * q;
    }
    basis.push_back(std::move(q));
  }
  return basis;
}

Matrix project_complement_orthonormal(const Matrix& v, const std::vector<Matrix>& basis) {
  Matrix out = v;
  for (const Matrix& q : basis) out -= hs_inner(q, out) * q;
  return out;
}

Matrix project_span_complement(const Matrix& v, const std::vector<Matrix>& constraints) {
  for (const Matrix& c : constraints)
    if (c.rows() != v.rows() || c.cols() != v.cols())
      throw std::invalid_argument("project_span_complement: shape mismatch");
  return project_complement_orthonormal(v, orthonormalize_span(constraints));
}

}  // namespace lunmeb
