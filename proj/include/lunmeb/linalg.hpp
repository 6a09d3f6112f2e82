// Small dense complex linear algebra on top of Eigen: Hilbert-Schmidt
// inner products, SVD, polar decomposition, Haar-random unitaries and
// projection onto the orthogonal complement of a matrix span.
#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace lunmeb {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Dimensions handled by the dense kernels.  Everything in this library is
// a d x d complex matrix with d well below this.
inline constexpr int kMaxDim = 32;

struct Tolerance {
  double verify_tol = 1e-10;  // algebraic identities (unitarity, Gram checks)
  double search_tol = 1e-8;   // optimization convergence (extension residuals)

  Tolerance() = default;
  Tolerance(double verify, double search) : verify_tol(verify), search_tol(search) {
    if (!(search_tol > 0.0) || !(verify_tol > 0.0) || verify_tol > search_tol)
      throw std::invalid_argument("Tolerance: need 0 < verify_tol <= search_tol");
  }
};

// Deterministic random stream.  Gaussian samples are produced by Box-Muller
// from explicitly constructed 53-bit uniforms so the byte-level output does
// not depend on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double gaussian();
  Complex complex_gaussian() { return {gaussian(), gaussian()}; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

bool is_finite(const Matrix& a);

// Checked product; Eigen's operator* is used internally once shapes are known.
Matrix mat_mul(const Matrix& a, const Matrix& b);

inline Matrix adjoint(const Matrix& a) { return a.adjoint(); }

// Hilbert-Schmidt inner product <a, b> = tr(a^† b), antilinear in a.
Complex hs_inner(const Matrix& a, const Matrix& b);

inline double frobenius_norm(const Matrix& a) { return a.norm(); }

// Deviation from unitarity, ||a^† a - I||_F.
double unitarity_error(const Matrix& a);

bool is_unitary(const Matrix& a, double tol);

struct SvdResult {
  Matrix u;
  RealVector s;  // descending, nonnegative
  Matrix w;      // a = u * diag(s) * w^†
};

// Full SVD of a square matrix, d <= kMaxDim.
SvdResult svd(const Matrix& a);

// Unitary factor Q of the polar decomposition a = Q H, H = Q^† a positive
// semidefinite; Q is the unitary closest to a in Frobenius norm.  Requires
// the smallest singular value to exceed tol (degenerate iterates are the
// caller's restart signal).
Matrix polar_unitary_factor(const Matrix& a, double tol = 1e-10);

// Haar-distributed d x d unitary: QR of a complex Gaussian matrix with the
// phases of R's diagonal absorbed into Q.
Matrix haar_random_unitary(int d, Rng& rng);

// Orthonormal basis of span(constraints) under hs_inner, built by pivoted
// Gram-Schmidt; vectors whose residual drops below drop_tol are discarded,
// so linearly dependent constraint lists are fine.
std::vector<Matrix> orthonormalize_span(const std::vector<Matrix>& constraints,
                                        double drop_tol = 1e-12);

// v minus its projection onto span(constraints); the result is hs_inner-
// orthogonal to every constraint.
Matrix project_span_complement(const Matrix& v, const std::vector<Matrix>& constraints);

// Same projection against an already-orthonormalized basis.
Matrix project_complement_orthonormal(const Matrix& v, const std::vector<Matrix>& basis);

}  // namespace lunmeb
