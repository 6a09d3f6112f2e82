#include "lunmeb/weyl.hpp"

#include <cmath>
#include <vector>

namespace lunmeb {

namespace {

// Powers w^0 .. w^{d-1} of the primitive root, each evaluated directly on
// the unit circle so no drift accumulates at large exponents.
std::vector<Complex> root_powers(int d) {
  std::vector<Complex> pow(d);
  for (int j = 0; j < d; ++j) pow[j] = std::polar(1.0, 2.0 * M_PI * j / d);
  return pow;
}

}  // namespace

Matrix weyl_operator(const WeylIndex& idx) {
  const int d = idx.d;
  const std::vector<Complex> pow = root_powers(d);
  Matrix u = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    u((k + idx.m) % d, k) = pow[static_cast<std::size_t>(idx.n) * k % d];
  return u;
}

WeylCoefficients weyl_expand(const Matrix& v) {
  if (v.rows() != v.cols()) throw std::invalid_argument("weyl_expand: matrix not square");
  const int d = static_cast<int>(v.rows());
  WeylCoefficients c{d, Matrix(d, d)};
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      c.f(p, q) = hs_inner(weyl_operator(p, q, d), v) / static_cast<double>(d);
  return c;
}

Matrix weyl_reconstruct(const WeylCoefficients& c) {
  Matrix v = Matrix::Zero(c.d, c.d);
  for (int p = 0; p < c.d; ++p)
    for (int q = 0; q < c.d; ++q) v += c.f(p, q) * weyl_operator(p, q, c.d);
  return v;
}

}  // namespace lunmeb
