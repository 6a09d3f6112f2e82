// Shift-and-phase (Weyl-Heisenberg) unitaries on C^d and expansion of
// arbitrary operators in that basis.
//
//   U_{nm} = sum_k w^{nk} |k+m mod d><k|,   w = exp(2*pi*i/d)
//
// The d^2 operators are pairwise trace-orthogonal with <U,U> = d, so any
// d x d matrix expands uniquely as V = sum_{pq} f_{pq} U_{pq} with
// f_{pq} = tr(U_{pq}^† V) / d.
#pragma once

#include <stdexcept>

#include "lunmeb/linalg.hpp"

namespace lunmeb {

struct WeylIndex {
  int n;
  int m;
  int d;

  WeylIndex(int phase, int shift, int dim) : n(phase), m(shift), d(dim) {
    if (d < 1) throw std::invalid_argument("WeylIndex: d must be positive");
    if (n < 0 || n >= d || m < 0 || m >= d)
      throw std::invalid_argument("WeylIndex: indices out of [0, d)");
  }
};

struct WeylCoefficients {
  int d = 0;
  Matrix f;  // f(p, q) multiplies U_{pq}
};

Matrix weyl_operator(const WeylIndex& idx);

inline Matrix weyl_operator(int n, int m, int d) { return weyl_operator(WeylIndex(n, m, d)); }

WeylCoefficients weyl_expand(const Matrix& v);

Matrix weyl_reconstruct(const WeylCoefficients& c);

}  // namespace lunmeb
