// Two bundled reference scenarios.
//
// d=4: from the seed (1/sqrt3, 1/sqrt6, 1/sqrt3, 1/sqrt6) the four cyclic
// states plus a fifth member generated by a fixed block unitary form five
// mutually orthogonal locally-generated states, so the cyclic family of
// size d is not the end of the road.  The flaw report shows why a termwise
// argument to the contrary fails: the full overlap sums vanish while the
// individual phase sums do not.
//
// d=2: for a seed with distinct positive coefficients, any unitary whose
// state is orthogonal to the seed state must be antidiagonal, and no third
// mutually orthogonal member exists; the best achievable residual is
// (c0^2 - c1^2)^2.
#pragma once

#include <array>

#include "lunmeb/basis.hpp"
#include "lunmeb/weyl.hpp"

namespace lunmeb {

SchmidtVector d4_seed();

// The fixed 4x4 block unitary (two 2x2 rotation blocks, entries +-1/sqrt2)
// whose state is orthogonal to all four cyclic states.
Matrix d4_block_unitary();

// Closed-form expansion of d4_block_unitary in the shift-and-phase operator
// basis: six nonzero coefficients whose real and imaginary components all
// sit at 1/(2 sqrt 2).  Kept as an independent cross-check of weyl_expand.
WeylCoefficients d4_coefficient_table();

struct D4Counterexample {
  BasisCandidate candidate;  // the four cyclic states
  Matrix v;                  // d4_block_unitary
  BipartiteState fifth;      // (v (x) I)|phi>
};

D4Counterexample counterexample_d4();

struct FlawReport {
  // overlap_sums[m] = sum_p f_pm * t_p with t_p = sum_k w^{pk} c_k^2: the
  // full overlap of the candidate fifth state with cyclic member m.
  std::vector<Complex> overlap_sums;
  // termwise_sums(k, m) = sum_p f_pm w^{kp}: the individual sums a termwise
  // argument would require to vanish.
  Matrix termwise_sums;
  // True when every overlap vanishes (< 1e-12) yet some termwise sum
  // stays large (> 0.5): vanishing overlaps do not vanish termwise.
  bool conclusion = false;

  double max_overlap() const;
  double max_termwise() const;
};

FlawReport flaw_demo();

struct D2Form {
  enum class Kind { Antidiagonal, NotOrthogonal } kind;
  // v|0> = e^{i alpha}|1>, v|1> = e^{i beta}|0>; meaningful iff Antidiagonal
  double alpha = 0.0;
  double beta = 0.0;
};

// Classifies a 2x2 unitary by whether (v (x) I)|phi> is orthogonal to
// |phi>.  Orthogonality forces both diagonal entries to vanish; a unitary
// that is orthogonal yet has a surviving diagonal would contradict the
// two-level classification and trips a logic error.
D2Form d2_orthogonal_form(const Matrix& v, const SchmidtVector& seed,
                          const Tolerance& tol = {});

struct D2Analysis {
  SchmidtVector seed;
  Matrix second_generator;  // canonical antidiagonal choice: the bit flip
  int max_size = 2;
  double min_third_residual = 0.0;    // (c0^2 - c1^2)^2
  double search_best_residual = 0.0;  // extend's best over a full search
  std::array<double, 2> antidiagonal_phases{0.0, 0.0};
};

// Complete d=2 answer for a seed with distinct positive coefficients: the
// pair {|phi>, (X (x) I)|phi>} and the proof-backed floor on any third
// member's residual, cross-checked against the numerical search.
D2Analysis d2_analysis(const SchmidtVector& seed, const Tolerance& tol = {});

}  // namespace lunmeb
