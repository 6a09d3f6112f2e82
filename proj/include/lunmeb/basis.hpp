// Candidate bases of the form { (U_a (x) I)|phi> } generated from one
// Schmidt-form seed, verification of the defining conditions, and the
// numerical search for a further orthogonal member.
//
// Orthogonality of a prospective member (V (x) I)|phi> against member a
// reduces to one linear constraint on V:
//
//   <phi_a | (V (x) I) phi> = tr((U_a D^2)^† V),   D = diag(seed c)
//
// so the search is a feasibility problem: find a unitary V in the
// Hilbert-Schmidt orthogonal complement of span{ U_a D^2 }.
#pragma once

#include <cstdint>
#include <vector>

#include "lunmeb/bipartite.hpp"

namespace lunmeb {

struct BasisCandidate {
  int d = 0;
  SchmidtVector seed;
  std::vector<Matrix> generators;      // first is the identity by convention
  std::vector<BipartiteState> states;  // states[a] = (generators[a] (x) I)|phi>

  int size() const { return static_cast<int>(generators.size()); }
};

// Assembles a candidate from explicit generators, computing the states.
// Generators must be unitary within tol.verify_tol; orthogonality is the
// business of verify_candidate, not of construction.
BasisCandidate make_candidate(const SchmidtVector& seed, std::vector<Matrix> generators,
                              const Tolerance& tol = {});

// Appends one generator (and its state) to a copy of the candidate.
BasisCandidate append_generator(const BasisCandidate& c, const Matrix& v,
                                const Tolerance& tol = {});

// n x n matrix of pairwise state overlaps.
Matrix gram_matrix(const BasisCandidate& c);

// The d cyclic-shift states (U_{0m} (x) I)|phi>, m = 0..d-1, which are
// mutually orthogonal for any seed.  Rejects product or (near-)maximal
// seeds: the construction is only meaningful strictly between those.
BasisCandidate build_cyclic_basis(const SchmidtVector& seed, const Tolerance& tol = {});

struct VerificationReport {
  // (i) every member non-maximally entangled
  bool entanglement_ok = false;
  int entanglement_violations = 0;
  // (ii) orthonormality
  bool orthonormal_ok = false;
  double max_offdiag = 0.0;
  double max_diag_dev = 0.0;
  // (iii) every pair connected by a one-sided local unitary
  bool connected_ok = false;
  double max_connector_err = 0.0;

  bool all_pass() const { return entanglement_ok && orthonormal_ok && connected_ok; }
};

// Checks the three structural conditions.  Entanglement classes are judged
// at verify_tol; the orthonormality and reconstruction residuals pass at
// search_tol so that numerically grown members are acceptable (their
// residuals are reported exactly either way).
VerificationReport verify_candidate(const BasisCandidate& c, const Tolerance& tol = {});

struct ExtensionProblem {
  int d = 0;
  SchmidtVector seed;
  std::vector<Matrix> constraints;  // A_a = U_a * diag(c^2)
};

// A unitary V extends the candidate iff hs_inner(A_a, V) = 0 for all a.
ExtensionProblem make_extension_problem(const BasisCandidate& c);

// r(V) = sum_a |hs_inner(A_a, V)|^2; zero exactly on valid extensions.
double orthogonality_residual(const ExtensionProblem& p, const Matrix& v);

enum class SearchMethod { AlternatingProjection, ResidualDescent };

struct SearchParams {
  int restarts = 64;
  long max_iters = 2000;
  Tolerance tol{};
  std::uint64_t seed_value = 0;
  SearchMethod method = SearchMethod::AlternatingProjection;
};

struct ExtensionOutcome {
  bool found = false;
  Matrix v;               // meaningful iff found
  double residual = 0.0;  // residual of v if found, else best seen
  double best_residual = 0.0;
  int restarts_used = 0;
  long iterations_total = 0;
};

// Random-restart feasibility search over the unitary manifold.  Found
// requires residual < tol.search_tol and unitarity within tol.verify_tol.
// Deterministic for a fixed seed_value: restart i draws from a stream
// seeded with seed_value + i and the lowest-index success wins.  A
// NotFound outcome is heuristic evidence only, never a proof.
ExtensionOutcome extend(const ExtensionProblem& p, const SearchParams& params);

// Starts from the cyclic basis and appends found extensions until the
// search fails or max_size is reached.
BasisCandidate greedy_grow(const SchmidtVector& seed, const SearchParams& params,
                           int max_size);

}  // namespace lunmeb
