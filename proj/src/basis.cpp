#include "lunmeb/basis.hpp"

#include <cmath>
#include <limits>

#include "lunmeb/weyl.hpp"

namespace lunmeb {

BasisCandidate make_candidate(const SchmidtVector& seed, std::vector<Matrix> generators,
                              const Tolerance& tol) {
  const SchmidtVector checked = make_schmidt(seed.c, tol);
  if (generators.empty())
    throw std::invalid_argument("BasisCandidate: at least one generator required");
  BasisCandidate c;
  c.d = checked.d;
  c.seed = checked;
  const BipartiteState phi = schmidt_state(checked);
  c.states.reserve(generators.size());
  for (const Matrix& g : generators) c.states.push_back(apply_local(g, phi, tol));
  c.generators = std::move(generators);
  return c;
}

BasisCandidate append_generator(const BasisCandidate& c, const Matrix& v,
                                const Tolerance& tol) {
  BasisCandidate out = c;
  out.states.push_back(apply_local(v, schmidt_state(c.seed), tol));
  out.generators.push_back(v);
  return out;
}

Matrix gram_matrix(const BasisCandidate& c) {
  const int n = c.size();
  Matrix g(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g(a, b) = inner_product(c.states[a], c.states[b]);
  return g;
}

BasisCandidate build_cyclic_basis(const SchmidtVector& seed, const Tolerance& tol) {
  const SchmidtVector checked = make_schmidt(seed.c, tol);
  const int d = checked.d;
  const double uniform = 1.0 / std::sqrt(static_cast<double>(d));
  // The construction needs a seed strictly between product and maximal;
  // near-maximal spectra make that boundary numerically ill-posed.
  if ((checked.c.array() - uniform).abs().maxCoeff() < 10.0 * tol.verify_tol)
    throw std::invalid_argument("build_cyclic_basis: seed is maximally entangled");
  switch (entanglement_class(schmidt_state(checked), tol)) {
    case EntanglementClass::Product:
      throw std::invalid_argument("build_cyclic_basis: seed is a product state");
    case EntanglementClass::MaximallyEntangled:
      throw std::invalid_argument("build_cyclic_basis: seed is maximally entangled");
    case EntanglementClass::NonMaximallyEntangled:
      break;
  }
  std::vector<Matrix> generators;
  generators.reserve(d);
  for (int m = 0; m < d; ++m) generators.push_back(weyl_operator(0, m, d));
  return make_candidate(checked, std::move(generators), tol);
}

VerificationReport verify_candidate(const BasisCandidate& c, const Tolerance& tol) {
  VerificationReport report;
  const int n = c.size();

  for (const BipartiteState& s : c.states)
    if (entanglement_class(s, tol) != EntanglementClass::NonMaximallyEntangled)
      ++report.entanglement_violations;
  report.entanglement_ok = report.entanglement_violations == 0;

  const Matrix gram = gram_matrix(c);
  for (int a = 0; a < n; ++a) {
    report.max_diag_dev = std::max(report.max_diag_dev, std::abs(gram(a, a) - 1.0));
    for (int b = 0; b < n; ++b)
      if (a != b) report.max_offdiag = std::max(report.max_offdiag, std::abs(gram(a, b)));
  }
  report.orthonormal_ok =
      report.max_offdiag < tol.search_tol && report.max_diag_dev < tol.search_tol;

  bool all_connected = true;
  for (int a = 0; a < n && all_connected; ++a) {
    for (int b = 0; b < n; ++b) {
      const std::optional<Matrix> u = lu_connector(c.states[a], c.states[b], tol);
      if (!u) {
        all_connected = false;
        report.max_connector_err = std::numeric_limits<double>::infinity();
        break;
      }
      const double err = (*u * c.states[b].m - c.states[a].m).norm();
      report.max_connector_err = std::max(report.max_connector_err, err);
    }
  }
  report.connected_ok = all_connected && report.max_connector_err < tol.search_tol;
  return report;
}

ExtensionProblem make_extension_problem(const BasisCandidate& c) {
  ExtensionProblem p;
  p.d = c.d;
  p.seed = c.seed;
  const Matrix weight = Matrix(c.seed.c.array().square().matrix().cast<Complex>().asDiagonal());
  p.constraints.reserve(c.generators.size());
  for (const Matrix& g : c.generators) p.constraints.push_back(g * weight);
  return p;
}

double orthogonality_residual(const ExtensionProblem& p, const Matrix& v) {
  if (v.rows() != p.d || v.cols() != p.d)
    throw std::invalid_argument("orthogonality_residual: shape mismatch");
  double r = 0.0;
  for (const Matrix& a : p.constraints) r += std::norm(hs_inner(a, v));
  return r;
}

namespace {

// Residuals this small count as an exact intersection point; iteration
// past it only churns floating-point noise.
constexpr double kResidualFloor = 1e-28;
// A restart stops once this many iterations pass without meaningful
// improvement of its best residual.
constexpr long kStallWindow = 50;

// Improvement below a fixed fraction of the current best is treated as
// noise; the absolute part only matters once the best sits at the floor.
double improvement_floor(double best) { return std::max(kResidualFloor, 1e-12 * best); }

struct RestartResult {
  bool found = false;
  Matrix v;
  double best = std::numeric_limits<double>::infinity();
  long iterations = 0;
};

RestartResult run_alternating_projection(const ExtensionProblem& p,
                                         const std::vector<Matrix>& span_basis,
                                         const SearchParams& params, Rng& rng) {
  RestartResult rr;
  Matrix v = haar_random_unitary(p.d, rng);
  rr.best = orthogonality_residual(p, v);
  rr.v = v;
  long last_improve = 0;
  for (long it = 1; it <= params.max_iters; ++it) {
    if (rr.best < kResidualFloor) break;
    if (it - last_improve > kStallWindow) break;
    const Matrix projected = project_complement_orthonormal(v, span_basis);
    try {
      v = polar_unitary_factor(projected, params.tol.verify_tol);
    } catch (const std::domain_error&) {
      break;  // degenerate iterate; give the next restart a chance
    }
    rr.iterations = it;
    const double r = orthogonality_residual(p, v);
    if (r < rr.best - improvement_floor(rr.best)) last_improve = it;
    if (r < rr.best) {
      rr.best = r;
      rr.v = v;
    }
  }
  rr.found = rr.best < params.tol.search_tol;
  return rr;
}

RestartResult run_residual_descent(const ExtensionProblem& p, const SearchParams& params,
                                   Rng& rng) {
  RestartResult rr;
  Matrix v = haar_random_unitary(p.d, rng);
  double r = orthogonality_residual(p, v);
  rr.best = r;
  rr.v = v;
  double step = 0.5;
  long last_improve = 0;
  for (long it = 1; it <= params.max_iters; ++it) {
    if (rr.best < kResidualFloor) break;
    if (it - last_improve > kStallWindow) break;
    rr.iterations = it;
    // Euclidean gradient of r is 2 * sum_a <A_a, V> A_a; project it onto
    // the tangent space of the unitary manifold at v.
    Matrix grad = Matrix::Zero(p.d, p.d);
    for (const Matrix& a : p.constraints) grad += hs_inner(a, v) * a;
    const Matrix vg = v.adjoint() * grad;
    const Matrix dir = v * (0.5 * (vg - vg.adjoint()));
    const double dir_norm2 = dir.squaredNorm();
    if (dir_norm2 < 1e-30) break;  // first-order stationary
    bool accepted = false;
    while (step > 1e-14) {
      Matrix trial;
      try {
        trial = polar_unitary_factor(v - step * dir, params.tol.verify_tol);
      } catch (const std::domain_error&) {
        step *= 0.5;
        continue;
      }
      const double rt = orthogonality_residual(p, trial);
      if (rt < r - 1e-4 * step * dir_norm2) {
        v = trial;
        r = rt;
        accepted = true;
        step = std::min(step * 1.6, 64.0);
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    if (r < rr.best - improvement_floor(rr.best)) last_improve = it;
    if (r < rr.best) {
      rr.best = r;
      rr.v = v;
    }
  }
  rr.found = rr.best < params.tol.search_tol;
  return rr;
}

}  // namespace

ExtensionOutcome extend(const ExtensionProblem& p, const SearchParams& params) {
  if (params.restarts < 1 || params.max_iters < 1)
    throw std::invalid_argument("extend: restarts and max_iters must be positive");
  const std::vector<Matrix> span_basis = orthonormalize_span(p.constraints);

  ExtensionOutcome out;
  out.best_residual = std::numeric_limits<double>::infinity();
  for (int i = 0; i < params.restarts; ++i) {
    Rng rng(params.seed_value + static_cast<std::uint64_t>(i));
    RestartResult rr =
        params.method == SearchMethod::AlternatingProjection
            ? run_alternating_projection(p, span_basis, params, rng)
            : run_residual_descent(p, params, rng);
    out.restarts_used = i + 1;
    out.iterations_total += rr.iterations;
    out.best_residual = std::min(out.best_residual, rr.best);
    if (rr.found && is_unitary(rr.v, params.tol.verify_tol)) {
      out.found = true;
      out.v = rr.v;
      out.residual = rr.best;
      return out;
    }
  }
  out.residual = out.best_residual;
  return out;
}

BasisCandidate greedy_grow(const SchmidtVector& seed, const SearchParams& params,
                           int max_size) {
  if (max_size < 1) throw std::invalid_argument("greedy_grow: max_size must be positive");
  BasisCandidate c = build_cyclic_basis(seed, params.tol);
  while (c.size() < max_size) {
    const ExtensionOutcome out = extend(make_extension_problem(c), params);
    if (!out.found) break;
    c = append_generator(c, out.v, params.tol);
  }
  return c;
}

}  // namespace lunmeb
