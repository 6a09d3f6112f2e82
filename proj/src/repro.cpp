#include "lunmeb/repro.hpp"

#include <cmath>

namespace lunmeb {

SchmidtVector d4_seed() {
  RealVector c(4);
  const double a = 1.0 / std::sqrt(3.0);
  const double b = 1.0 / std::sqrt(6.0);
  c << a, b, a, b;
  return make_schmidt(c);
}

Matrix d4_block_unitary() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix v = Matrix::Zero(4, 4);
  v(0, 0) = s;  v(0, 1) = -s;
  v(1, 0) = s;  v(1, 1) = s;
  v(2, 2) = -s; v(2, 3) = s;
  v(3, 2) = -s; v(3, 3) = -s;
  return v;
}

WeylCoefficients d4_coefficient_table() {
  const double r = 1.0 / (2.0 * std::sqrt(2.0));
  WeylCoefficients c{4, Matrix::Zero(4, 4)};
  c.f(1, 0) = Complex(r, -r);
  c.f(3, 0) = Complex(r, r);
  c.f(1, 1) = r;
  c.f(3, 1) = r;
  c.f(1, 3) = Complex(0.0, r);
  c.f(3, 3) = Complex(0.0, -r);
  return c;
}

D4Counterexample counterexample_d4() {
  const SchmidtVector seed = d4_seed();
  BasisCandidate candidate = build_cyclic_basis(seed);
  Matrix v = d4_block_unitary();
  BipartiteState fifth = apply_local(v, schmidt_state(seed));
  return {std::move(candidate), std::move(v), std::move(fifth)};
}

double FlawReport::max_overlap() const {
  double m = 0.0;
  for (const Complex& z : overlap_sums) m = std::max(m, std::abs(z));
  return m;
}

double FlawReport::max_termwise() const { return termwise_sums.cwiseAbs().maxCoeff(); }

FlawReport flaw_demo() {
  const int d = 4;
  const WeylCoefficients table = weyl_expand(d4_block_unitary());
  const RealVector weights = d4_seed().c.array().square();  // c_k^2

  std::vector<Complex> pow(d);
  for (int j = 0; j < d; ++j) pow[j] = std::polar(1.0, 2.0 * M_PI * j / d);

  // t_p = sum_k w^{pk} c_k^2
  std::vector<Complex> t(d, Complex(0, 0));
  for (int p = 0; p < d; ++p)
    for (int k = 0; k < d; ++k) t[p] += pow[static_cast<std::size_t>(p) * k % d] * weights(k);

  FlawReport report;
  report.overlap_sums.assign(d, Complex(0, 0));
  for (int m = 0; m < d; ++m)
    for (int p = 0; p < d; ++p) report.overlap_sums[m] += table.f(p, m) * t[p];

  report.termwise_sums = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    for (int m = 0; m < d; ++m)
      for (int p = 0; p < d; ++p)
        report.termwise_sums(k, m) += table.f(p, m) * pow[static_cast<std::size_t>(k) * p % d];

  report.conclusion = report.max_overlap() < 1e-12 && report.max_termwise() > 0.5;
  return report;
}

namespace {

void check_d2_seed(const SchmidtVector& seed, const Tolerance& tol, double min_gap) {
  if (seed.d != 2) throw std::invalid_argument("d2: seed must have dimension 2");
  if (entanglement_class(schmidt_state(seed), tol) == EntanglementClass::Product)
    throw std::invalid_argument("d2: product seed rejected, both coefficients must be positive");
  if (std::abs(seed.c(0) - seed.c(1)) <= min_gap)
    throw std::invalid_argument("d2: seed is maximally entangled, coefficients must differ");
}

}  // namespace

D2Form d2_orthogonal_form(const Matrix& v, const SchmidtVector& seed, const Tolerance& tol) {
  check_d2_seed(seed, tol, tol.verify_tol);
  if (v.rows() != 2 || v.cols() != 2 || !is_unitary(v, tol.verify_tol))
    throw std::invalid_argument("d2_orthogonal_form: v must be a 2x2 unitary");

  const double w0 = seed.c(0) * seed.c(0);
  const double w1 = seed.c(1) * seed.c(1);
  const Complex overlap = w0 * v(0, 0) + w1 * v(1, 1);
  if (std::abs(overlap) >= tol.verify_tol) return {D2Form::Kind::NotOrthogonal};

  // For a unitary, |v00| = |v11| and the overlap is bounded below by
  // gap * |v00|, so orthogonality caps the diagonal at verify_tol / gap.
  const double gap = std::abs(w0 - w1);
  const double diag_bound = 4.0 * tol.verify_tol / gap;
  if (std::max(std::abs(v(0, 0)), std::abs(v(1, 1))) > diag_bound)
    throw std::logic_error(
        "d2_orthogonal_form: orthogonal unitary with surviving diagonal "
        "contradicts the two-level classification");

  return {D2Form::Kind::Antidiagonal, std::arg(v(1, 0)), std::arg(v(0, 1))};
}

D2Analysis d2_analysis(const SchmidtVector& seed, const Tolerance& tol) {
  check_d2_seed(seed, tol, 10.0 * tol.verify_tol);

  D2Analysis out;
  out.seed = seed;
  out.second_generator = weyl_operator(0, 1, 2);  // the bit flip
  out.max_size = 2;
  const double w0 = seed.c(0) * seed.c(0);
  const double w1 = seed.c(1) * seed.c(1);
  out.min_third_residual = (w0 - w1) * (w0 - w1);

  const D2Form form = d2_orthogonal_form(out.second_generator, seed, tol);
  if (form.kind != D2Form::Kind::Antidiagonal)
    throw std::logic_error("d2_analysis: canonical generator must classify as antidiagonal");
  out.antidiagonal_phases = {form.alpha, form.beta};

  // Cross-check the closed-form floor against the numerical search.
  SearchParams params;
  params.tol = tol;
  const BasisCandidate pair = build_cyclic_basis(seed, tol);
  const ExtensionOutcome search = extend(make_extension_problem(pair), params);
  out.search_best_residual = search.found ? search.residual : search.best_residual;
  if (search.found)
    throw std::logic_error("d2_analysis: search produced a third member, which contradicts "
                           "the two-level classification");
  if (std::abs(out.search_best_residual - out.min_third_residual) > 1e-6)
    throw std::logic_error("d2_analysis: search floor disagrees with the closed form");
  return out;
}

}  // namespace lunmeb
