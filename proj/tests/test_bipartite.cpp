#include <cmath>

#include <doctest.h>

#include "lunmeb/bipartite.hpp"
#include "lunmeb/weyl.hpp"

using namespace lunmeb;

namespace {

RealVector vec(std::initializer_list<double> values) {
  RealVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

// Full d^2-dimensional state vector of a coefficient matrix, for oracles
// that work on the composite space directly.
Eigen::VectorXcd full_vector(const BipartiteState& s) {
  const int d = s.d();
  Eigen::VectorXcd psi(d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) psi(j * d + k) = s.m(j, k);
  return psi;
}

// (u (x) I) as an explicit d^2 x d^2 matrix.
Eigen::MatrixXcd kron_with_identity(const Matrix& u) {
  const int d = static_cast<int>(u.rows());
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int j2 = 0; j2 < d; ++j2)
      for (int k = 0; k < d; ++k) big(j * d + k, j2 * d + k) = u(j, j2);
  return big;
}

SchmidtVector random_seed(int d, Rng& rng) {
  RealVector c(d);
  for (int k = 0; k < d; ++k) c(k) = 0.1 + rng.uniform();
  return normalize_schmidt(c);
}

}  // namespace

TEST_SUITE("bipartite") {
  TEST_CASE("schmidt vector validation") {
    CHECK_NOTHROW(make_schmidt(vec({1.0})));
    CHECK_NOTHROW(make_schmidt(vec({std::sqrt(0.5), std::sqrt(0.5)})));
    CHECK_THROWS_AS(make_schmidt(vec({0.5, 0.5})), std::invalid_argument);  // not normalized
    CHECK_THROWS_AS(make_schmidt(vec({-1.0, 0.0})), std::invalid_argument);
    CHECK_THROWS_AS(make_schmidt(RealVector(0)), std::invalid_argument);

    const SchmidtVector n = normalize_schmidt(vec({3.0, 4.0}));
    CHECK(n.d == 2);
    CHECK(n.c(0) == doctest::Approx(0.6));
    CHECK(n.c(1) == doctest::Approx(0.8));
    CHECK_THROWS_AS(normalize_schmidt(vec({0.0, 0.0})), std::invalid_argument);
    CHECK_THROWS_AS(normalize_schmidt(vec({1.0, -0.1})), std::invalid_argument);
  }

  TEST_CASE("schmidt state is the diagonal matrix with unit norm") {
    const SchmidtVector sv = normalize_schmidt(vec({2.0, 1.0, 2.0}));
    const BipartiteState s = schmidt_state(sv);
    CHECK(s.d() == 3);
    CHECK(s.m.norm() == doctest::Approx(1.0));
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        CHECK(std::abs(s.m(j, k) - (j == k ? Complex(sv.c(j)) : Complex(0))) < 1e-15);
  }

  TEST_CASE("apply_local agrees with the composite-space oracle") {
    Rng rng(31);
    for (int d : {2, 3, 4}) {
      const BipartiteState s = schmidt_state(random_seed(d, rng));
      const Matrix u = haar_random_unitary(d, rng);
      const BipartiteState moved = apply_local(u, s);
      const Eigen::VectorXcd direct = kron_with_identity(u) * full_vector(s);
      CHECK((full_vector(moved) - direct).norm() < 1e-13);
    }
    Matrix notu = Matrix::Identity(2, 2) * 2.0;
    CHECK_THROWS_AS(apply_local(notu, schmidt_state(normalize_schmidt(vec({2.0, 1.0})))),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_local(Matrix::Identity(3, 3),
                                schmidt_state(normalize_schmidt(vec({2.0, 1.0})))),
                    std::invalid_argument);
  }

  TEST_CASE("inner_product matches the composite-space dot product") {
    Rng rng(32);
    for (int trial = 0; trial < 20; ++trial) {
      const int d = 2 + trial % 3;
      const BipartiteState phi = schmidt_state(random_seed(d, rng));
      const BipartiteState a = apply_local(haar_random_unitary(d, rng), phi);
      const BipartiteState b = apply_local(haar_random_unitary(d, rng), phi);
      const Complex direct = full_vector(a).dot(full_vector(b));  // Eigen dot conjugates left
      CHECK(std::abs(inner_product(a, b) - direct) < 1e-13);
      CHECK(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))) < 1e-13);
    }
    CHECK_THROWS_AS(inner_product(schmidt_state(normalize_schmidt(vec({1.0, 1.0}))),
                                  schmidt_state(normalize_schmidt(vec({1.0, 1.0, 1.0})))),
                    std::invalid_argument);
  }

  TEST_CASE("schmidt coefficients are descending and locally invariant") {
    Rng rng(33);
    const SchmidtVector sv = normalize_schmidt(vec({1.0, 3.0, 2.0}));
    RealVector sorted = sv.c;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    const BipartiteState s = schmidt_state(sv);
    CHECK((schmidt_coefficients(s) - sorted).norm() < 1e-13);
    for (int trial = 0; trial < 10; ++trial) {
      const BipartiteState moved = apply_local(haar_random_unitary(3, rng), s);
      CHECK((schmidt_coefficients(moved) - sorted).norm() < 1e-12);
    }
  }

  TEST_CASE("entanglement classes") {
    CHECK(entanglement_class(schmidt_state(make_schmidt(vec({1.0, 0.0, 0.0})))) ==
          EntanglementClass::Product);
    CHECK(entanglement_class(schmidt_state(normalize_schmidt(vec({1.0, 1.0, 1.0})))) ==
          EntanglementClass::MaximallyEntangled);
    CHECK(entanglement_class(schmidt_state(normalize_schmidt(vec({2.0, 1.0, 1.0})))) ==
          EntanglementClass::NonMaximallyEntangled);
    // The class is a property of the spectrum, not of the basis.
    Rng rng(34);
    const BipartiteState moved = apply_local(
        haar_random_unitary(3, rng), schmidt_state(normalize_schmidt(vec({2.0, 1.0, 1.0}))));
    CHECK(entanglement_class(moved) == EntanglementClass::NonMaximallyEntangled);
    CHECK(std::string(to_string(EntanglementClass::Product)) == "Product");
    CHECK(std::string(to_string(EntanglementClass::NonMaximallyEntangled)) ==
          "NonMaximallyEntangled");
    CHECK(std::string(to_string(EntanglementClass::MaximallyEntangled)) ==
          "MaximallyEntangled");
  }

  TEST_CASE("lu_connector recovers a connecting unitary") {
    Rng rng(35);
    for (int d : {2, 3, 4, 5}) {
      const BipartiteState phi = schmidt_state(random_seed(d, rng));
      const BipartiteState a = apply_local(haar_random_unitary(d, rng), phi);
      const BipartiteState b = apply_local(haar_random_unitary(d, rng), phi);
      const std::optional<Matrix> u = lu_connector(a, b);
      REQUIRE(u.has_value());
      CHECK(is_unitary(*u, 1e-10));
      CHECK((*u * b.m - a.m).norm() < 1e-10);
    }
  }

  TEST_CASE("lu_connector handles degenerate and deficient spectra") {
    Rng rng(36);
    // Repeated Schmidt coefficients (degenerate singular blocks).
    const BipartiteState phi = schmidt_state(normalize_schmidt(vec({2.0, 2.0, 1.0, 1.0})));
    const BipartiteState a = apply_local(haar_random_unitary(4, rng), phi);
    const std::optional<Matrix> u = lu_connector(a, phi);
    REQUIRE(u.has_value());
    CHECK((*u * phi.m - a.m).norm() < 1e-10);
    // A zero coefficient puts a common kernel under the completion path.
    const BipartiteState thin = schmidt_state(make_schmidt(vec({0.8, 0.6, 0.0})));
    const BipartiteState thin_moved = apply_local(haar_random_unitary(3, rng), thin);
    const std::optional<Matrix> w = lu_connector(thin_moved, thin);
    REQUIRE(w.has_value());
    CHECK(is_unitary(*w, 1e-10));
    CHECK((*w * thin.m - thin_moved.m).norm() < 1e-10);
    // Identical states connect through the identity's equivalence class.
    const std::optional<Matrix> self = lu_connector(phi, phi);
    REQUIRE(self.has_value());
    CHECK((*self * phi.m - phi.m).norm() < 1e-10);
  }

  TEST_CASE("lu_connector rejects states with different spectra") {
    const BipartiteState a = schmidt_state(normalize_schmidt(vec({2.0, 1.0})));
    const BipartiteState b = schmidt_state(normalize_schmidt(vec({3.0, 1.0})));
    CHECK_FALSE(lu_connector(a, b).has_value());
    CHECK_THROWS_AS(lu_connector(a, schmidt_state(normalize_schmidt(vec({1.0, 1.0, 1.0})))),
                    std::invalid_argument);
  }

  TEST_CASE("lu_connector absorbs a global phase") {
    Rng rng(37);
    const BipartiteState phi = schmidt_state(random_seed(3, rng));
    BipartiteState rotated = phi;
    rotated.m *= std::polar(1.0, 1.2345);
    const std::optional<Matrix> u = lu_connector(rotated, phi);
    REQUIRE(u.has_value());
    CHECK((*u * phi.m - rotated.m).norm() < 1e-10);
  }
}
