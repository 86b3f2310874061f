#include <doctest.h>

#include "histq/linalg.hpp"
#include "test_support.hpp"

using namespace histq;
using test::basis_ket;
using test::random_hermitian;

namespace {

// Dyad observables on a three-level system; A commutes with both B and C,
// while B and C are incompatible.
ComplexMatrix observable_a() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 1;
  m(1, 1) = -1;
  m(2, 2) = -1;
  return m;
}

ComplexMatrix observable_b() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 1;
  m(2, 2) = -1;
  return m;
}

ComplexMatrix observable_c() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 2;
  m(1, 2) = 1;
  m(2, 1) = 1;
  return m;
}

}  // namespace

TEST_CASE("tensor product of basis kets stacks lexicographically") {
  const Ket zp = basis_ket(2, 0);
  const Ket zm = basis_ket(2, 1);
  const Ket prod = tensor_product(zp, zm);
  REQUIRE(prod.size() == 4);
  CHECK(prod(0) == Complex(0));
  CHECK(prod(1) == Complex(1));
  CHECK(prod(2) == Complex(0));
  CHECK(prod(3) == Complex(0));
}

TEST_CASE("tensor product of identities is the identity") {
  const ComplexMatrix i4 = tensor_product(identity(2), identity(2));
  CHECK(max_abs(ComplexMatrix(i4 - identity(4))) == 0.0);
}

TEST_CASE("singlet assembled from two tensor products") {
  const Ket zp = basis_ket(2, 0);
  const Ket zm = basis_ket(2, 1);
  Ket singlet = tensor_product(zp, zm) - tensor_product(zm, zp);
  singlet /= std::sqrt(2.0);
  CHECK(std::abs(singlet.norm() - 1.0) < 1e-14);
  CHECK(std::abs(singlet(1) - Complex(1 / std::sqrt(2.0))) < 1e-14);
  CHECK(std::abs(singlet(2) + Complex(1 / std::sqrt(2.0))) < 1e-14);
}

TEST_CASE("tensor product is associative and bilinear") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = test::random_matrix(rng, 2, 2);
    const ComplexMatrix b = test::random_matrix(rng, 3, 2);
    const ComplexMatrix c = test::random_matrix(rng, 2, 3);
    const ComplexMatrix left = tensor_product(tensor_product(a, b), c);
    const ComplexMatrix right = tensor_product(a, tensor_product(b, c));
    CHECK(max_abs(ComplexMatrix(left - right)) < 1e-12);

    const Complex scale(0.3, -1.2);
    const ComplexMatrix scaled =
        tensor_product(ComplexMatrix(scale * a), b) - scale * tensor_product(a, b);
    CHECK(max_abs(scaled) < 1e-12);
    const ComplexMatrix sum = tensor_product(ComplexMatrix(a + a), b) -
                              2.0 * tensor_product(a, b);
    CHECK(max_abs(sum) < 1e-12);
  }
}

TEST_CASE("commutator norms of the dyad observables") {
  const ComplexMatrix a = observable_a();
  const ComplexMatrix b = observable_b();
  const ComplexMatrix c = observable_c();
  CHECK(commutator_norm(a, b) < numeric_tol());
  CHECK(commutator_norm(a, c) < numeric_tol());
  // Direct 3x3 multiplication: BC - CB has entries +-2 on the (1,2) block.
  CHECK(commutator_norm(b, c) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(commutator_norm(b, c) > 0.1);
  CHECK(commutator_norm(b, c) == commutator_norm(c, b));
}

TEST_CASE("commutator_norm rejects mismatched dimensions") {
  CHECK_THROWS_AS(commutator_norm(identity(2), identity(3)), DimensionMismatchError);
}

TEST_CASE("eigendecomposition of the identity") {
  const EigenSystem sys = hermitian_eigendecomposition(identity(2));
  REQUIRE(sys.groups.size() == 1);
  CHECK(sys.groups[0].eigenvalue == doctest::Approx(1.0));
  CHECK(sys.groups[0].multiplicity == 2);
  CHECK(max_abs(ComplexMatrix(sys.groups[0].projector - identity(2))) < 1e-12);
}

TEST_CASE("eigendecomposition of diag(1,-1)") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -1;
  const EigenSystem sys = hermitian_eigendecomposition(m);
  REQUIRE(sys.groups.size() == 2);
  CHECK(sys.groups[0].eigenvalue == doctest::Approx(1.0));
  CHECK(sys.groups[1].eigenvalue == doctest::Approx(-1.0));
  CHECK(max_abs(ComplexMatrix(sys.groups[0].projector -
                              projector_onto(basis_ket(2, 0)))) < 1e-12);
}

TEST_CASE("degenerate eigenvalues merge into one group") {
  const EigenSystem sys = hermitian_eigendecomposition(observable_a());
  REQUIRE(sys.groups.size() == 2);
  CHECK(sys.groups[0].eigenvalue == doctest::Approx(1.0));
  CHECK(sys.groups[0].multiplicity == 1);
  CHECK(sys.groups[1].eigenvalue == doctest::Approx(-1.0));
  CHECK(sys.groups[1].multiplicity == 2);

  const ComplexMatrix expected =
      projector_onto(basis_ket(3, 1)) + projector_onto(basis_ket(3, 2));
  CHECK(max_abs(ComplexMatrix(sys.groups[1].projector - expected)) < 1e-12);
}

TEST_CASE("eigendecomposition rejects bad input") {
  CHECK_THROWS_AS(hermitian_eigendecomposition(ComplexMatrix::Zero(2, 3)),
                  NotSquareError);
  ComplexMatrix skew = ComplexMatrix::Zero(2, 2);
  skew(0, 1) = 1.0;
  try {
    hermitian_eigendecomposition(skew);
    FAIL("expected NotHermitianError");
  } catch (const NotHermitianError& err) {
    CHECK(err.max_asymmetry == doctest::Approx(1.0));
  }
}

TEST_CASE("spectral round trip over random Hermitian matrices") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> dims(1, 8);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = dims(rng);
    const ComplexMatrix m = random_hermitian(rng, dim);
    const EigenSystem sys = hermitian_eigendecomposition(m);

    CHECK(max_abs(ComplexMatrix(sys.reconstruct() - m)) < 10 * numeric_tol());

    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (const auto& g : sys.groups) sum += g.projector;
    CHECK(max_abs(ComplexMatrix(sum - identity(dim))) < 10 * numeric_tol());

    for (std::size_t i = 0; i < sys.groups.size(); ++i) {
      for (std::size_t j = 0; j < sys.groups.size(); ++j) {
        const ComplexMatrix prod = sys.groups[i].projector * sys.groups[j].projector;
        const ComplexMatrix expected =
            i == j ? sys.groups[i].projector : ComplexMatrix::Zero(dim, dim);
        CHECK(max_abs(ComplexMatrix(prod - expected)) < 10 * numeric_tol());
      }
    }
  }
}
