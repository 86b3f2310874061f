#include <doctest.h>

#include "histq/builtin_models.hpp"
#include "histq/quantum_objects.hpp"
#include "test_support.hpp"

using namespace histq;
using test::basis_ket;

TEST_CASE("projector validation accepts dyads and the zero projector") {
  const auto p = validate_projector(projector_onto(builtin::z_plus()));
  REQUIRE(p.ok());
  CHECK(p->rank == 1);

  const auto zero = validate_projector(ComplexMatrix::Zero(3, 3));
  REQUIRE(zero.ok());
  CHECK(zero->rank == 0);
}

TEST_CASE("basis dyads form a PDI") {
  const auto pdi = validate_pdi(
      {projector_onto(builtin::z_plus()), projector_onto(builtin::z_minus())},
      {"plus", "minus"});
  REQUIRE(pdi.ok());
  CHECK(pdi->dim() == 2);
  CHECK(pdi->index_of("minus") == 1);
}

TEST_CASE("non-orthogonal dyads fail at the orthogonality check") {
  const auto result = validate_pdi(
      {projector_onto(builtin::z_plus()), projector_onto(builtin::x_plus())});
  REQUIRE(!result.ok());
  CHECK(result.report.violation == Violation::Orthogonality);
  CHECK(result.report.index_a == 0);
  CHECK(result.report.index_b == 1);
  // |<zp|xp>|^2 = 1/2 shows up as the largest entry of the product.
  CHECK(result.report.magnitude == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("scaled trine dyads are a POVM but not a PDI") {
  std::vector<ComplexMatrix> elements;
  for (const Ket& u : builtin::trine_states()) {
    elements.push_back((2.0 / 3.0) * projector_onto(u));
  }

  const auto pdi = validate_pdi(elements);
  REQUIRE(!pdi.ok());
  CHECK(pdi.report.violation == Violation::Idempotence);
  CHECK(pdi.report.index_a == 0);

  const auto povm = validate_povm(elements, {"M1", "M2", "M3"});
  REQUIRE(povm.ok());
}

TEST_CASE("single identity element is a POVM") {
  CHECK(validate_povm({identity(3)}).ok());
}

TEST_CASE("weak-probe backwards maps form a six-element POVM") {
  const double s = 1.0 / std::sqrt(2.0);
  const auto model = builtin::weak_probe(0.1, s, s, -s, s);
  const POVM povm = derive_povm(model);
  // derive_povm includes the remainder element; re-validate the six proper
  // outcomes on their own.
  std::vector<ComplexMatrix> six(povm.elements.begin(), povm.elements.end() - 1);
  ComplexMatrix rest = povm.elements.back();
  CHECK(max_abs(rest) < numeric_tol());
  CHECK(validate_povm(six).ok());
}

TEST_CASE("incomplete element set fails the completeness check") {
  const auto result =
      validate_povm({ComplexMatrix(0.5 * identity(2)), ComplexMatrix(0.4 * identity(2))});
  REQUIRE(!result.ok());
  CHECK(result.report.violation == Violation::Completeness);
  CHECK(result.report.magnitude == doctest::Approx(0.1));
}

TEST_CASE("negative element fails positivity with its eigenvalue") {
  ComplexMatrix negative = identity(2);
  negative(1, 1) = -0.5;
  const auto result = validate_povm({negative, ComplexMatrix(identity(2) - negative)});
  REQUIRE(!result.ok());
  CHECK(result.report.violation == Violation::Positivity);
  CHECK(result.report.magnitude == doctest::Approx(-0.5));
}

TEST_CASE("unitaries validate as isometries") {
  std::mt19937_64 rng(3);
  CHECK(validate_isometry(test::random_unitary(rng, 2)).ok());
}

TEST_CASE("trine isometry columns preserve length") {
  const auto model = builtin::trine();
  const auto v = validate_isometry(model.J.matrix);
  REQUIRE(v.ok());
  CHECK(v->source_dim() == 2);
  CHECK(v->target_dim() == 3);
}

TEST_CASE("diag(1, 0.5) fails the isometry check by 0.75") {
  ComplexMatrix m = identity(2);
  m(1, 1) = 0.5;
  const auto result = validate_isometry(m);
  REQUIRE(!result.ok());
  CHECK(result.report.violation == Violation::IsometryDefect);
  CHECK(result.report.magnitude == doctest::Approx(0.75));
}

TEST_CASE("wide matrices are rejected before validation") {
  CHECK_THROWS_AS(validate_isometry(ComplexMatrix::Zero(2, 3)), ShapeError);
}

TEST_CASE("observable spectra: distinct eigenvalues with rank-1 projectors") {
  ComplexMatrix b = ComplexMatrix::Zero(3, 3);
  b(0, 0) = 0.5;
  b(1, 1) = 1;
  b(2, 2) = -1;
  const Observable obs = observable_from_matrix(b);
  REQUIRE(obs.spectral.groups.size() == 3);
  CHECK(obs.spectral.groups[0].eigenvalue == doctest::Approx(1.0));
  CHECK(obs.spectral.groups[1].eigenvalue == doctest::Approx(0.5));
  CHECK(obs.spectral.groups[2].eigenvalue == doctest::Approx(-1.0));
  for (const auto& g : obs.spectral.groups) CHECK(g.multiplicity == 1);
  CHECK(max_abs(ComplexMatrix(obs.spectral.groups[1].projector -
                              projector_onto(basis_ket(3, 0)))) < 1e-12);
  CHECK(validate_pdi({obs.spectral.groups[0].projector, obs.spectral.groups[1].projector,
                      obs.spectral.groups[2].projector})
            .ok());
}

TEST_CASE("observable with an off-diagonal block diagonalizes the swap") {
  ComplexMatrix c = ComplexMatrix::Zero(3, 3);
  c(0, 0) = 2;
  c(1, 2) = 1;
  c(2, 1) = 1;
  const Observable obs = observable_from_matrix(c);
  REQUIRE(obs.spectral.groups.size() == 3);
  CHECK(obs.spectral.groups[0].eigenvalue == doctest::Approx(2.0));
  CHECK(obs.spectral.groups[1].eigenvalue == doctest::Approx(1.0));
  CHECK(obs.spectral.groups[2].eigenvalue == doctest::Approx(-1.0));

  // The 2x2 swap block has eigenvectors (|2> +- |3>)/sqrt(2).
  const Ket plus = (basis_ket(3, 1) + basis_ket(3, 2)) / std::sqrt(2.0);
  const Ket minus = (basis_ket(3, 1) - basis_ket(3, 2)) / std::sqrt(2.0);
  CHECK(max_abs(ComplexMatrix(obs.spectral.groups[0].projector -
                              projector_onto(basis_ket(3, 0)))) < 1e-12);
  CHECK(max_abs(ComplexMatrix(obs.spectral.groups[1].projector - projector_onto(plus))) <
        1e-12);
  CHECK(max_abs(ComplexMatrix(obs.spectral.groups[2].projector - projector_onto(minus))) <
        1e-12);
}

TEST_CASE("observable spectral PDIs are labeled by eigenvalue") {
  ComplexMatrix b = ComplexMatrix::Zero(3, 3);
  b(0, 0) = 0.5;
  b(1, 1) = 1;
  b(2, 2) = -1;
  const PDI pdi = observable_from_matrix(b).spectral_pdi();
  CHECK(pdi.labels == std::vector<std::string>({"1", "0.5", "-1"}));
  CHECK(pdi.index_of("0.5") == 1);
}

TEST_CASE("zero observable has a single full-rank group") {
  const Observable obs = observable_from_matrix(ComplexMatrix::Zero(2, 2));
  REQUIRE(obs.spectral.groups.size() == 1);
  CHECK(obs.spectral.groups[0].eigenvalue == doctest::Approx(0.0));
  CHECK(obs.spectral.groups[0].multiplicity == 2);
}

TEST_CASE("observable_from_matrix rejects non-Hermitian input") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1;
  CHECK_THROWS_AS(observable_from_matrix(m), NotHermitianError);
}

TEST_CASE("every PDI is a POVM") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = std::uniform_int_distribution<int>(2, 6)(rng);
    const int groups = std::uniform_int_distribution<int>(1, dim)(rng);
    const PDI pdi = test::random_pdi(rng, dim, groups);
    std::vector<ComplexMatrix> elements;
    for (const auto& p : pdi.projectors) elements.push_back(p.matrix);
    CHECK(validate_povm(elements).ok());
  }
}

TEST_CASE("backwards maps of random pointer PDIs validate as POVMs") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int source = std::uniform_int_distribution<int>(1, 4)(rng);
    const int target = std::uniform_int_distribution<int>(source, 6)(rng);
    const ComplexMatrix j = test::random_isometry(rng, target, source);
    const PDI pointer =
        test::random_pdi(rng, target, std::uniform_int_distribution<int>(1, target)(rng));

    std::vector<ComplexMatrix> mapped;
    for (const auto& m : pointer.projectors) {
      mapped.push_back(j.adjoint() * m.matrix * j);
    }
    CHECK(validate_povm(mapped).ok());
  }
}

TEST_CASE("labels must be unique") {
  CHECK_THROWS_AS(validate_pdi({projector_onto(builtin::z_plus()),
                                projector_onto(builtin::z_minus())},
                               {"a", "a"}),
                  DimensionMismatchError);
}
