#pragma once

#include <optional>
#include <string>
#include <vector>

#include "histq/linalg.hpp"

namespace histq {

/// Identity that a validation found violated. Checks run in a fixed order
/// (hermiticity, idempotence, pairwise orthogonality / positivity,
/// completeness) and the first violation wins.
enum class Violation {
  None,
  Shape,
  Hermiticity,
  Idempotence,
  Orthogonality,
  Positivity,
  Completeness,
  RankMismatch,
  IsometryDefect,
};

std::string to_string(Violation v);

struct ValidationReport {
  Violation violation = Violation::None;
  double magnitude = 0.0;
  int index_a = -1;  // offending element (or pair member) when applicable
  int index_b = -1;
  std::string message;

  bool ok() const { return violation == Violation::None; }
};

/// Either a validated object or the report describing the first failure.
template <typename T>
struct Validated {
  std::optional<T> value;
  ValidationReport report;

  bool ok() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }
};

/// Hermitian idempotent operator.
struct Projector {
  ComplexMatrix matrix;
  int rank = 0;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Projective decomposition of the identity: mutually orthogonal projectors
/// summing to I. The quantum sample space.
struct PDI {
  std::vector<std::string> labels;
  std::vector<Projector> projectors;

  int dim() const { return projectors.empty() ? 0 : projectors.front().dim(); }
  int size() const { return static_cast<int>(projectors.size()); }
  int index_of(const std::string& label) const;  // -1 when absent
};

/// Positive semi-definite operators summing to I; outcome statistics of a
/// generalized measurement.
struct POVM {
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> elements;

  int dim() const {
    return elements.empty() ? 0 : static_cast<int>(elements.front().rows());
  }
  int size() const { return static_cast<int>(elements.size()); }
  int index_of(const std::string& label) const;
};

/// Length-preserving map J with J^dagger J = I on the source space.
struct Isometry {
  ComplexMatrix matrix;  // target_dim x source_dim

  int source_dim() const { return static_cast<int>(matrix.cols()); }
  int target_dim() const { return static_cast<int>(matrix.rows()); }
};

/// Hermitian operator together with its grouped spectral decomposition.
struct Observable {
  ComplexMatrix matrix;
  EigenSystem spectral;

  /// The PDI formed by the spectral projectors, labeled by eigenvalue.
  PDI spectral_pdi() const;
};

Validated<Projector> validate_projector(const ComplexMatrix& m);
Validated<PDI> validate_pdi(const std::vector<ComplexMatrix>& projectors,
                            std::vector<std::string> labels = {});
Validated<POVM> validate_povm(const std::vector<ComplexMatrix>& elements,
                              std::vector<std::string> labels = {});
Validated<Isometry> validate_isometry(const ComplexMatrix& matrix);

/// Throwing variants for construction sites where failure is a caller bug.
Projector make_projector(const ComplexMatrix& m);
PDI make_pdi(const std::vector<ComplexMatrix>& projectors,
             std::vector<std::string> labels = {});
POVM make_povm(const std::vector<ComplexMatrix>& elements,
               std::vector<std::string> labels = {});
Isometry make_isometry(const ComplexMatrix& matrix);

/// Throws NotHermitianError. Spectral groups carry distinct eigenvalues, so
/// degenerate subspaces appear as single higher-rank projectors.
Observable observable_from_matrix(const ComplexMatrix& m,
                                  double group_tol = kGroupTol);

class ValidationError : public Error {
public:
  explicit ValidationError(const ValidationReport& r)
      : Error(r.message), report(r) {}
  ValidationReport report;
};

}  // namespace histq
