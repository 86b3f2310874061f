#include "histq/quantum_objects.hpp"

#include <cmath>

namespace histq {

namespace {

std::vector<std::string> default_labels(std::size_t n, std::vector<std::string> given) {
  if (!given.empty()) return given;
  std::vector<std::string> labels;
  labels.reserve(n);
  // 1-based; "0" stays reserved for remainder outcomes.
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

ValidationReport fail(Violation v, double magnitude, std::string message,
                      int a = -1, int b = -1) {
  ValidationReport r;
  r.violation = v;
  r.magnitude = magnitude;
  r.index_a = a;
  r.index_b = b;
  r.message = std::move(message);
  return r;
}

}  // namespace

std::string to_string(Violation v) {
  switch (v) {
    case Violation::None: return "none";
    case Violation::Shape: return "shape";
    case Violation::Hermiticity: return "hermiticity";
    case Violation::Idempotence: return "idempotence";
    case Violation::Orthogonality: return "orthogonality";
    case Violation::Positivity: return "positivity";
    case Violation::Completeness: return "completeness";
    case Violation::RankMismatch: return "rank";
    case Violation::IsometryDefect: return "isometry defect";
  }
  return "unknown";
}

int PDI::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  return -1;
}

int POVM::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  return -1;
}

PDI Observable::spectral_pdi() const {
  std::vector<ComplexMatrix> mats;
  std::vector<std::string> labels;
  for (const auto& g : spectral.groups) {
    mats.push_back(g.projector);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", g.eigenvalue);
    labels.emplace_back(buf);
  }
  return make_pdi(mats, labels);
}

Validated<Projector> validate_projector(const ComplexMatrix& m) {
  Validated<Projector> out;
  if (m.rows() != m.cols()) {
    out.report = fail(Violation::Shape, 0.0, "projector matrix is not square");
    return out;
  }
  const double herm = max_abs(ComplexMatrix(m - m.adjoint()));
  if (herm > numeric_tol()) {
    out.report = fail(Violation::Hermiticity, herm, "projector is not Hermitian");
    return out;
  }
  const double idem = max_abs(ComplexMatrix(m * m - m));
  if (idem > numeric_tol()) {
    out.report = fail(Violation::Idempotence, idem, "projector is not idempotent");
    return out;
  }
  const double trace = m.trace().real();
  const int rank = static_cast<int>(std::lround(trace));
  if (std::abs(trace - rank) > numeric_tol()) {
    out.report = fail(Violation::RankMismatch, std::abs(trace - rank),
                      "projector trace is not an integer");
    return out;
  }
  out.value = Projector{m, rank};
  return out;
}

Validated<PDI> validate_pdi(const std::vector<ComplexMatrix>& projectors,
                            std::vector<std::string> labels) {
  Validated<PDI> out;
  if (projectors.empty()) {
    out.report = fail(Violation::Shape, 0.0, "empty projector list");
    return out;
  }
  const Eigen::Index dim = projectors.front().rows();
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    if (projectors[i].rows() != dim || projectors[i].cols() != dim) {
      throw DimensionMismatchError("PDI elements have mismatched dimensions");
    }
  }

  // Check order: hermiticity, idempotence, pairwise orthogonality, completeness.
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const double herm = max_abs(ComplexMatrix(projectors[i] - projectors[i].adjoint()));
    if (herm > numeric_tol()) {
      out.report = fail(Violation::Hermiticity, herm,
                        "element " + std::to_string(i) + " is not Hermitian",
                        static_cast<int>(i));
      return out;
    }
  }
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const double idem = max_abs(ComplexMatrix(projectors[i] * projectors[i] - projectors[i]));
    if (idem > numeric_tol()) {
      out.report = fail(Violation::Idempotence, idem,
                        "element " + std::to_string(i) + " is not idempotent",
                        static_cast<int>(i));
      return out;
    }
  }
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      const double orth = max_abs(ComplexMatrix(projectors[i] * projectors[j]));
      if (orth > numeric_tol()) {
        out.report = fail(Violation::Orthogonality, orth,
                          "elements (" + std::to_string(i) + "," + std::to_string(j) +
                              ") are not orthogonal",
                          static_cast<int>(i), static_cast<int>(j));
        return out;
      }
    }
  }
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& p : projectors) sum += p;
  const double comp = max_abs(ComplexMatrix(sum - identity(static_cast<int>(dim))));
  if (comp > numeric_tol()) {
    out.report = fail(Violation::Completeness, comp, "projectors do not sum to the identity");
    return out;
  }

  PDI pdi;
  pdi.labels = default_labels(projectors.size(), std::move(labels));
  if (pdi.labels.size() != projectors.size()) {
    throw DimensionMismatchError("PDI label count does not match projector count");
  }
  for (std::size_t i = 0; i < pdi.labels.size(); ++i) {
    for (std::size_t j = i + 1; j < pdi.labels.size(); ++j) {
      if (pdi.labels[i] == pdi.labels[j]) {
        throw DimensionMismatchError("duplicate PDI label: " + pdi.labels[i]);
      }
    }
  }
  for (const auto& m : projectors) {
    pdi.projectors.push_back(Projector{m, static_cast<int>(std::lround(m.trace().real()))});
  }
  out.value = std::move(pdi);
  return out;
}

Validated<POVM> validate_povm(const std::vector<ComplexMatrix>& elements,
                              std::vector<std::string> labels) {
  Validated<POVM> out;
  if (elements.empty()) {
    out.report = fail(Violation::Shape, 0.0, "empty element list");
    return out;
  }
  const Eigen::Index dim = elements.front().rows();
  for (const auto& e : elements) {
    if (e.rows() != dim || e.cols() != dim) {
      throw DimensionMismatchError("POVM elements have mismatched dimensions");
    }
  }

  // Check order: hermiticity, positivity, completeness.
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const double herm = max_abs(ComplexMatrix(elements[i] - elements[i].adjoint()));
    if (herm > numeric_tol()) {
      out.report = fail(Violation::Hermiticity, herm,
                        "element " + std::to_string(i) + " is not Hermitian",
                        static_cast<int>(i));
      return out;
    }
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const double min_eig = min_eigenvalue(elements[i]);
    if (min_eig < -numeric_tol()) {
      out.report = fail(Violation::Positivity, min_eig,
                        "element " + std::to_string(i) +
                            " has negative eigenvalue " + std::to_string(min_eig),
                        static_cast<int>(i));
      return out;
    }
  }
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& e : elements) sum += e;
  const double comp = max_abs(ComplexMatrix(sum - identity(static_cast<int>(dim))));
  if (comp > numeric_tol()) {
    out.report = fail(Violation::Completeness, comp, "elements do not sum to the identity");
    return out;
  }

  POVM povm;
  povm.labels = default_labels(elements.size(), std::move(labels));
  if (povm.labels.size() != elements.size()) {
    throw DimensionMismatchError("POVM label count does not match element count");
  }
  povm.elements = elements;
  out.value = std::move(povm);
  return out;
}

Validated<Isometry> validate_isometry(const ComplexMatrix& matrix) {
  Validated<Isometry> out;
  if (matrix.rows() < matrix.cols()) {
    throw ShapeError("isometry target dimension is smaller than source dimension");
  }
  const ComplexMatrix gram = matrix.adjoint() * matrix;
  const double defect =
      max_abs(ComplexMatrix(gram - identity(static_cast<int>(matrix.cols()))));
  if (defect > numeric_tol()) {
    out.report = fail(Violation::IsometryDefect, defect,
                      "J^dagger J differs from the identity by " + std::to_string(defect));
    return out;
  }
  out.value = Isometry{matrix};
  return out;
}

Projector make_projector(const ComplexMatrix& m) {
  auto v = validate_projector(m);
  if (!v.ok()) throw ValidationError(v.report);
  return *v.value;
}

PDI make_pdi(const std::vector<ComplexMatrix>& projectors,
             std::vector<std::string> labels) {
  auto v = validate_pdi(projectors, std::move(labels));
  if (!v.ok()) throw ValidationError(v.report);
  return *v.value;
}

POVM make_povm(const std::vector<ComplexMatrix>& elements,
               std::vector<std::string> labels) {
  auto v = validate_povm(elements, std::move(labels));
  if (!v.ok()) throw ValidationError(v.report);
  return *v.value;
}

Isometry make_isometry(const ComplexMatrix& matrix) {
  auto v = validate_isometry(matrix);
  if (!v.ok()) throw ValidationError(v.report);
  return *v.value;
}

Observable observable_from_matrix(const ComplexMatrix& m, double group_tol) {
  Observable obs;
  obs.matrix = m;
  obs.spectral = hermitian_eigendecomposition(m, group_tol);
  return obs;
}

}  // namespace histq
