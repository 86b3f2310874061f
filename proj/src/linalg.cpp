#include "histq/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace histq {

void set_numeric_tol(double tol) {
  if (!(tol > 0.0)) {
    throw Error("numeric tolerance must be positive");
  }
  detail::g_numeric_tol = tol;
}

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double max_abs(const Ket& v) {
  if (v.size() == 0) return 0.0;
  return v.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

bool all_finite(const Ket& v) { return v.allFinite(); }

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw NotSquareError("hermiticity defect requires a square matrix");
  }
  return max_abs(ComplexMatrix(m - m.adjoint()));
}

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix dyad(const Ket& a, const Ket& b) { return a * b.adjoint(); }

ComplexMatrix projector_onto(const Ket& psi) { return dyad(psi, psi); }

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Ket tensor_product(const Ket& a, const Ket& b) {
  Ket out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw NotSquareError("commutator requires square operands");
  }
  if (a.rows() != b.rows()) {
    throw DimensionMismatchError("commutator operands have different dimensions");
  }
  return max_abs(ComplexMatrix(a * b - b * a));
}

ComplexMatrix EigenSystem::reconstruct() const {
  ComplexMatrix sum = ComplexMatrix::Zero(dim(), dim());
  for (const auto& g : groups) sum += g.eigenvalue * g.projector;
  return sum;
}

int EigenSystem::dim() const {
  return groups.empty() ? 0 : static_cast<int>(groups.front().projector.rows());
}

EigenSystem hermitian_eigendecomposition(const ComplexMatrix& m, double group_tol) {
  if (m.rows() != m.cols()) {
    throw NotSquareError("eigendecomposition requires a square matrix");
  }
  const double defect = hermiticity_defect(m);
  if (defect > numeric_tol()) {
    throw NotHermitianError("matrix is not Hermitian, max asymmetry " +
                                std::to_string(defect),
                            defect);
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailureError("Hermitian eigensolver did not converge");
  }

  // Eigen returns eigenvalues in ascending order; walk them grouping runs
  // whose consecutive gaps stay within group_tol.
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  const int n = static_cast<int>(values.size());

  EigenSystem result;
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && values(end) - values(end - 1) <= group_tol) ++end;

    EigenGroup group;
    group.multiplicity = end - start;
    group.eigenvalue = values.segment(start, end - start).mean();
    group.projector = ComplexMatrix::Zero(n, n);
    for (int i = start; i < end; ++i) {
      group.projector += vectors.col(i) * vectors.col(i).adjoint();
    }
    result.groups.push_back(std::move(group));
    start = end;
  }

  // Descending eigenvalue order.
  std::reverse(result.groups.begin(), result.groups.end());
  return result;
}

double min_eigenvalue(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw NotSquareError("min_eigenvalue requires a square matrix");
  }
  ComplexMatrix herm = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailureError("Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues().minCoeff();
}

}  // namespace histq
