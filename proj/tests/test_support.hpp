#pragma once

#include <random>

#include "histq/quantum_objects.hpp"

namespace histq::test {

inline Ket basis_ket(int dim, int index) {
  Ket v = Ket::Zero(dim);
  v(index) = 1.0;
  return v;
}

inline Ket random_ket(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss;
  Ket v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> gauss;
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = Complex(gauss(rng), gauss(rng));
  }
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, int dim) {
  const ComplexMatrix m = random_matrix(rng, dim, dim);
  return (m + m.adjoint()) / 2.0;
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, int dim) {
  const ComplexMatrix m = random_matrix(rng, dim, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  ComplexMatrix q = qr.householderQ();
  return q;
}

/// Random isometry: the first source_dim columns of a random unitary.
inline ComplexMatrix random_isometry(std::mt19937_64& rng, int target_dim,
                                     int source_dim) {
  return random_unitary(rng, target_dim).leftCols(source_dim);
}

/// Random PDI with the given number of groups (columns of a random unitary
/// split into consecutive blocks).
inline PDI random_pdi(std::mt19937_64& rng, int dim, int groups) {
  const ComplexMatrix u = random_unitary(rng, dim);
  std::vector<int> sizes(groups, 1);
  for (int extra = dim - groups; extra > 0; --extra) {
    sizes[std::uniform_int_distribution<int>(0, groups - 1)(rng)] += 1;
  }
  std::vector<ComplexMatrix> projectors;
  std::vector<std::string> labels;
  int col = 0;
  for (int g = 0; g < groups; ++g) {
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    for (int i = 0; i < sizes[g]; ++i, ++col) {
      p += u.col(col) * u.col(col).adjoint();
    }
    projectors.push_back(std::move(p));
    labels.push_back("P" + std::to_string(g + 1));
  }
  return make_pdi(projectors, labels);
}

}  // namespace histq::test
