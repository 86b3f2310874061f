#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "histq/errors.hpp"

namespace histq {

using Complex = std::complex<double>;

/// Dense row-major complex matrix; carrier for every operator in the engine.
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

/// Dense complex column vector; carrier for states and chain kets.
using Ket = Eigen::VectorXcd;

/// Default absolute tolerance on matrix entries.
inline constexpr double kDefaultNumericTol = 1e-10;

namespace detail {
inline double g_numeric_tol = kDefaultNumericTol;
}

/// Absolute tolerance on matrix entries used by every validation.
/// Overridable once at startup (CLI --numeric-tol); not thread-safe against
/// concurrent validations.
inline double numeric_tol() { return detail::g_numeric_tol; }
void set_numeric_tol(double tol);

/// Default absolute tolerance for merging eigenvalues into one spectral group.
inline constexpr double kGroupTol = 1e-8;

/// Default relative tolerance for the decoherence (consistency) conditions.
inline constexpr double kConsistencyTol = 1e-8;

/// Tolerance below which a normalized ket is accepted as normalized.
inline constexpr double kNormTol = 1e-10;

/// Max absolute entry, the norm used by every entrywise contract.
double max_abs(const ComplexMatrix& m);
double max_abs(const Ket& v);

bool all_finite(const ComplexMatrix& m);
bool all_finite(const Ket& v);

/// Max |m - m^dagger| entry; zero for Hermitian input.
double hermiticity_defect(const ComplexMatrix& m);

ComplexMatrix identity(int dim);

/// |a><b| for kets of possibly different dimensions.
ComplexMatrix dyad(const Ket& a, const Ket& b);

/// [psi] = |psi><psi|.
ComplexMatrix projector_onto(const Ket& psi);

/// Kronecker product; left factor varies slowest.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
Ket tensor_product(const Ket& a, const Ket& b);

/// Max-entry norm of ab - ba. Throws DimensionMismatchError.
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenGroup {
  double eigenvalue = 0.0;
  ComplexMatrix projector;
  int multiplicity = 0;
};

/// Spectral decomposition with near-degenerate eigenvalues merged into a
/// single projector group. Groups are sorted by descending eigenvalue and
/// split where consecutive eigenvalues differ by more than group_tol.
struct EigenSystem {
  std::vector<EigenGroup> groups;

  ComplexMatrix reconstruct() const;
  int dim() const;
};

/// Throws NotSquareError / NotHermitianError / NumericalFailureError.
EigenSystem hermitian_eigendecomposition(const ComplexMatrix& m,
                                         double group_tol = kGroupTol);

/// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const ComplexMatrix& m);

}  // namespace histq
