#include "histq/builtin_models.hpp"

#include <cmath>
#include <numbers>

namespace histq::builtin {

namespace {

Ket basis_ket(int dim, int index) {
  Ket v = Ket::Zero(dim);
  v(index) = 1.0;
  return v;
}

PDI basis_pointer_pdi(int dim, std::vector<std::string> labels) {
  std::vector<ComplexMatrix> projectors;
  for (int k = 0; k < dim; ++k) projectors.push_back(projector_onto(basis_ket(dim, k)));
  return make_pdi(projectors, std::move(labels));
}

}  // namespace

Ket z_plus() { return basis_ket(2, 0); }
Ket z_minus() { return basis_ket(2, 1); }

Ket x_plus() {
  Ket v(2);
  v << 1, 1;
  return v / std::sqrt(2.0);
}

Ket x_minus() {
  Ket v(2);
  v << 1, -1;
  return v / std::sqrt(2.0);
}

Ket singlet() {
  Ket v = tensor_product(z_plus(), z_minus()) - tensor_product(z_minus(), z_plus());
  return v / std::sqrt(2.0);
}

std::vector<Ket> trine_states() {
  const Complex omega = std::exp(Complex(0.0, 2.0 * std::numbers::pi / 3.0));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Ket u1(2), u2(2), u3(2);
  u1 << 1, 1;
  u2 << omega, omega * omega;
  u3 << omega * omega, omega;
  return {inv_sqrt2 * u1, inv_sqrt2 * u2, inv_sqrt2 * u3};
}

MeasurementModel spin_z() {
  return projective_model({{z_plus(), basis_ket(2, 0)}, {z_minus(), basis_ket(2, 1)}},
                          basis_pointer_pdi(2, {"Mp", "Mm"}));
}

MeasurementModel mz_open() {
  return projective_model({{z_plus(), basis_ket(2, 0)}, {z_minus(), basis_ket(2, 1)}},
                          basis_pointer_pdi(2, {"Dp", "Dm"}));
}

MeasurementModel mz_closed() {
  return projective_model({{x_plus(), basis_ket(2, 0)}, {x_minus(), basis_ket(2, 1)}},
                          basis_pointer_pdi(2, {"Dp", "Dm"}));
}

MeasurementModel trine() {
  const auto u = trine_states();
  const double root32 = std::sqrt(1.5);
  const double root12 = std::sqrt(0.5);
  Ket w(3);
  w << 1, 1, 1;
  w /= std::sqrt(3.0);

  ComplexMatrix j = ComplexMatrix::Zero(3, 2);
  for (int k = 0; k < 3; ++k) {
    const Ket v = root32 * basis_ket(3, k) - root12 * w;
    j += (2.0 / 3.0) * dyad(v, u[k]);
  }
  return make_measurement_model(make_isometry(j),
                                basis_pointer_pdi(3, {"M1", "M2", "M3"}));
}

MeasurementModel weak_probe(double epsilon, Complex ae, Complex af, Complex be,
                            Complex bf) {
  const double zeta = std::sqrt(1.0 - epsilon);
  const double eta = std::sqrt(epsilon);

  // Pointer basis order: E0, E1, E2, F0, F1, F2.
  ComplexMatrix j = ComplexMatrix::Zero(6, 2);
  j(0, 0) = zeta * ae;  // E0 <- A, probe untriggered
  j(3, 0) = zeta * af;  // F0 <- A
  j(1, 0) = eta * ae;   // E1 <- A, probe kicked by channel A
  j(4, 0) = eta * af;   // F1 <- A
  j(0, 1) = zeta * be;
  j(3, 1) = zeta * bf;
  j(2, 1) = eta * be;   // E2 <- B, probe kicked by channel B
  j(5, 1) = eta * bf;
  return make_measurement_model(
      make_isometry(j), basis_pointer_pdi(6, {"E0", "E1", "E2", "F0", "F1", "F2"}));
}

MeasurementModel switch_beta() {
  std::vector<std::pair<Ket, Ket>> images;
  for (int k = 0; k < 3; ++k) images.emplace_back(basis_ket(3, k), basis_ket(3, k));
  return projective_model(images, basis_pointer_pdi(3, {"D1", "D2", "D3"}));
}

MeasurementModel switch_gamma() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Ket h2 = inv_sqrt2 * (basis_ket(3, 1) + basis_ket(3, 2));
  const Ket h3 = inv_sqrt2 * (basis_ket(3, 1) - basis_ket(3, 2));
  return projective_model(
      {{basis_ket(3, 0), basis_ket(3, 0)}, {h2, basis_ket(3, 1)}, {h3, basis_ket(3, 2)}},
      basis_pointer_pdi(3, {"D1", "D2", "D3"}));
}

std::vector<std::pair<std::string, MeasurementModel>> calibrated_models() {
  std::vector<std::pair<std::string, MeasurementModel>> models;
  models.emplace_back("spin-z", spin_z());
  models.emplace_back("mz-open", mz_open());
  models.emplace_back("mz-closed", mz_closed());
  models.emplace_back("switch-beta", switch_beta());
  models.emplace_back("switch-gamma", switch_gamma());
  models.emplace_back("epr-z", epr_model(SpinAxis::Z));
  models.emplace_back("epr-x", epr_model(SpinAxis::X));
  return models;
}

}  // namespace histq::builtin
