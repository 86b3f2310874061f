#include "histq/measurement.hpp"

#include <cmath>

namespace histq {

namespace {

constexpr double kOrthoTol = 1e-9;

void check_orthonormal(const std::vector<Ket>& kets, const std::string& what) {
  for (std::size_t i = 0; i < kets.size(); ++i) {
    for (std::size_t j = i; j < kets.size(); ++j) {
      const Complex overlap = kets[i].dot(kets[j]);
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(overlap - expected) > kOrthoTol) {
        throw NonOrthonormalBasisError(what + ": vectors " + std::to_string(i) +
                                       " and " + std::to_string(j) +
                                       " are not orthonormal");
      }
    }
  }
}

}  // namespace

MeasurementModel make_measurement_model(Isometry J, PDI pointer) {
  if (pointer.dim() != J.target_dim()) {
    throw DimensionMismatchError("pointer PDI does not act on the isometry target space");
  }
  for (const auto& label : pointer.labels) {
    if (label == MeasurementModel::kRestLabel) {
      throw DimensionMismatchError("pointer label '0' is reserved for the remainder");
    }
  }

  MeasurementModel model;
  model.system_dim = J.source_dim();
  model.measurement_dim = J.target_dim();
  model.J = std::move(J);

  ComplexMatrix rest = identity(model.measurement_dim);
  for (const auto& p : pointer.projectors) rest -= p.matrix;
  model.pointer_rest = make_projector(rest);
  model.pointer = std::move(pointer);
  return model;
}

MeasurementModel measurement_model_from_dynamics(const ComplexMatrix& step,
                                                 const Ket& apparatus_ready,
                                                 PDI pointer) {
  if (step.rows() != step.cols()) {
    throw NotSquareError("interaction dynamics must be unitary on the joint space");
  }
  const int joint_dim = static_cast<int>(step.rows());
  const int apparatus_dim = static_cast<int>(apparatus_ready.size());
  if (apparatus_dim == 0 || joint_dim % apparatus_dim != 0) {
    throw DimensionMismatchError("ready state does not factor the joint space");
  }
  const int system_dim = joint_dim / apparatus_dim;
  if (std::abs(apparatus_ready.norm() - 1.0) > kNormTol) {
    throw NonOrthonormalBasisError("apparatus ready state must be normalized");
  }

  // Embed |psi> as |psi> x |Omega_0>, then apply the step.
  const ComplexMatrix ready_column = apparatus_ready;
  const ComplexMatrix embed = tensor_product(identity(system_dim), ready_column);
  MeasurementModel model =
      make_measurement_model(make_isometry(step * embed), std::move(pointer));
  model.apparatus_ready = apparatus_ready;
  model.split = std::make_pair(system_dim, apparatus_dim);
  return model;
}

MeasurementModel projective_model(
    const std::vector<std::pair<Ket, Ket>>& basis_images, const PDI& pointer_pdi) {
  if (basis_images.empty()) {
    throw NonOrthonormalBasisError("projective model needs at least one basis vector");
  }
  // Image j lands in pointer subspace j; extra pointer outcomes simply never
  // fire.
  if (static_cast<int>(basis_images.size()) > pointer_pdi.size()) {
    throw DimensionMismatchError(
        "projective model needs one pointer outcome per basis vector");
  }

  std::vector<Ket> basis, images;
  for (const auto& [s, phi] : basis_images) {
    basis.push_back(s);
    images.push_back(phi);
  }
  const int source_dim = static_cast<int>(basis.front().size());
  if (static_cast<int>(basis.size()) != source_dim) {
    throw NonOrthonormalBasisError("system vectors do not form a complete basis");
  }
  check_orthonormal(basis, "system basis");
  check_orthonormal(images, "pointer images");

  // Each image must sit inside its own pointer subspace: M^k |Phi^j> = delta_jk |Phi^j>.
  for (int j = 0; j < static_cast<int>(images.size()); ++j) {
    for (int k = 0; k < pointer_pdi.size(); ++k) {
      const Ket projected = pointer_pdi.projectors[k].matrix * images[j];
      const Ket expected = (j == k) ? images[j] : Ket(Ket::Zero(images[j].size()));
      if (max_abs(Ket(projected - expected)) > kOrthoTol) {
        throw PointerMismatchError("image " + std::to_string(j) +
                                       " is not confined to pointer subspace " +
                                       pointer_pdi.labels[k],
                                   j, k);
      }
    }
  }

  ComplexMatrix j_matrix = ComplexMatrix::Zero(images.front().size(), source_dim);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    j_matrix += dyad(images[i], basis[i]);
  }

  MeasurementModel model = make_measurement_model(make_isometry(j_matrix), pointer_pdi);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    model.calibration_states.emplace_back(basis[i], pointer_pdi.labels[i]);
  }
  return model;
}

ComplexMatrix backwards_map(const MeasurementModel& model, const std::string& outcome) {
  const ComplexMatrix& j = model.J.matrix;
  if (outcome == MeasurementModel::kRestLabel) {
    return j.adjoint() * model.pointer_rest.matrix * j;
  }
  const int idx = model.pointer.index_of(outcome);
  if (idx < 0) {
    throw UnknownOutcomeError("unknown pointer outcome: " + outcome);
  }
  return j.adjoint() * model.pointer.projectors[idx].matrix * j;
}

POVM derive_povm(const MeasurementModel& model) {
  std::vector<ComplexMatrix> elements;
  std::vector<std::string> labels = model.pointer.labels;
  for (const auto& label : labels) elements.push_back(backwards_map(model, label));
  labels.emplace_back(MeasurementModel::kRestLabel);
  elements.push_back(backwards_map(model, MeasurementModel::kRestLabel));
  return make_povm(elements, labels);
}

InferenceRun inference_family(const MeasurementModel& model, const StateEnsemble& initial,
                              double unreachable_tol) {
  if (initial.dim() != model.system_dim) {
    throw DimensionMismatchError("initial state does not live on the system space");
  }

  InferenceRun run;

  std::vector<History> histories;
  for (int k = 0; k < model.pointer.size(); ++k) {
    const std::string& outcome = model.pointer.labels[k];
    const ComplexMatrix q = backwards_map(model, outcome);

    InferenceResult result;
    result.outcome = outcome;
    result.q = q;
    const EigenSystem spectral = hermitian_eigendecomposition(q);
    std::vector<ComplexMatrix> xi;
    std::vector<std::string> xi_labels;
    int nonzero_groups = 0;
    for (std::size_t g = 0; g < spectral.groups.size(); ++g) {
      xi.push_back(spectral.groups[g].projector);
      xi_labels.push_back("xi:" + outcome + ":" + std::to_string(g));
      // Eigenvalues of a positive semi-definite operator; clamp fp dust.
      result.eigenvalues.push_back(std::max(spectral.groups[g].eigenvalue, 0.0));
      if (result.eigenvalues.back() > kGroupTol) ++nonzero_groups;
    }
    result.inference_pdi = make_pdi(xi, xi_labels);
    if (nonzero_groups == 1) {
      result.certain = true;
      for (std::size_t g = 0; g < result.eigenvalues.size(); ++g) {
        if (result.eigenvalues[g] > kGroupTol) result.certain_index = static_cast<int>(g);
      }
    }
    run.outcomes.push_back(std::move(result));

    for (std::size_t g = 0; g < xi.size(); ++g) {
      History h;
      h.events.push_back(Event::make(xi[g], {xi_labels[g]}));
      h.events.push_back(
          Event::make(model.pointer.projectors[k].matrix, {outcome}));
      histories.push_back(std::move(h));
    }
  }

  // Remainder history [Psi_0] (.) I (.) M^0, usually of zero weight.
  {
    History h;
    h.events.push_back(Event::make(identity(model.system_dim), {"I"}));
    h.events.push_back(Event::make(model.pointer_rest.matrix,
                                   {MeasurementModel::kRestLabel}));
    histories.push_back(std::move(h));
  }

  TimeGrid grid = make_time_grid({identity(model.system_dim), model.J.matrix});
  run.family = make_history_family(initial, std::move(grid), std::move(histories));
  run.consistency = check_consistency(run.family);
  if (!run.consistency.consistent()) {
    throw InconsistentFamilyError(
        "inference family failed the decoherence conditions; this is a bug");
  }
  run.joint = assign_probabilities(run.family);

  // Per-outcome marginals and conditional prior-property distributions.
  const ComplexMatrix rho = [&] {
    ComplexMatrix r = ComplexMatrix::Zero(model.system_dim, model.system_dim);
    for (const auto& [p, psi] : initial.members) r += p * projector_onto(psi);
    return r;
  }();
  const ComplexMatrix q_rest = backwards_map(model, MeasurementModel::kRestLabel);
  run.rest_weight_is_zero = max_abs(q_rest) <= numeric_tol();

  for (auto& result : run.outcomes) {
    result.outcome_probability =
        std::clamp((rho * result.q).trace().real(), 0.0, 1.0);
    result.reachable = result.outcome_probability > unreachable_tol;
    if (!result.reachable) continue;
    result.prior_distribution.resize(result.eigenvalues.size());
    for (std::size_t g = 0; g < result.eigenvalues.size(); ++g) {
      const double joint =
          result.eigenvalues[g] *
          (rho * result.inference_pdi.projectors[g].matrix).trace().real();
      result.prior_distribution[g] =
          std::clamp(joint / result.outcome_probability, 0.0, 1.0);
    }
  }
  return run;
}

InferenceRun inference_family(const MeasurementModel& model, const Ket& initial,
                              double unreachable_tol) {
  return inference_family(model, StateEnsemble::pure(initial), unreachable_tol);
}

KrausSet make_kraus_set(std::vector<ComplexMatrix> operators,
                        std::vector<std::string> labels) {
  if (operators.empty()) {
    throw ShapeError("a Kraus set needs at least one operator");
  }
  const Eigen::Index dim = operators.front().rows();
  for (const auto& k : operators) {
    if (k.rows() != dim || k.cols() != dim) {
      throw DimensionMismatchError("Kraus operators must share one square shape");
    }
  }
  ComplexMatrix closure = ComplexMatrix::Zero(dim, dim);
  for (const auto& k : operators) closure += k.adjoint() * k;
  const double defect =
      max_abs(ComplexMatrix(closure - identity(static_cast<int>(dim))));
  if (defect > numeric_tol()) {
    throw ClosureViolationError(
        "Kraus completeness sum differs from the identity by " + std::to_string(defect),
        defect);
  }

  KrausSet set;
  if (labels.empty()) {
    for (std::size_t i = 0; i < operators.size(); ++i) {
      labels.push_back("K" + std::to_string(i + 1));
    }
  }
  if (labels.size() != operators.size()) {
    throw DimensionMismatchError("Kraus label count does not match operator count");
  }
  set.labels = std::move(labels);
  set.operators = std::move(operators);
  return set;
}

MeasurementModel kraus_model(const KrausSet& kraus, const std::vector<Ket>& pointer_states) {
  if (pointer_states.size() != kraus.operators.size()) {
    throw DimensionMismatchError("one pointer state per Kraus operator is required");
  }
  check_orthonormal(pointer_states, "pointer states");

  const int d_s = kraus.dim();
  const int d_m = static_cast<int>(pointer_states.front().size());

  ComplexMatrix j_matrix = ComplexMatrix::Zero(d_s * d_m, d_s);
  std::vector<ComplexMatrix> pointer_projectors;
  for (std::size_t j = 0; j < kraus.operators.size(); ++j) {
    const ComplexMatrix phi_column = pointer_states[j];
    j_matrix += tensor_product(kraus.operators[j], phi_column);
    pointer_projectors.push_back(
        tensor_product(identity(d_s), projector_onto(pointer_states[j])));
  }

  MeasurementModel model = make_measurement_model(
      make_isometry(j_matrix), make_pdi(pointer_projectors, kraus.labels));
  model.split = std::make_pair(d_s, d_m);
  return model;
}

Ket kraus_post_state(const KrausSet& kraus, int j, const Ket& psi) {
  const Ket mapped = kraus.operators.at(j) * psi;
  const double norm = mapped.norm();
  if (norm <= 1e-12) {
    throw ZeroConditioningEventError("outcome " + kraus.labels.at(j) +
                                     " never occurs for this input");
  }
  return mapped / norm;
}

std::pair<Ket, double> PreparationModel::query(const std::string& outcome) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == outcome) return {targets[i], probabilities[i]};
  }
  throw UnknownOutcomeError("unknown preparation outcome: " + outcome);
}

PreparationModel preparation_model(const std::vector<std::pair<double, Ket>>& targets,
                                   const std::vector<Ket>& pointer_states,
                                   std::vector<std::string> labels) {
  if (targets.empty() || targets.size() != pointer_states.size()) {
    throw DimensionMismatchError("one pointer state per target state is required");
  }
  double total = 0.0;
  for (const auto& [p, s] : targets) {
    if (p < -numeric_tol()) throw ProbabilityDeficitError("negative preparation probability");
    if (std::abs(s.norm() - 1.0) > kNormTol) {
      throw NonOrthonormalBasisError("target states must be normalized");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > numeric_tol()) {
    throw ProbabilityDeficitError("preparation probabilities sum to " +
                                  std::to_string(total));
  }
  check_orthonormal(pointer_states, "pointer states");

  const int d_s = static_cast<int>(targets.front().second.size());
  const int d_m = static_cast<int>(pointer_states.front().size());

  // The source space is one-dimensional: the single input state |psi_1>.
  ComplexMatrix j_matrix = ComplexMatrix::Zero(d_s * d_m, 1);
  std::vector<ComplexMatrix> pointer_projectors;
  std::vector<std::string> outcome_labels = std::move(labels);
  if (outcome_labels.empty()) {
    for (std::size_t i = 0; i < targets.size(); ++i) {
      outcome_labels.push_back("P" + std::to_string(i + 1));
    }
  }
  if (outcome_labels.size() != targets.size()) {
    throw DimensionMismatchError("label count does not match target count");
  }

  PreparationModel prep;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const auto& [p, s] = targets[k];
    j_matrix.col(0) += std::sqrt(p) * tensor_product(s, pointer_states[k]);
    pointer_projectors.push_back(
        tensor_product(identity(d_s), projector_onto(pointer_states[k])));
    prep.probabilities.push_back(p);
    prep.targets.push_back(s);
  }

  prep.model = make_measurement_model(make_isometry(j_matrix),
                                      make_pdi(pointer_projectors, outcome_labels));
  prep.model.split = std::make_pair(d_s, d_m);
  prep.labels = std::move(outcome_labels);
  return prep;
}

NoncontextualityReport noncontextuality_check(const MeasurementModel& first,
                                              const MeasurementModel& second,
                                              const Observable& a_observable,
                                              const CoarseGraining& grouping,
                                              const std::vector<Ket>& probes) {
  if (first.system_dim != second.system_dim) {
    throw DimensionMismatchError("models must share the system space");
  }
  if (a_observable.matrix.rows() != first.system_dim) {
    throw DimensionMismatchError("observable must act on the system space");
  }
  if (grouping.groups.size() != a_observable.spectral.groups.size()) {
    throw CoarseGrainMismatchError(
        "group count does not match the observable's eigenvalue count");
  }

  // Every pointer outcome of each model must appear in exactly one group.
  for (const MeasurementModel* model : {&first, &second}) {
    std::vector<int> seen(model->pointer.size(), 0);
    for (const auto& [group_label, members] : grouping.groups) {
      for (const auto& outcome : members) {
        const int idx = model->pointer.index_of(outcome);
        if (idx < 0) {
          throw CoarseGrainMismatchError("group " + group_label +
                                         " names unknown outcome " + outcome);
        }
        ++seen[idx];
      }
    }
    for (int i = 0; i < model->pointer.size(); ++i) {
      if (seen[i] != 1) {
        throw CoarseGrainMismatchError("pointer groups do not partition outcome " +
                                       model->pointer.labels[i]);
      }
    }
  }

  NoncontextualityReport report;
  for (const auto& [label, members] : grouping.groups) {
    (void)members;
    report.group_labels.push_back(label);
  }

  auto grouped_distribution = [&](const MeasurementModel& model, const Ket& psi) {
    std::vector<double> dist;
    for (const auto& [label, members] : grouping.groups) {
      (void)label;
      double p = 0.0;
      for (const auto& outcome : members) {
        const ComplexMatrix q = backwards_map(model, outcome);
        p += (psi.dot(q * psi)).real();
      }
      dist.push_back(p);
    }
    return dist;
  };

  for (const auto& probe : probes) {
    if (static_cast<int>(probe.size()) != first.system_dim) {
      throw DimensionMismatchError("probe state does not live on the system space");
    }
    NoncontextualityProbeResult pr;
    pr.distribution_first = grouped_distribution(first, probe);
    pr.distribution_second = grouped_distribution(second, probe);
    for (const auto& g : a_observable.spectral.groups) {
      pr.distribution_born.push_back((probe.dot(g.projector * probe)).real());
    }
    for (std::size_t i = 0; i < pr.distribution_first.size(); ++i) {
      pr.max_difference = std::max(
          pr.max_difference, std::abs(pr.distribution_first[i] - pr.distribution_second[i]));
    }
    report.max_difference = std::max(report.max_difference, pr.max_difference);
    report.probes.push_back(std::move(pr));
  }
  report.pass = report.max_difference <= 10 * numeric_tol();
  return report;
}

MeasurementModel epr_model(SpinAxis axis) {
  Ket zp(2), zm(2);
  zp << 1, 0;
  zm << 0, 1;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Ket basis_plus, basis_minus;
  if (axis == SpinAxis::Z) {
    basis_plus = zp;
    basis_minus = zm;
  } else {
    basis_plus = inv_sqrt2 * (zp + zm);
    basis_minus = inv_sqrt2 * (zp - zm);
  }

  // Pointer carrier for the particle-a apparatus; particle b is untouched.
  ComplexMatrix j_a = dyad(zp, basis_plus) + dyad(zm, basis_minus);
  ComplexMatrix j_matrix = tensor_product(j_a, identity(2));

  std::vector<ComplexMatrix> pointers = {
      tensor_product(projector_onto(zp), identity(2)),
      tensor_product(projector_onto(zm), identity(2)),
  };
  MeasurementModel model = make_measurement_model(
      make_isometry(j_matrix), make_pdi(pointers, {"Mp", "Mm"}));

  for (const Ket& b : {zp, zm}) {
    model.calibration_states.emplace_back(tensor_product(basis_plus, b), "Mp");
    model.calibration_states.emplace_back(tensor_product(basis_minus, b), "Mm");
  }
  return model;
}

}  // namespace histq
