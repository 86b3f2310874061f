#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "histq/histories.hpp"

namespace histq {

/// A measurement: an isometry J from the system space into the measurement
/// space plus a pointer PDI {M^k} naming the macroscopic outcomes. The
/// remainder M^0 = I - sum M^k (apparatus breakdown subspace) is derived.
/// The measurement space is abstract; models that need a system x apparatus
/// tensor split (Kraus, preparation) record it in `split`.
struct MeasurementModel {
  int system_dim = 0;
  int measurement_dim = 0;
  Isometry J;
  PDI pointer;
  Projector pointer_rest;  // M^0, possibly zero
  std::optional<Ket> apparatus_ready;
  std::optional<std::pair<int, int>> split;  // (system, apparatus) factor dims

  /// Eigenstate -> designated outcome pairs, populated by projective-style
  /// constructors; used for calibration runs.
  std::vector<std::pair<Ket, std::string>> calibration_states;

  static constexpr const char* kRestLabel = "0";
};

/// Builds a model from an isometry and a pointer PDI on its target space.
MeasurementModel make_measurement_model(Isometry J, PDI pointer);

/// Builds a model from the interaction dynamics: J|psi> = T (|psi> x |Omega_0>)
/// where T is the unitary step on system x apparatus and |Omega_0> the ready
/// state of the apparatus.
MeasurementModel measurement_model_from_dynamics(const ComplexMatrix& step,
                                                 const Ket& apparatus_ready,
                                                 PDI pointer);

/// Projective measurement: J maps the orthonormal basis {|s^j>} onto
/// orthonormal images {|Phi^j>}, where image j must lie inside the pointer
/// subspace M^j (matched to pointer_pdi by position). Throws
/// NonOrthonormalBasisError / PointerMismatchError.
MeasurementModel projective_model(
    const std::vector<std::pair<Ket, Ket>>& basis_images, const PDI& pointer_pdi);

/// Q^k = J^dagger M^k J; label "0" addresses the remainder M^0.
/// Throws UnknownOutcomeError.
ComplexMatrix backwards_map(const MeasurementModel& model, const std::string& outcome);

/// The POVM {Q^k} over every pointer label plus the remainder "0".
/// Positivity and completeness hold by construction; a validation failure
/// here signals an internal bug.
POVM derive_povm(const MeasurementModel& model);

/// What pointer outcome k reveals about the earlier microscopic state: the
/// spectral projectors xi^{jk} of Q^k with eigenvalues q_{jk}, and the
/// distribution over them conditioned on seeing k.
struct InferenceResult {
  std::string outcome;
  ComplexMatrix q;                 // Q^k
  PDI inference_pdi;               // {xi^{jk}}, descending eigenvalue order
  std::vector<double> eigenvalues; // q_{jk}, aligned with inference_pdi
  double outcome_probability = 0.0;
  bool reachable = false;
  std::vector<double> prior_distribution;  // empty when unreachable
  /// Set when Q^k has a single nonzero eigenvalue, so the outcome forces one
  /// prior property regardless of the input state.
  bool certain = false;
  int certain_index = -1;  // index into inference_pdi when certain
};

struct InferenceRun {
  HistoryFamily family;
  ConsistencyReport consistency;
  ProbabilityTable joint;
  std::vector<InferenceResult> outcomes;
  bool rest_weight_is_zero = true;  // whether Q^0 vanished (reported, not assumed)
};

/// Builds the canonical inference family [Psi_0] (.) {xi^{jk}} (.) M^k on the
/// three-time grid with an identity first step, verifies its consistency
/// (a theorem; violation signals an internal bug) and evaluates joint,
/// marginal and conditional data for the given input state or ensemble.
InferenceRun inference_family(const MeasurementModel& model, const StateEnsemble& initial,
                              double unreachable_tol = 1e-12);
InferenceRun inference_family(const MeasurementModel& model, const Ket& initial,
                              double unreachable_tol = 1e-12);

/// Kraus operators K^j with sum (K^j)^dagger K^j = I.
struct KrausSet {
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> operators;

  int dim() const {
    return operators.empty() ? 0 : static_cast<int>(operators.front().rows());
  }
};

/// Throws ClosureViolationError when the completeness sum fails.
KrausSet make_kraus_set(std::vector<ComplexMatrix> operators,
                        std::vector<std::string> labels = {});

/// Measurement-preparation model J|psi> = sum_j K^j|psi> x |Phi^j> on
/// H_s x H_m; its POVM is Q^j = (K^j)^dagger K^j.
MeasurementModel kraus_model(const KrausSet& kraus, const std::vector<Ket>& pointer_states);

/// State emitted at the apparatus output for outcome j: K^j|psi> normalized.
Ket kraus_post_state(const KrausSet& kraus, int j, const Ket& psi);

/// Preparation: a source state is mapped to sum_k sqrt(p_k)|s_k> x |Phi^k>,
/// so pointer outcome k certifies the (not necessarily orthogonal) prepared
/// state |s_k>. query(k) returns that state and its occurrence probability.
struct PreparationModel {
  MeasurementModel model;
  std::vector<std::string> labels;
  std::vector<double> probabilities;
  std::vector<Ket> targets;

  std::pair<Ket, double> query(const std::string& outcome) const;
};

/// Throws ProbabilityDeficitError when the p_k do not sum to 1.
PreparationModel preparation_model(const std::vector<std::pair<double, Ket>>& targets,
                                   const std::vector<Ket>& pointer_states,
                                   std::vector<std::string> labels = {});

/// Pointer outcomes grouped by the eigenvalue of a co-measured observable,
/// listed in descending-eigenvalue order of that observable.
struct CoarseGraining {
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
};

struct NoncontextualityProbeResult {
  std::vector<double> distribution_first;
  std::vector<double> distribution_second;
  std::vector<double> distribution_born;  // from the observable's own PDI
  double max_difference = 0.0;
};

struct NoncontextualityReport {
  std::vector<std::string> group_labels;
  std::vector<NoncontextualityProbeResult> probes;
  double max_difference = 0.0;
  bool pass = false;
};

/// Bell noncontextuality check: for each probe state, the distribution over
/// observable-eigenvalue pointer groups must agree between the two switch
/// settings. Throws CoarseGrainMismatchError when the groups do not
/// partition a model's outcomes or do not align with the observable.
NoncontextualityReport noncontextuality_check(const MeasurementModel& first,
                                              const MeasurementModel& second,
                                              const Observable& a_observable,
                                              const CoarseGraining& grouping,
                                              const std::vector<Ket>& probes);

enum class SpinAxis { Z, X };

/// Two spin-half particles in which only particle a is measured, along the
/// given axis: J = J_a x I_b with pointer projectors M^pm x I_b.
MeasurementModel epr_model(SpinAxis axis);

}  // namespace histq
