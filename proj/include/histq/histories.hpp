#pragma once

#include <string>
#include <utility>
#include <vector>

#include "histq/quantum_objects.hpp"

namespace histq {

/// Discrete time grid t_0 < t_1 < ... < t_n with one propagator per step.
/// Propagators may be rectangular isometries (T^dagger T = I on the source),
/// so a measurement interaction J : H_s -> H_M is an ordinary grid step and
/// each time slot carries its own space dimension.
struct TimeGrid {
  std::vector<std::string> times;           // size n+1
  std::vector<ComplexMatrix> propagators;   // size n, propagator[i] = T(t_{i+1}, t_i)

  int steps() const { return static_cast<int>(propagators.size()); }
  int dim_at(int slot) const;
};

/// Throws on dimension chain breaks or non-isometric propagators.
TimeGrid make_time_grid(std::vector<ComplexMatrix> propagators,
                        std::vector<std::string> times = {});

/// One projector in a history, tagged with outcome labels. An event local to
/// a subsystem is promoted with identity factors before it gets here; tags
/// keep the per-subsystem outcome names queryable (e.g. {"zp_a", "zm_b"}).
struct Event {
  ComplexMatrix projector;
  std::vector<std::string> tags;

  static Event make(ComplexMatrix projector, std::vector<std::string> tags);
};

/// Events at t_1..t_n. The event at t_0 is the initial-state projector and is
/// shared by the whole family, so it is kept on the family, not per history.
struct History {
  std::vector<Event> events;

  std::string label() const;  // tags joined with '&' per slot, ',' across slots
};

/// Initial condition: a pure state is a single-member ensemble; a density
/// operator enters as its ensemble decomposition and every derived quantity
/// is the probability-weighted sum over pure-state runs.
struct StateEnsemble {
  std::vector<std::pair<double, Ket>> members;

  static StateEnsemble pure(Ket psi);
  int dim() const;
};

struct HistoryFamily {
  StateEnsemble initial;
  TimeGrid grid;
  std::vector<History> histories;
  /// The zero-probability complement history (I - [Psi_0]) at t_0 that pads
  /// the projector sum to the history-space identity. Never evaluated.
  bool include_complement = true;
};

/// Validates slot dimensions, state normalization and completeness: the
/// history projectors over slots 1..n must sum to the identity on the
/// history space. The sum is formed explicitly, which covers pointer-linked
/// families whose intermediate decompositions differ per final outcome.
HistoryFamily make_history_family(StateEnsemble initial, TimeGrid grid,
                                  std::vector<History> histories);
HistoryFamily make_history_family(Ket initial, TimeGrid grid,
                                  std::vector<History> histories);

/// F_n T(t_n,t_{n-1}) ... F_1 T(t_1,t_0) |Psi_0>, for one ensemble member.
Ket chain_ket(const HistoryFamily& family, const History& history, int member = 0);

/// All chain kets plus their Gram matrix of inner products. For an ensemble
/// the Gram is the probability-weighted sum over members, i.e. the
/// decoherence functional of the corresponding density operator.
struct ChainKetTable {
  std::vector<std::vector<Ket>> kets;  // [member][history]
  ComplexMatrix gram;
};

ChainKetTable chain_ket_table(const HistoryFamily& family);

enum class ConsistencyVerdict { Consistent, TriviallyConsistent, Inconsistent };

std::string to_string(ConsistencyVerdict v);

struct ConsistencyReport {
  ComplexMatrix gram;
  double max_off_diagonal = 0.0;
  double max_diagonal = 0.0;
  ConsistencyVerdict verdict = ConsistencyVerdict::Consistent;
  std::pair<int, int> worst_pair{-1, -1};
  double tol = kConsistencyTol;

  bool consistent() const { return verdict != ConsistencyVerdict::Inconsistent; }
};

/// Decoherence check: consistent when every off-diagonal Gram entry is at
/// most tol times the largest diagonal entry; trivially consistent when all
/// diagonals are below tol (an all-zero family supports no inference).
ConsistencyReport check_consistency(const HistoryFamily& family,
                                    double tol = kConsistencyTol);

struct ProbabilityEntry {
  std::vector<std::vector<std::string>> slot_tags;  // per slot 1..n
  double probability = 0.0;

  std::string label() const;
};

struct ProbabilityTable {
  std::vector<ProbabilityEntry> entries;
  std::vector<std::string> times;  // grid labels for kept slots (t_1..)
  bool normative = true;           // false when consistency was overridden

  double total() const;
};

/// Extended Born rule: Pr(Y^alpha) = <Y^alpha|Y^alpha>. Throws
/// InconsistentFamilyError unless the family passes check_consistency;
/// allow_inconsistent computes the diagnostic table anyway and marks it
/// non-normative.
ProbabilityTable assign_probabilities(const HistoryFamily& family,
                                      double tol = kConsistencyTol,
                                      bool allow_inconsistent = false);

/// Event pattern: every (slot, tag) pair must match; a history matches a
/// pair when its event at that slot carries the tag. Slots are 1-based.
struct Pattern {
  std::vector<std::pair<int, std::string>> constraints;

  static Pattern where(int slot, std::string tag);
  Pattern& and_where(int slot, std::string tag);
  bool matches(const ProbabilityEntry& entry) const;
};

/// Pr(target and given) / Pr(given). Throws ZeroConditioningEventError when
/// Pr(given) <= tol.
double conditional_probability(const ProbabilityTable& table, const Pattern& given,
                               const Pattern& target, double tol = 1e-12);

/// Sums probabilities over discarded slots; keep_slots are 1-based indices.
ProbabilityTable marginalize(const ProbabilityTable& table,
                             const std::vector<int>& keep_slots);

}  // namespace histq
