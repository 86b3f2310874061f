#include "histq/histories.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace histq {

int TimeGrid::dim_at(int slot) const {
  if (slot == 0) return static_cast<int>(propagators.front().cols());
  return static_cast<int>(propagators.at(slot - 1).rows());
}

TimeGrid make_time_grid(std::vector<ComplexMatrix> propagators,
                        std::vector<std::string> times) {
  if (propagators.empty()) {
    throw ShapeError("a time grid needs at least one step");
  }
  for (std::size_t i = 0; i < propagators.size(); ++i) {
    const auto& t = propagators[i];
    if (t.rows() < t.cols()) {
      throw ShapeError("propagator " + std::to_string(i) + " shrinks the space");
    }
    const double defect =
        max_abs(ComplexMatrix(t.adjoint() * t - identity(static_cast<int>(t.cols()))));
    if (defect > numeric_tol()) {
      throw ValidationError(ValidationReport{
          Violation::IsometryDefect, defect, static_cast<int>(i), -1,
          "propagator " + std::to_string(i) + " is not length preserving"});
    }
    if (i + 1 < propagators.size() &&
        propagators[i + 1].cols() != propagators[i].rows()) {
      throw DimensionMismatchError("propagator dimensions do not chain");
    }
  }
  TimeGrid grid;
  grid.propagators = std::move(propagators);
  if (times.empty()) {
    for (std::size_t i = 0; i <= grid.propagators.size(); ++i) {
      times.push_back("t" + std::to_string(i));
    }
  }
  if (times.size() != grid.propagators.size() + 1) {
    throw DimensionMismatchError("time label count must be steps + 1");
  }
  grid.times = std::move(times);
  return grid;
}

Event Event::make(ComplexMatrix projector, std::vector<std::string> tags) {
  auto validated = validate_projector(projector);
  if (!validated.ok()) throw ValidationError(validated.report);
  return Event{std::move(projector), std::move(tags)};
}

std::string History::label() const {
  std::string out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i > 0) out += ",";
    for (std::size_t j = 0; j < events[i].tags.size(); ++j) {
      if (j > 0) out += "&";
      out += events[i].tags[j];
    }
  }
  return out;
}

StateEnsemble StateEnsemble::pure(Ket psi) {
  StateEnsemble e;
  e.members.emplace_back(1.0, std::move(psi));
  return e;
}

int StateEnsemble::dim() const {
  return members.empty() ? 0 : static_cast<int>(members.front().second.size());
}

namespace {

void validate_family(const HistoryFamily& family) {
  const auto& grid = family.grid;
  const int n = grid.steps();

  if (family.initial.members.empty()) {
    throw ShapeError("family needs an initial state");
  }
  double weight = 0.0;
  for (const auto& [p, psi] : family.initial.members) {
    if (p < -numeric_tol()) throw ProbabilityDeficitError("negative ensemble weight");
    if (static_cast<int>(psi.size()) != grid.dim_at(0)) {
      throw DimensionMismatchError("initial state dimension does not match the grid");
    }
    if (std::abs(psi.norm() - 1.0) > kNormTol) {
      throw ValidationError(ValidationReport{Violation::Shape, std::abs(psi.norm() - 1.0),
                                             -1, -1,
                                             "initial state member is not normalized"});
    }
    weight += p;
  }
  if (std::abs(weight - 1.0) > numeric_tol()) {
    throw ProbabilityDeficitError("ensemble weights sum to " + std::to_string(weight));
  }

  if (family.histories.empty()) {
    throw ShapeError("family has no histories");
  }
  for (const auto& h : family.histories) {
    if (static_cast<int>(h.events.size()) != n) {
      throw DimensionMismatchError("history event count does not match the grid");
    }
    for (int slot = 1; slot <= n; ++slot) {
      const auto& ev = h.events[slot - 1];
      if (ev.projector.rows() != grid.dim_at(slot)) {
        throw DimensionMismatchError("event at slot " + std::to_string(slot) +
                                     " acts on the wrong space");
      }
    }
  }

  // Completeness over slots 1..n: the tensor products of the history events
  // must sum to the identity on the history space. Explicit, so it covers
  // pointer-linked families where intermediate decompositions vary with the
  // final outcome.
  Eigen::Index hist_dim = 1;
  for (int slot = 1; slot <= n; ++slot) hist_dim *= grid.dim_at(slot);
  ComplexMatrix sum = ComplexMatrix::Zero(hist_dim, hist_dim);
  for (const auto& h : family.histories) {
    ComplexMatrix prod = h.events.front().projector;
    for (int slot = 2; slot <= n; ++slot) {
      prod = tensor_product(prod, h.events[slot - 1].projector);
    }
    sum += prod;
  }
  const double defect =
      max_abs(ComplexMatrix(sum - identity(static_cast<int>(hist_dim))));
  if (defect > 10 * numeric_tol()) {
    throw ValidationError(ValidationReport{
        Violation::Completeness, defect, -1, -1,
        "history projectors do not sum to the history-space identity"});
  }
}

}  // namespace

HistoryFamily make_history_family(StateEnsemble initial, TimeGrid grid,
                                  std::vector<History> histories) {
  HistoryFamily family;
  family.initial = std::move(initial);
  family.grid = std::move(grid);
  family.histories = std::move(histories);
  validate_family(family);
  return family;
}

HistoryFamily make_history_family(Ket initial, TimeGrid grid,
                                  std::vector<History> histories) {
  return make_history_family(StateEnsemble::pure(std::move(initial)), std::move(grid),
                             std::move(histories));
}

Ket chain_ket(const HistoryFamily& family, const History& history, int member) {
  const auto& grid = family.grid;
  Ket state = family.initial.members.at(member).second;
  for (int step = 0; step < grid.steps(); ++step) {
    if (grid.propagators[step].cols() != state.size()) {
      throw DimensionMismatchError("propagator does not fit the evolving state");
    }
    state = grid.propagators[step] * state;
    state = history.events.at(step).projector * state;
  }
  return state;
}

ChainKetTable chain_ket_table(const HistoryFamily& family) {
  ChainKetTable table;
  const int n_hist = static_cast<int>(family.histories.size());
  const int n_members = static_cast<int>(family.initial.members.size());
  table.kets.resize(n_members);
  table.gram = ComplexMatrix::Zero(n_hist, n_hist);
  for (int m = 0; m < n_members; ++m) {
    table.kets[m].reserve(n_hist);
    for (int h = 0; h < n_hist; ++h) {
      table.kets[m].push_back(chain_ket(family, family.histories[h], m));
    }
    const double weight = family.initial.members[m].first;
    for (int a = 0; a < n_hist; ++a) {
      for (int b = 0; b < n_hist; ++b) {
        table.gram(a, b) += weight * table.kets[m][a].dot(table.kets[m][b]);
      }
    }
  }
  return table;
}

std::string to_string(ConsistencyVerdict v) {
  switch (v) {
    case ConsistencyVerdict::Consistent: return "consistent";
    case ConsistencyVerdict::TriviallyConsistent: return "trivially consistent";
    case ConsistencyVerdict::Inconsistent: return "inconsistent";
  }
  return "unknown";
}

ConsistencyReport check_consistency(const HistoryFamily& family, double tol) {
  ConsistencyReport report;
  report.tol = tol;
  report.gram = chain_ket_table(family).gram;

  const int n = static_cast<int>(report.gram.rows());
  for (int i = 0; i < n; ++i) {
    report.max_diagonal = std::max(report.max_diagonal, report.gram(i, i).real());
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double mag = std::abs(report.gram(i, j));
      if (mag > report.max_off_diagonal) {
        report.max_off_diagonal = mag;
        report.worst_pair = {i, j};
      }
    }
  }

  if (report.max_diagonal <= tol) {
    report.verdict = ConsistencyVerdict::TriviallyConsistent;
  } else if (report.max_off_diagonal <= tol * report.max_diagonal) {
    report.verdict = ConsistencyVerdict::Consistent;
  } else {
    report.verdict = ConsistencyVerdict::Inconsistent;
  }
  return report;
}

std::string ProbabilityEntry::label() const {
  std::string out;
  for (std::size_t i = 0; i < slot_tags.size(); ++i) {
    if (i > 0) out += ",";
    for (std::size_t j = 0; j < slot_tags[i].size(); ++j) {
      if (j > 0) out += "&";
      out += slot_tags[i][j];
    }
  }
  return out;
}

double ProbabilityTable::total() const {
  double sum = 0.0;
  for (const auto& e : entries) sum += e.probability;
  return sum;
}

ProbabilityTable assign_probabilities(const HistoryFamily& family, double tol,
                                      bool allow_inconsistent) {
  const auto report = check_consistency(family, tol);
  if (!report.consistent() && !allow_inconsistent) {
    throw InconsistentFamilyError(
        "extended Born rule needs a consistent family (max off-diagonal " +
        std::to_string(report.max_off_diagonal) + ")");
  }

  ProbabilityTable table;
  table.normative = report.consistent();
  for (std::size_t i = 1; i < family.grid.times.size(); ++i) {
    table.times.push_back(family.grid.times[i]);
  }
  for (std::size_t h = 0; h < family.histories.size(); ++h) {
    ProbabilityEntry entry;
    for (const auto& ev : family.histories[h].events) entry.slot_tags.push_back(ev.tags);
    entry.probability =
        std::clamp(report.gram(static_cast<int>(h), static_cast<int>(h)).real(), 0.0, 1.0);
    table.entries.push_back(std::move(entry));
  }
  return table;
}

Pattern Pattern::where(int slot, std::string tag) {
  Pattern p;
  p.constraints.emplace_back(slot, std::move(tag));
  return p;
}

Pattern& Pattern::and_where(int slot, std::string tag) {
  constraints.emplace_back(slot, std::move(tag));
  return *this;
}

bool Pattern::matches(const ProbabilityEntry& entry) const {
  for (const auto& [slot, tag] : constraints) {
    if (slot < 1 || slot > static_cast<int>(entry.slot_tags.size())) return false;
    const auto& tags = entry.slot_tags[slot - 1];
    if (std::find(tags.begin(), tags.end(), tag) == tags.end()) return false;
  }
  return true;
}

double conditional_probability(const ProbabilityTable& table, const Pattern& given,
                               const Pattern& target, double tol) {
  double p_given = 0.0;
  double p_both = 0.0;
  for (const auto& entry : table.entries) {
    if (!given.matches(entry)) continue;
    p_given += entry.probability;
    if (target.matches(entry)) p_both += entry.probability;
  }
  if (p_given <= tol) {
    throw ZeroConditioningEventError(
        "conditioning event has probability " + std::to_string(p_given) +
        " (outcome unreachable)");
  }
  return p_both / p_given;
}

ProbabilityTable marginalize(const ProbabilityTable& table,
                             const std::vector<int>& keep_slots) {
  for (int slot : keep_slots) {
    if (slot < 1 || slot > static_cast<int>(table.times.size())) {
      throw DimensionMismatchError("marginalize: slot out of range");
    }
  }

  ProbabilityTable out;
  out.normative = table.normative;
  for (int slot : keep_slots) out.times.push_back(table.times[slot - 1]);

  std::map<std::string, std::size_t> index;
  for (const auto& entry : table.entries) {
    ProbabilityEntry reduced;
    for (int slot : keep_slots) reduced.slot_tags.push_back(entry.slot_tags[slot - 1]);
    const std::string key = reduced.label();
    auto it = index.find(key);
    if (it == index.end()) {
      reduced.probability = entry.probability;
      index.emplace(key, out.entries.size());
      out.entries.push_back(std::move(reduced));
    } else {
      out.entries[it->second].probability += entry.probability;
    }
  }
  return out;
}

}  // namespace histq
