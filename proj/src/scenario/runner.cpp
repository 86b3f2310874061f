#include "histq/scenario/runner.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <set>

namespace histq::scenario {

namespace {

using Value = std::variant<Complex, Ket, ComplexMatrix>;

const char* value_kind(const Value& v) {
  switch (v.index()) {
    case 0: return "scalar";
    case 1: return "ket";
    default: return "operator";
  }
}

class Elaborator {
public:
  explicit Elaborator(Scenario& scenario) : s_(scenario) {}

  void run(const ScenarioAst& ast) {
    for (const auto& statement : ast.statements) {
      std::visit([this](const auto& decl) { declare(decl); }, statement);
    }
  }

private:
  [[noreturn]] void error(const std::string& what, SourcePos pos) const {
    throw ResolutionError(what + " (line " + std::to_string(pos.line) + ", column " +
                              std::to_string(pos.column) + ")",
                          pos);
  }

  void check_unused(const std::string& name, SourcePos pos) const {
    if (s_.spaces.count(name) || s_.kets.count(name) || s_.operators.count(name) ||
        s_.models.count(name) || s_.families.count(name)) {
      error("name '" + name + "' is already bound", pos);
    }
  }

  const Ket& ket(const std::string& name, SourcePos pos) const {
    auto it = s_.kets.find(name);
    if (it == s_.kets.end()) error("unknown ket '" + name + "'", pos);
    return it->second;
  }

  int space_dim(const std::string& name, SourcePos pos) const {
    auto it = s_.spaces.find(name);
    if (it == s_.spaces.end()) error("unknown space '" + name + "'", pos);
    return it->second;
  }

  // ---- expression evaluation ----

  Value eval(const ExprPtr& e) const {
    switch (e->kind) {
      case Expr::Kind::Number:
        return Complex(e->number, 0.0);
      case Expr::Kind::Pi:
        return Complex(std::numbers::pi, 0.0);
      case Expr::Kind::ImagUnit:
        return Complex(0.0, 1.0);
      case Expr::Kind::Omega:
        return std::exp(Complex(0.0, 2.0 * std::numbers::pi / 3.0));
      case Expr::Kind::Sqrt: {
        const Value v = eval(e->lhs);
        if (const auto* c = std::get_if<Complex>(&v)) return std::sqrt(*c);
        error("sqrt needs a scalar argument", e->pos);
      }
      case Expr::Kind::Dag: {
        const Value v = eval(e->lhs);
        if (const auto* m = std::get_if<ComplexMatrix>(&v)) {
          return ComplexMatrix(m->adjoint());
        }
        error("dag needs an operator argument", e->pos);
      }
      case Expr::Kind::Identity:
        return identity(space_dim(e->name, e->pos));
      case Expr::Kind::Rows:
        return rows_matrix(e);
      case Expr::Kind::Bracket:
        return bracket(e);
      case Expr::Kind::Dyad:
        return dyad(ket(e->name, e->pos), ket(e->name_b, e->pos));
      case Expr::Kind::Ref: {
        if (auto it = s_.kets.find(e->name); it != s_.kets.end()) return it->second;
        if (auto it = s_.operators.find(e->name); it != s_.operators.end()) {
          return it->second;
        }
        error("unknown symbol '" + e->name + "'", e->pos);
      }
      case Expr::Kind::Neg:
        return negate(eval(e->lhs), e->pos);
      case Expr::Kind::Add:
      case Expr::Kind::Sub:
        return add_sub(e);
      case Expr::Kind::Mul:
        return multiply(eval(e->lhs), eval(e->rhs), e->pos);
      case Expr::Kind::Div:
        return divide(eval(e->lhs), eval(e->rhs), e->pos);
      case Expr::Kind::Tensor:
        return tensor(eval(e->lhs), eval(e->rhs), e->pos);
    }
    error("unhandled expression", e->pos);
  }

  Value rows_matrix(const ExprPtr& e) const {
    const std::size_t n_rows = e->items.size();
    const std::size_t n_cols = e->items.front()->items.size();
    ComplexMatrix m(n_rows, n_cols);
    for (std::size_t r = 0; r < n_rows; ++r) {
      const auto& row = e->items[r];
      if (row->items.size() != n_cols) {
        error("rows have unequal lengths", row->pos);
      }
      for (std::size_t c = 0; c < n_cols; ++c) {
        const Value v = eval(row->items[c]);
        const auto* scalar = std::get_if<Complex>(&v);
        if (!scalar) error("matrix entries must be scalars", row->items[c]->pos);
        m(r, c) = *scalar;
      }
    }
    return m;
  }

  Value bracket(const ExprPtr& e) const {
    std::vector<Value> values;
    values.reserve(e->items.size());
    for (const auto& item : e->items) values.push_back(eval(item));

    // A single ket inside brackets is the projector [psi] = |psi><psi|.
    if (values.size() == 1) {
      if (const auto* k = std::get_if<Ket>(&values.front())) {
        return projector_onto(*k);
      }
    }
    Ket v(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto* scalar = std::get_if<Complex>(&values[i]);
      if (!scalar) error("amplitude lists hold scalars only", e->items[i]->pos);
      v(i) = *scalar;
    }
    return v;
  }

  Value negate(Value v, SourcePos pos) const {
    (void)pos;
    if (auto* c = std::get_if<Complex>(&v)) return -*c;
    if (auto* k = std::get_if<Ket>(&v)) return Ket(-*k);
    return ComplexMatrix(-std::get<ComplexMatrix>(v));
  }

  Value add_sub(const ExprPtr& e) const {
    Value a = eval(e->lhs);
    Value b = eval(e->rhs);
    const double sign = e->kind == Expr::Kind::Add ? 1.0 : -1.0;
    if (auto* ca = std::get_if<Complex>(&a)) {
      if (auto* cb = std::get_if<Complex>(&b)) return *ca + sign * *cb;
    }
    if (auto* ka = std::get_if<Ket>(&a)) {
      if (auto* kb = std::get_if<Ket>(&b)) {
        if (ka->size() != kb->size()) error("ket dimensions differ", e->pos);
        return Ket(*ka + sign * *kb);
      }
    }
    if (auto* ma = std::get_if<ComplexMatrix>(&a)) {
      if (auto* mb = std::get_if<ComplexMatrix>(&b)) {
        if (ma->rows() != mb->rows() || ma->cols() != mb->cols()) {
          error("operator shapes differ", e->pos);
        }
        return ComplexMatrix(*ma + sign * *mb);
      }
    }
    error(std::string("cannot combine ") + value_kind(a) + " and " + value_kind(b),
          e->pos);
  }

  Value multiply(Value a, Value b, SourcePos pos) const {
    if (auto* ca = std::get_if<Complex>(&a)) {
      if (auto* cb = std::get_if<Complex>(&b)) return *ca * *cb;
      if (auto* kb = std::get_if<Ket>(&b)) return Ket(*ca * *kb);
      return ComplexMatrix(*ca * std::get<ComplexMatrix>(b));
    }
    if (auto* cb = std::get_if<Complex>(&b)) {
      if (auto* ka = std::get_if<Ket>(&a)) return Ket(*cb * *ka);
      return ComplexMatrix(*cb * std::get<ComplexMatrix>(a));
    }
    if (auto* ma = std::get_if<ComplexMatrix>(&a)) {
      if (auto* mb = std::get_if<ComplexMatrix>(&b)) {
        if (ma->cols() != mb->rows()) error("operator product shapes differ", pos);
        return ComplexMatrix(*ma * *mb);
      }
      if (auto* kb = std::get_if<Ket>(&b)) {
        if (ma->cols() != kb->size()) error("operator does not fit the ket", pos);
        return Ket(*ma * *kb);
      }
    }
    error("invalid product", pos);
  }

  Value divide(Value a, Value b, SourcePos pos) const {
    const auto* cb = std::get_if<Complex>(&b);
    if (!cb) error("division needs a scalar divisor", pos);
    if (std::abs(*cb) == 0.0) error("division by zero", pos);
    if (auto* ca = std::get_if<Complex>(&a)) return *ca / *cb;
    if (auto* ka = std::get_if<Ket>(&a)) return Ket(*ka / *cb);
    return ComplexMatrix(std::get<ComplexMatrix>(a) / *cb);
  }

  Value tensor(Value a, Value b, SourcePos pos) const {
    if (auto* ka = std::get_if<Ket>(&a)) {
      if (auto* kb = std::get_if<Ket>(&b)) return tensor_product(*ka, *kb);
    }
    if (auto* ma = std::get_if<ComplexMatrix>(&a)) {
      if (auto* mb = std::get_if<ComplexMatrix>(&b)) return tensor_product(*ma, *mb);
    }
    error("tensor product needs two kets or two operators", pos);
  }

  Ket eval_ket(const ExprPtr& e) const {
    Value v = eval(e);
    if (auto* k = std::get_if<Ket>(&v)) return std::move(*k);
    error(std::string("expected a ket, got a ") + value_kind(v), e->pos);
  }

  ComplexMatrix eval_operator(const ExprPtr& e) const {
    Value v = eval(e);
    if (auto* m = std::get_if<ComplexMatrix>(&v)) return std::move(*m);
    error(std::string("expected an operator, got a ") + value_kind(v), e->pos);
  }

  // ---- declarations ----

  void declare(const SpaceDecl& d) {
    check_unused(d.name, d.pos);
    if (d.dim < 1) error("space dimension must be at least 1", d.pos);
    s_.spaces.emplace(d.name, d.dim);
  }

  void declare(const KetDecl& d) {
    check_unused(d.name, d.pos);
    const int dim = space_dim(d.space, d.pos);
    Ket v = eval_ket(d.expr);
    if (static_cast<int>(v.size()) != dim) {
      error("ket '" + d.name + "' has dimension " + std::to_string(v.size()) +
                " but space " + d.space + " has dimension " + std::to_string(dim),
            d.pos);
    }
    if (!all_finite(v)) error("ket '" + d.name + "' has non-finite amplitudes", d.pos);
    s_.kets.emplace(d.name, std::move(v));
  }

  void declare(const OperatorDecl& d) {
    check_unused(d.name, d.pos);
    const int dim = space_dim(d.space, d.pos);
    ComplexMatrix m = eval_operator(d.expr);
    if (m.rows() != dim || m.cols() != dim) {
      error("operator '" + d.name + "' does not act on space " + d.space, d.pos);
    }
    if (!all_finite(m)) error("operator '" + d.name + "' has non-finite entries", d.pos);
    s_.operators.emplace(d.name, std::move(m));
  }

  void declare(const IsometryDecl& d) {
    check_unused(d.name, d.pos);
    const int from = space_dim(d.from, d.pos);
    const int to = space_dim(d.to, d.pos);
    ComplexMatrix m = eval_operator(d.expr);
    if (m.rows() != to || m.cols() != from) {
      error("isometry '" + d.name + "' must be " + std::to_string(to) + "x" +
                std::to_string(from),
            d.pos);
    }
    try {
      make_isometry(m);
    } catch (const Error& err) {
      error("isometry '" + d.name + "': " + err.what(), d.pos);
    }
    s_.operators.emplace(d.name, std::move(m));
    isometries_.insert(d.name);
  }

  void declare(const ModelDecl& d) {
    check_unused(d.name, d.pos);
    auto it = s_.operators.find(d.isometry);
    if (it == s_.operators.end() || !isometries_.count(d.isometry)) {
      error("unknown isometry '" + d.isometry + "'", d.pos);
    }
    std::vector<ComplexMatrix> projectors;
    std::vector<std::string> labels;
    for (const auto& entry : d.pointers) {
      labels.push_back(entry.label);
      projectors.push_back(eval_operator(entry.expr));
    }
    try {
      s_.models.emplace(d.name, make_measurement_model(make_isometry(it->second),
                                                       make_pdi(projectors, labels)));
    } catch (const Error& err) {
      error("model '" + d.name + "': " + err.what(), d.pos);
    }
  }

  Event make_event(const SlotEntry& entry) const {
    try {
      return Event::make(eval_operator(entry.expr), entry.tags);
    } catch (const ScenarioError&) {
      throw;
    } catch (const Error& err) {
      error(std::string("history event: ") + err.what(), entry.pos);
    }
  }

  void declare(const FamilyDecl& d) {
    check_unused(d.name, d.pos);
    const Ket initial = ket(d.initial_ket, d.pos);

    const int n_slots = static_cast<int>(d.slots.size());
    int linked_slot = -1;
    for (int i = 0; i < n_slots; ++i) {
      if (!d.slots[i].linked) continue;
      if (linked_slot >= 0) error("only one linked slot is supported", d.slots[i].pos);
      if (i != n_slots - 2) {
        error("a linked slot must sit directly before the final slot", d.slots[i].pos);
      }
      linked_slot = i;
    }
    if (n_slots < 1) error("family needs at least one slot", d.pos);
    if (d.slots.back().linked) {
      error("the final slot cannot be linked", d.slots.back().pos);
    }

    // Expand the outcome product set into explicit histories.
    std::vector<History> histories;
    std::vector<const SlotEntry*> picks(n_slots, nullptr);
    auto expand = [&](auto&& self, int slot) -> void {
      if (slot == n_slots) {
        History h;
        for (const auto* pick : picks) h.events.push_back(make_event(*pick));
        histories.push_back(std::move(h));
        return;
      }
      if (slot == linked_slot) {
        // Defer: filled once the final slot's outcome is known.
        self(self, slot + 1);
        return;
      }
      for (const auto& entry : d.slots[slot].entries) {
        picks[slot] = &entry;
        if (slot == n_slots - 1 && linked_slot >= 0) {
          const std::string& outcome = entry.tags.front();
          const auto& groups = d.slots[linked_slot].linked_groups;
          const std::vector<SlotEntry>* match = nullptr;
          for (const auto& [tag, entries] : groups) {
            if (tag == outcome) match = &entries;
          }
          if (!match) {
            error("linked slot has no decomposition for outcome '" + outcome + "'",
                  d.slots[linked_slot].pos);
          }
          for (const auto& linked_entry : *match) {
            picks[linked_slot] = &linked_entry;
            self(self, slot + 1);
          }
        } else {
          self(self, slot + 1);
        }
      }
    };
    expand(expand, 0);

    std::vector<ComplexMatrix> propagators;
    if (d.propagators.empty()) {
      for (int i = 0; i < n_slots; ++i) {
        propagators.push_back(identity(static_cast<int>(initial.size())));
      }
    } else {
      if (static_cast<int>(d.propagators.size()) != n_slots) {
        error("family needs one propagator per slot", d.pos);
      }
      for (const auto& p : d.propagators) propagators.push_back(eval_operator(p));
    }

    try {
      s_.families.emplace(
          d.name, make_history_family(initial, make_time_grid(std::move(propagators)),
                                      std::move(histories)));
    } catch (const Error& err) {
      error("family '" + d.name + "': " + err.what(), d.pos);
    }
  }

  void declare(const QueryDecl& d) {
    switch (d.kind) {
      case QueryDecl::Kind::Consistency:
      case QueryDecl::Kind::Probabilities:
      case QueryDecl::Kind::Conditional: {
        auto it = s_.families.find(d.target);
        if (it == s_.families.end()) error("unknown family '" + d.target + "'", d.pos);
        const int slots = it->second.grid.steps();
        for (const auto* atoms : {&d.given, &d.want}) {
          for (const auto& atom : *atoms) {
            if (atom.slot < 1 || atom.slot > slots) {
              error("pattern slot " + std::to_string(atom.slot) + " is out of range",
                    atom.pos);
            }
          }
        }
        break;
      }
      case QueryDecl::Kind::Povm: {
        if (!s_.models.count(d.target)) error("unknown model '" + d.target + "'", d.pos);
        break;
      }
      case QueryDecl::Kind::Inference: {
        auto it = s_.models.find(d.target);
        if (it == s_.models.end()) error("unknown model '" + d.target + "'", d.pos);
        const Ket& psi = ket(d.initial_ket, d.pos);
        if (static_cast<int>(psi.size()) != it->second.system_dim) {
          error("initial ket does not live on the model's system space", d.pos);
        }
        break;
      }
      case QueryDecl::Kind::Noncontextuality: {
        if (!s_.models.count(d.target)) error("unknown model '" + d.target + "'", d.pos);
        if (!s_.models.count(d.target_b)) {
          error("unknown model '" + d.target_b + "'", d.pos);
        }
        if (!s_.operators.count(d.observable)) {
          error("unknown operator '" + d.observable + "'", d.pos);
        }
        for (const auto& probe : d.probes) ket(probe, d.pos);
        break;
      }
    }
    s_.queries.push_back(Query{d});
  }

  Scenario& s_;
  std::set<std::string> isometries_;
};

Pattern to_pattern(const std::vector<PatternAtom>& atoms) {
  Pattern p;
  for (const auto& atom : atoms) p.constraints.emplace_back(atom.slot, atom.tag);
  return p;
}

std::string pattern_text(const std::vector<PatternAtom>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0) out += " & ";
    out += atoms[i].tag + "@" + std::to_string(atoms[i].slot);
  }
  return out;
}

QueryPayload execute(const Scenario& s, const QueryDecl& d) {
  switch (d.kind) {
    case QueryDecl::Kind::Consistency:
      return check_consistency(s.families.at(d.target), s.consistency_tol);
    case QueryDecl::Kind::Probabilities:
      return assign_probabilities(s.families.at(d.target), s.consistency_tol);
    case QueryDecl::Kind::Conditional: {
      const auto table = assign_probabilities(s.families.at(d.target), s.consistency_tol);
      ConditionalResult result;
      result.given = pattern_text(d.given);
      result.target = pattern_text(d.want);
      result.probability =
          conditional_probability(table, to_pattern(d.given), to_pattern(d.want));
      return result;
    }
    case QueryDecl::Kind::Povm:
      return derive_povm(s.models.at(d.target));
    case QueryDecl::Kind::Inference: {
      InferenceSummary summary;
      summary.model = d.target;
      summary.initial = d.initial_ket;
      const InferenceRun run =
          inference_family(s.models.at(d.target), s.kets.at(d.initial_ket));
      summary.verdict = run.consistency.verdict;
      summary.outcomes = run.outcomes;
      return summary;
    }
    case QueryDecl::Kind::Noncontextuality: {
      NoncontextualitySummary summary;
      summary.first = d.target;
      summary.second = d.target_b;
      summary.probe_names = d.probes;
      CoarseGraining grouping;
      grouping.groups = d.groups;
      std::vector<Ket> probes;
      for (const auto& name : d.probes) probes.push_back(s.kets.at(name));
      summary.report = noncontextuality_check(
          s.models.at(d.target), s.models.at(d.target_b),
          observable_from_matrix(s.operators.at(d.observable)), grouping, probes);
      return summary;
    }
  }
  return std::monostate{};
}

}  // namespace

const QueryResult* ResultSet::find(const std::string& id) const {
  for (const auto& r : results) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::string to_string(QueryDecl::Kind kind) {
  switch (kind) {
    case QueryDecl::Kind::Consistency: return "consistency";
    case QueryDecl::Kind::Probabilities: return "probabilities";
    case QueryDecl::Kind::Conditional: return "conditional";
    case QueryDecl::Kind::Povm: return "povm";
    case QueryDecl::Kind::Inference: return "inference";
    case QueryDecl::Kind::Noncontextuality: return "noncontextuality";
  }
  return "unknown";
}

Scenario elaborate(const ScenarioAst& ast, const std::string& origin) {
  Scenario scenario;
  scenario.origin = origin;
  scenario.ast = ast;
  Elaborator elaborator(scenario);
  elaborator.run(ast);
  return scenario;
}

Scenario parse_scenario(const ScenarioSource& src) {
  return elaborate(parse_ast(src), src.origin);
}

ResultSet run_scenario(const Scenario& scenario) {
  ResultSet results;
  results.origin = scenario.origin;
  for (const auto& query : scenario.queries) {
    QueryResult result;
    result.id = query.decl.id;
    result.kind = to_string(query.decl.kind);
    result.target = query.decl.target;
    const auto start = std::chrono::steady_clock::now();
    try {
      result.payload = execute(scenario, query.decl);
    } catch (const std::exception& err) {
      result.error = err.what();
    }
    const auto end = std::chrono::steady_clock::now();
    result.elapsed_ms = std::chrono::duration<double, std::milli>(end - start).count();
    results.results.push_back(std::move(result));
  }
  return results;
}

}  // namespace histq::scenario
