#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include "histq/scenario/parser.hpp"

namespace histq::scenario {

namespace {

std::string format_number(double value) {
  // Shortest representation that parses back to the same double.
  char buf[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

// 0: sums, 1: products/tensor, 2: unary and primaries.
int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 0;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
    case Expr::Kind::Tensor:
      return 1;
    default:
      return 2;
  }
}

void print_expr(std::ostringstream& out, const ExprPtr& e, int context);

void print_binary(std::ostringstream& out, const ExprPtr& e, const char* op) {
  const int level = precedence(*e);
  print_expr(out, e->lhs, level);
  out << ' ' << op << ' ';
  // Right operand at the same level needs parentheses to survive
  // left-associative reparsing.
  print_expr(out, e->rhs, level + 1);
}

void print_expr(std::ostringstream& out, const ExprPtr& e, int context) {
  const bool parens = precedence(*e) < context;
  if (parens) out << '(';
  switch (e->kind) {
    case Expr::Kind::Number:
      out << format_number(e->number);
      break;
    case Expr::Kind::Pi:
      out << "pi";
      break;
    case Expr::Kind::ImagUnit:
      out << "i";
      break;
    case Expr::Kind::Omega:
      out << "omega";
      break;
    case Expr::Kind::Sqrt:
      out << "sqrt(";
      print_expr(out, e->lhs, 0);
      out << ')';
      break;
    case Expr::Kind::Dag:
      out << "dag(";
      print_expr(out, e->lhs, 0);
      out << ')';
      break;
    case Expr::Kind::Identity:
      out << "I(" << e->name << ')';
      break;
    case Expr::Kind::Rows: {
      out << "rows [";
      for (std::size_t i = 0; i < e->items.size(); ++i) {
        if (i > 0) out << ", ";
        print_expr(out, e->items[i], 0);
      }
      out << ']';
      break;
    }
    case Expr::Kind::Bracket: {
      out << '[';
      for (std::size_t i = 0; i < e->items.size(); ++i) {
        if (i > 0) out << ", ";
        print_expr(out, e->items[i], 0);
      }
      out << ']';
      break;
    }
    case Expr::Kind::Dyad:
      out << '|' << e->name << "><" << e->name_b << '|';
      break;
    case Expr::Kind::Ref:
      out << e->name;
      break;
    case Expr::Kind::Neg:
      out << '-';
      if (e->lhs->kind == Expr::Kind::Neg) {
        out << '(';
        print_expr(out, e->lhs, 0);
        out << ')';
      } else {
        print_expr(out, e->lhs, 2);
      }
      break;
    case Expr::Kind::Add:
      print_binary(out, e, "+");
      break;
    case Expr::Kind::Sub:
      print_binary(out, e, "-");
      break;
    case Expr::Kind::Mul:
      print_binary(out, e, "*");
      break;
    case Expr::Kind::Div:
      print_binary(out, e, "/");
      break;
    case Expr::Kind::Tensor:
      print_binary(out, e, "(x)");
      break;
  }
  if (parens) out << ')';
}

std::string expr_text(const ExprPtr& e) {
  std::ostringstream out;
  print_expr(out, e, 0);
  return out.str();
}

void print_slot_entry(std::ostringstream& out, const SlotEntry& entry) {
  // Entries whose tag is derivable from the expression print bare.
  const bool derivable =
      entry.tags.size() == 1 &&
      ((entry.expr->kind == Expr::Kind::Ref && entry.expr->name == entry.tags[0]) ||
       (entry.expr->kind == Expr::Kind::Bracket && entry.expr->items.size() == 1 &&
        entry.expr->items.front()->kind == Expr::Kind::Ref &&
        entry.expr->items.front()->name == entry.tags[0]));
  if (!derivable) {
    for (std::size_t i = 0; i < entry.tags.size(); ++i) {
      if (i > 0) out << '&';
      out << entry.tags[i];
    }
    out << " = ";
  }
  print_expr(out, entry.expr, 0);
}

void print_slot_entries(std::ostringstream& out, const std::vector<SlotEntry>& entries) {
  out << "{ ";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0) out << ", ";
    print_slot_entry(out, entries[i]);
  }
  out << " }";
}

struct StatementPrinter {
  std::ostringstream& out;

  void operator()(const SpaceDecl& d) const {
    out << "space " << d.name << " dim " << d.dim;
  }
  void operator()(const KetDecl& d) const {
    out << "ket " << d.name << " in " << d.space << " = " << expr_text(d.expr);
  }
  void operator()(const OperatorDecl& d) const {
    out << "operator " << d.name << " on " << d.space << " = " << expr_text(d.expr);
  }
  void operator()(const IsometryDecl& d) const {
    out << "isometry " << d.name << " from " << d.from << " to " << d.to << " = "
        << expr_text(d.expr);
  }
  void operator()(const ModelDecl& d) const {
    out << "model " << d.name << " = measure with " << d.isometry << " pointers { ";
    for (std::size_t i = 0; i < d.pointers.size(); ++i) {
      if (i > 0) out << ", ";
      out << d.pointers[i].label << " = " << expr_text(d.pointers[i].expr);
    }
    out << " }";
  }
  void operator()(const FamilyDecl& d) const {
    out << "family " << d.name << " = [" << d.initial_ket << "]";
    for (const auto& slot : d.slots) {
      out << " (.) ";
      if (slot.linked) {
        out << "linked { ";
        for (std::size_t g = 0; g < slot.linked_groups.size(); ++g) {
          if (g > 0) out << "; ";
          out << slot.linked_groups[g].first << " : ";
          print_slot_entries(out, slot.linked_groups[g].second);
        }
        out << " }";
      } else {
        print_slot_entries(out, slot.entries);
      }
    }
    if (!d.propagators.empty()) {
      out << " propagators (";
      for (std::size_t i = 0; i < d.propagators.size(); ++i) {
        if (i > 0) out << ", ";
        print_expr(out, d.propagators[i], 0);
      }
      out << ')';
    }
  }
  void operator()(const QueryDecl& d) const {
    out << "query ";
    switch (d.kind) {
      case QueryDecl::Kind::Consistency:
        out << "consistency " << d.target;
        break;
      case QueryDecl::Kind::Probabilities:
        out << "probabilities " << d.target;
        break;
      case QueryDecl::Kind::Conditional:
        out << "conditional " << d.target << " given ";
        print_pattern(d.given);
        out << " target ";
        print_pattern(d.want);
        break;
      case QueryDecl::Kind::Povm:
        out << "povm " << d.target;
        break;
      case QueryDecl::Kind::Inference:
        out << "inference " << d.target << " initial " << d.initial_ket;
        break;
      case QueryDecl::Kind::Noncontextuality:
        out << "noncontextuality " << d.target << ' ' << d.target_b << " observable "
            << d.observable << " groups { ";
        for (std::size_t g = 0; g < d.groups.size(); ++g) {
          if (g > 0) out << ", ";
          out << d.groups[g].first << " = (";
          for (std::size_t m = 0; m < d.groups[g].second.size(); ++m) {
            if (m > 0) out << ", ";
            out << d.groups[g].second[m];
          }
          out << ')';
        }
        out << " } probes (";
        for (std::size_t p = 0; p < d.probes.size(); ++p) {
          if (p > 0) out << ", ";
          out << d.probes[p];
        }
        out << ')';
        break;
    }
  }

  void print_pattern(const std::vector<PatternAtom>& atoms) const {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (i > 0) out << " & ";
      out << atoms[i].tag << '@' << atoms[i].slot;
    }
  }
};

}  // namespace

std::string print_ast(const ScenarioAst& ast) {
  std::ostringstream out;
  for (const auto& statement : ast.statements) {
    std::visit(StatementPrinter{out}, statement);
    out << ";\n";
  }
  return out.str();
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  if (a->number != b->number) return false;
  if (a->name != b->name || a->name_b != b->name_b) return false;
  if (a->items.size() != b->items.size()) return false;
  for (std::size_t i = 0; i < a->items.size(); ++i) {
    if (!expr_equal(a->items[i], b->items[i])) return false;
  }
  return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
}

namespace {

bool entries_equal(const std::vector<SlotEntry>& a, const std::vector<SlotEntry>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].tags != b[i].tags || !expr_equal(a[i].expr, b[i].expr)) return false;
  }
  return true;
}

struct StatementsEqual {
  bool operator()(const SpaceDecl& a, const SpaceDecl& b) const {
    return a.name == b.name && a.dim == b.dim;
  }
  bool operator()(const KetDecl& a, const KetDecl& b) const {
    return a.name == b.name && a.space == b.space && expr_equal(a.expr, b.expr);
  }
  bool operator()(const OperatorDecl& a, const OperatorDecl& b) const {
    return a.name == b.name && a.space == b.space && expr_equal(a.expr, b.expr);
  }
  bool operator()(const IsometryDecl& a, const IsometryDecl& b) const {
    return a.name == b.name && a.from == b.from && a.to == b.to &&
           expr_equal(a.expr, b.expr);
  }
  bool operator()(const ModelDecl& a, const ModelDecl& b) const {
    if (a.name != b.name || a.isometry != b.isometry ||
        a.pointers.size() != b.pointers.size()) {
      return false;
    }
    for (std::size_t i = 0; i < a.pointers.size(); ++i) {
      if (a.pointers[i].label != b.pointers[i].label ||
          !expr_equal(a.pointers[i].expr, b.pointers[i].expr)) {
        return false;
      }
    }
    return true;
  }
  bool operator()(const FamilyDecl& a, const FamilyDecl& b) const {
    if (a.name != b.name || a.initial_ket != b.initial_ket ||
        a.slots.size() != b.slots.size() ||
        a.propagators.size() != b.propagators.size()) {
      return false;
    }
    for (std::size_t i = 0; i < a.slots.size(); ++i) {
      const auto& sa = a.slots[i];
      const auto& sb = b.slots[i];
      if (sa.linked != sb.linked) return false;
      if (sa.linked) {
        if (sa.linked_groups.size() != sb.linked_groups.size()) return false;
        for (std::size_t g = 0; g < sa.linked_groups.size(); ++g) {
          if (sa.linked_groups[g].first != sb.linked_groups[g].first ||
              !entries_equal(sa.linked_groups[g].second, sb.linked_groups[g].second)) {
            return false;
          }
        }
      } else if (!entries_equal(sa.entries, sb.entries)) {
        return false;
      }
    }
    for (std::size_t i = 0; i < a.propagators.size(); ++i) {
      if (!expr_equal(a.propagators[i], b.propagators[i])) return false;
    }
    return true;
  }
  bool operator()(const QueryDecl& a, const QueryDecl& b) const {
    auto atoms_equal = [](const std::vector<PatternAtom>& x,
                          const std::vector<PatternAtom>& y) {
      if (x.size() != y.size()) return false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].tag != y[i].tag || x[i].slot != y[i].slot) return false;
      }
      return true;
    };
    return a.kind == b.kind && a.id == b.id && a.target == b.target &&
           a.target_b == b.target_b && a.initial_ket == b.initial_ket &&
           a.observable == b.observable && atoms_equal(a.given, b.given) &&
           atoms_equal(a.want, b.want) && a.groups == b.groups && a.probes == b.probes;
  }

  template <typename A, typename B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool ast_equal(const ScenarioAst& a, const ScenarioAst& b) {
  if (a.statements.size() != b.statements.size()) return false;
  for (std::size_t i = 0; i < a.statements.size(); ++i) {
    if (!std::visit(StatementsEqual{}, a.statements[i], b.statements[i])) return false;
  }
  return true;
}

}  // namespace histq::scenario
