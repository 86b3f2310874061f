#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace histq::scenario {

struct SourcePos {
  int line = 1;
  int column = 1;
  std::size_t offset = 0;
};

/// Untyped expression tree. Whether a node denotes a scalar, a ket or an
/// operator is decided during elaboration, where dimension and type errors
/// get reported with source positions.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    Number,   // numeric literal
    Pi,
    ImagUnit, // i
    Omega,    // exp(2 pi i / 3)
    Sqrt,     // sqrt(lhs)
    Dag,      // dag(lhs)
    Identity, // I(space)
    Rows,     // rows [[..],[..]] matrix literal; items hold Bracket rows
    Bracket,  // [a, b, ...]: amplitude list, or projector when the single
              // element is a ket
    Dyad,     // |name><name_b|
    Ref,      // named ket / operator / isometry
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Tensor,
  };

  Kind kind{};
  double number = 0.0;
  std::string name;
  std::string name_b;
  std::vector<ExprPtr> items;
  ExprPtr lhs;
  ExprPtr rhs;
  SourcePos pos;
};

struct SpaceDecl {
  std::string name;
  int dim = 0;
  SourcePos pos;
};

struct KetDecl {
  std::string name;
  std::string space;
  ExprPtr expr;
  SourcePos pos;
};

struct OperatorDecl {
  std::string name;
  std::string space;
  ExprPtr expr;
  SourcePos pos;
};

struct IsometryDecl {
  std::string name;
  std::string from;
  std::string to;
  ExprPtr expr;
  SourcePos pos;
};

struct PointerEntry {
  std::string label;
  ExprPtr expr;
  SourcePos pos;
};

struct ModelDecl {
  std::string name;
  std::string isometry;
  std::vector<PointerEntry> pointers;
  SourcePos pos;
};

/// One alternative inside a history slot; tags name the outcome.
struct SlotEntry {
  std::vector<std::string> tags;
  ExprPtr expr;
  SourcePos pos;
};

/// Either a plain set of alternatives or, with `linked`, one set per final
/// outcome tag (pointer-linked decompositions).
struct FamilySlot {
  bool linked = false;
  std::vector<SlotEntry> entries;
  std::vector<std::pair<std::string, std::vector<SlotEntry>>> linked_groups;
  SourcePos pos;
};

struct FamilyDecl {
  std::string name;
  std::string initial_ket;
  std::vector<FamilySlot> slots;
  std::vector<ExprPtr> propagators;  // empty: identity dynamics
  SourcePos pos;
};

struct PatternAtom {
  std::string tag;
  int slot = 0;  // 1-based
  SourcePos pos;
};

struct QueryDecl {
  enum class Kind {
    Consistency,
    Probabilities,
    Conditional,
    Povm,
    Inference,
    Noncontextuality,
  };

  Kind kind{};
  std::string id;  // q1, q2, ... in declaration order
  std::string target;
  std::string target_b;                    // second model (noncontextuality)
  std::string initial_ket;                 // inference
  std::string observable;                  // noncontextuality
  std::vector<PatternAtom> given;          // conditional
  std::vector<PatternAtom> want;           // conditional
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  std::vector<std::string> probes;
  SourcePos pos;
};

using Statement = std::variant<SpaceDecl, KetDecl, OperatorDecl, IsometryDecl,
                               ModelDecl, FamilyDecl, QueryDecl>;

struct ScenarioAst {
  std::vector<Statement> statements;
};

/// Structural equality; source positions are ignored.
bool ast_equal(const ScenarioAst& a, const ScenarioAst& b);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

}  // namespace histq::scenario
