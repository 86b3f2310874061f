#include "histq/scenario/parser.hpp"

#include <cmath>

#include "lexer.hpp"

namespace histq::scenario {

namespace {

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ScenarioAst parse() {
    ScenarioAst ast;
    while (!at(TokenType::End)) {
      ast.statements.push_back(statement());
      expect(TokenType::Semicolon, "';'");
    }
    return ast;
  }

private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = index_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  bool at(TokenType type) const { return peek().type == type; }

  bool at_keyword(const char* word) const {
    return at(TokenType::Ident) && peek().text == word;
  }

  Token take() { return tokens_[index_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string what = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) what += (i + 1 == expected.size()) ? " or " : ", ";
      what += expected[i];
    }
    const std::string found = t.type == TokenType::End ? "end of input" : "'" + t.text + "'";
    what += ", found " + found + " at line " + std::to_string(t.pos.line) + ", column " +
            std::to_string(t.pos.column);
    throw ParseError(what, t.pos, std::move(expected), found);
  }

  Token expect(TokenType type, const char* what) {
    if (!at(type)) fail({what});
    return take();
  }

  Token expect_keyword(const char* word) {
    if (!at_keyword(word)) fail({std::string("'") + word + "'"});
    return take();
  }

  std::string name(const char* what = "identifier") {
    if (!at(TokenType::Ident)) fail({what});
    return take().text;
  }

  int integer(const char* what = "integer") {
    if (!at(TokenType::Number)) fail({what});
    const Token t = take();
    const int value = static_cast<int>(t.number);
    if (static_cast<double>(value) != t.number) {
      throw ParseError("expected an integer, found " + t.text, t.pos, {what}, t.text);
    }
    return value;
  }

  bool at_tensor() const {
    return peek().type == TokenType::LParen && peek(1).type == TokenType::Ident &&
           peek(1).text == "x" && peek(2).type == TokenType::RParen;
  }

  bool at_odot() const {
    return peek().type == TokenType::LParen && peek(1).type == TokenType::Dot &&
           peek(2).type == TokenType::RParen;
  }

  void take_trigram() {
    take();
    take();
    take();
  }

  // ---- expressions ----

  ExprPtr make(Expr e) { return std::make_shared<Expr>(std::move(e)); }

  ExprPtr expression() {
    ExprPtr lhs = term();
    while (at(TokenType::Plus) || at(TokenType::Minus)) {
      const Token op = take();
      Expr node;
      node.kind = op.type == TokenType::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
      node.pos = op.pos;
      node.lhs = lhs;
      node.rhs = term();
      lhs = make(std::move(node));
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    while (true) {
      if (at(TokenType::Star) || at(TokenType::Slash)) {
        const Token op = take();
        Expr node;
        node.kind = op.type == TokenType::Star ? Expr::Kind::Mul : Expr::Kind::Div;
        node.pos = op.pos;
        node.lhs = lhs;
        node.rhs = factor();
        lhs = make(std::move(node));
      } else if (at_tensor()) {
        Expr node;
        node.kind = Expr::Kind::Tensor;
        node.pos = peek().pos;
        take_trigram();
        node.lhs = lhs;
        node.rhs = factor();
        lhs = make(std::move(node));
      } else {
        return lhs;
      }
    }
  }

  ExprPtr factor() {
    Expr node;
    node.pos = peek().pos;

    if (at(TokenType::Number)) {
      node.kind = Expr::Kind::Number;
      node.number = take().number;
      return make(std::move(node));
    }
    if (at(TokenType::Minus)) {
      take();
      node.kind = Expr::Kind::Neg;
      node.lhs = factor();
      return make(std::move(node));
    }
    if (at(TokenType::Pipe)) {
      take();
      node.kind = Expr::Kind::Dyad;
      node.name = name("ket name");
      expect(TokenType::Greater, "'>'");
      expect(TokenType::Less, "'<'");
      node.name_b = name("ket name");
      expect(TokenType::Pipe, "'|'");
      return make(std::move(node));
    }
    if (at(TokenType::LBracket)) {
      take();
      node.kind = Expr::Kind::Bracket;
      node.items.push_back(expression());
      while (at(TokenType::Comma)) {
        take();
        node.items.push_back(expression());
      }
      expect(TokenType::RBracket, "']'");
      return make(std::move(node));
    }
    if (at(TokenType::LParen)) {
      take();
      ExprPtr inner = expression();
      expect(TokenType::RParen, "')'");
      return inner;
    }
    if (at(TokenType::Ident)) {
      const std::string word = peek().text;
      if (word == "pi") {
        take();
        node.kind = Expr::Kind::Pi;
        return make(std::move(node));
      }
      if (word == "i") {
        take();
        node.kind = Expr::Kind::ImagUnit;
        return make(std::move(node));
      }
      if (word == "omega") {
        take();
        node.kind = Expr::Kind::Omega;
        return make(std::move(node));
      }
      if (word == "sqrt" || word == "dag") {
        take();
        node.kind = word == "sqrt" ? Expr::Kind::Sqrt : Expr::Kind::Dag;
        expect(TokenType::LParen, "'('");
        node.lhs = expression();
        expect(TokenType::RParen, "')'");
        return make(std::move(node));
      }
      if (word == "I") {
        take();
        node.kind = Expr::Kind::Identity;
        expect(TokenType::LParen, "'('");
        node.name = name("space name");
        expect(TokenType::RParen, "')'");
        return make(std::move(node));
      }
      if (word == "rows") {
        take();
        node.kind = Expr::Kind::Rows;
        expect(TokenType::LBracket, "'['");
        node.items.push_back(row());
        while (at(TokenType::Comma)) {
          take();
          node.items.push_back(row());
        }
        expect(TokenType::RBracket, "']'");
        return make(std::move(node));
      }
      node.kind = Expr::Kind::Ref;
      node.name = take().text;
      return make(std::move(node));
    }
    fail({"expression"});
  }

  ExprPtr row() {
    Expr node;
    node.pos = peek().pos;
    node.kind = Expr::Kind::Bracket;
    expect(TokenType::LBracket, "'['");
    node.items.push_back(expression());
    while (at(TokenType::Comma)) {
      take();
      node.items.push_back(expression());
    }
    expect(TokenType::RBracket, "']'");
    return make(std::move(node));
  }

  // ---- statements ----

  Statement statement() {
    if (at_keyword("space")) return space_decl();
    if (at_keyword("ket")) return ket_decl();
    if (at_keyword("operator")) return operator_decl();
    if (at_keyword("isometry")) return isometry_decl();
    if (at_keyword("model")) return model_decl();
    if (at_keyword("family")) return family_decl();
    if (at_keyword("query")) return query_decl();
    fail({"'space'", "'ket'", "'operator'", "'isometry'", "'model'", "'family'",
          "'query'"});
  }

  SpaceDecl space_decl() {
    SpaceDecl decl;
    decl.pos = take().pos;  // space
    decl.name = name("space name");
    expect_keyword("dim");
    decl.dim = integer("dimension");
    return decl;
  }

  KetDecl ket_decl() {
    KetDecl decl;
    decl.pos = take().pos;  // ket
    decl.name = name("ket name");
    expect_keyword("in");
    decl.space = name("space name");
    expect(TokenType::Equals, "'='");
    decl.expr = expression();
    return decl;
  }

  OperatorDecl operator_decl() {
    OperatorDecl decl;
    decl.pos = take().pos;  // operator
    decl.name = name("operator name");
    expect_keyword("on");
    decl.space = name("space name");
    expect(TokenType::Equals, "'='");
    decl.expr = expression();
    return decl;
  }

  IsometryDecl isometry_decl() {
    IsometryDecl decl;
    decl.pos = take().pos;  // isometry
    decl.name = name("isometry name");
    expect_keyword("from");
    decl.from = name("space name");
    expect_keyword("to");
    decl.to = name("space name");
    expect(TokenType::Equals, "'='");
    decl.expr = expression();
    return decl;
  }

  ModelDecl model_decl() {
    ModelDecl decl;
    decl.pos = take().pos;  // model
    decl.name = name("model name");
    expect(TokenType::Equals, "'='");
    expect_keyword("measure");
    expect_keyword("with");
    decl.isometry = name("isometry name");
    expect_keyword("pointers");
    expect(TokenType::LBrace, "'{'");
    decl.pointers.push_back(pointer_entry());
    while (at(TokenType::Comma)) {
      take();
      decl.pointers.push_back(pointer_entry());
    }
    expect(TokenType::RBrace, "'}'");
    return decl;
  }

  PointerEntry pointer_entry() {
    PointerEntry entry;
    entry.pos = peek().pos;
    entry.label = name("pointer label");
    expect(TokenType::Equals, "'='");
    entry.expr = expression();
    return entry;
  }

  std::vector<std::string> tag_list() {
    std::vector<std::string> tags;
    tags.push_back(name("tag"));
    while (at(TokenType::Ampersand)) {
      take();
      tags.push_back(name("tag"));
    }
    return tags;
  }

  SlotEntry slot_entry() {
    SlotEntry entry;
    entry.pos = peek().pos;
    // Explicit tags when an identifier list is followed by '='.
    if (at(TokenType::Ident) &&
        (peek(1).type == TokenType::Equals || peek(1).type == TokenType::Ampersand)) {
      entry.tags = tag_list();
      expect(TokenType::Equals, "'='");
      entry.expr = expression();
      return entry;
    }
    entry.expr = expression();
    // Derive the tag from a bare reference or a [ket] projector.
    if (entry.expr->kind == Expr::Kind::Ref) {
      entry.tags = {entry.expr->name};
    } else if (entry.expr->kind == Expr::Kind::Bracket && entry.expr->items.size() == 1 &&
               entry.expr->items.front()->kind == Expr::Kind::Ref) {
      entry.tags = {entry.expr->items.front()->name};
    } else {
      throw ParseError("history entry needs a tag (write 'tag = expression')",
                       entry.pos, {"tag"}, "expression");
    }
    return entry;
  }

  std::vector<SlotEntry> slot_entries() {
    std::vector<SlotEntry> entries;
    expect(TokenType::LBrace, "'{'");
    entries.push_back(slot_entry());
    while (at(TokenType::Comma)) {
      take();
      entries.push_back(slot_entry());
    }
    expect(TokenType::RBrace, "'}'");
    return entries;
  }

  FamilySlot family_slot() {
    FamilySlot slot;
    slot.pos = peek().pos;
    if (at_keyword("linked")) {
      take();
      slot.linked = true;
      expect(TokenType::LBrace, "'{'");
      while (true) {
        std::string outcome = name("final outcome tag");
        expect(TokenType::Colon, "':'");
        slot.linked_groups.emplace_back(std::move(outcome), slot_entries());
        if (at(TokenType::Semicolon)) {
          take();
          continue;
        }
        break;
      }
      expect(TokenType::RBrace, "'}'");
      return slot;
    }
    slot.entries = slot_entries();
    return slot;
  }

  FamilyDecl family_decl() {
    FamilyDecl decl;
    decl.pos = take().pos;  // family
    decl.name = name("family name");
    expect(TokenType::Equals, "'='");
    expect(TokenType::LBracket, "'['");
    decl.initial_ket = name("ket name");
    expect(TokenType::RBracket, "']'");
    while (at_odot()) {
      take_trigram();
      decl.slots.push_back(family_slot());
    }
    if (decl.slots.empty()) fail({"'(.)'"});
    if (at_keyword("propagators")) {
      take();
      expect(TokenType::LParen, "'('");
      decl.propagators.push_back(expression());
      while (at(TokenType::Comma)) {
        take();
        decl.propagators.push_back(expression());
      }
      expect(TokenType::RParen, "')'");
    }
    return decl;
  }

  PatternAtom pattern_atom() {
    PatternAtom atom;
    atom.pos = peek().pos;
    atom.tag = name("tag");
    expect(TokenType::At, "'@'");
    atom.slot = integer("slot index");
    return atom;
  }

  std::vector<PatternAtom> pattern() {
    std::vector<PatternAtom> atoms;
    atoms.push_back(pattern_atom());
    while (at(TokenType::Ampersand)) {
      take();
      atoms.push_back(pattern_atom());
    }
    return atoms;
  }

  QueryDecl query_decl() {
    QueryDecl decl;
    decl.pos = take().pos;  // query
    if (at_keyword("consistency")) {
      take();
      decl.kind = QueryDecl::Kind::Consistency;
      decl.target = name("family name");
    } else if (at_keyword("probabilities")) {
      take();
      decl.kind = QueryDecl::Kind::Probabilities;
      decl.target = name("family name");
    } else if (at_keyword("conditional")) {
      take();
      decl.kind = QueryDecl::Kind::Conditional;
      decl.target = name("family name");
      expect_keyword("given");
      decl.given = pattern();
      expect_keyword("target");
      decl.want = pattern();
    } else if (at_keyword("povm")) {
      take();
      decl.kind = QueryDecl::Kind::Povm;
      decl.target = name("model name");
    } else if (at_keyword("inference")) {
      take();
      decl.kind = QueryDecl::Kind::Inference;
      decl.target = name("model name");
      expect_keyword("initial");
      decl.initial_ket = name("ket name");
    } else if (at_keyword("noncontextuality")) {
      take();
      decl.kind = QueryDecl::Kind::Noncontextuality;
      decl.target = name("model name");
      decl.target_b = name("model name");
      expect_keyword("observable");
      decl.observable = name("operator name");
      expect_keyword("groups");
      expect(TokenType::LBrace, "'{'");
      while (true) {
        std::string group = name("group label");
        expect(TokenType::Equals, "'='");
        expect(TokenType::LParen, "'('");
        std::vector<std::string> members;
        members.push_back(name("pointer label"));
        while (at(TokenType::Comma)) {
          take();
          members.push_back(name("pointer label"));
        }
        expect(TokenType::RParen, "')'");
        decl.groups.emplace_back(std::move(group), std::move(members));
        if (at(TokenType::Comma)) {
          take();
          continue;
        }
        break;
      }
      expect(TokenType::RBrace, "'}'");
      expect_keyword("probes");
      expect(TokenType::LParen, "'('");
      decl.probes.push_back(name("ket name"));
      while (at(TokenType::Comma)) {
        take();
        decl.probes.push_back(name("ket name"));
      }
      expect(TokenType::RParen, "')'");
    } else {
      fail({"'consistency'", "'probabilities'", "'conditional'", "'povm'",
            "'inference'", "'noncontextuality'"});
    }
    return decl;
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

}  // namespace

ScenarioAst parse_ast(const ScenarioSource& src) {
  Parser parser(lex(src));
  ScenarioAst ast = parser.parse();
  int counter = 0;
  for (auto& statement : ast.statements) {
    if (auto* query = std::get_if<QueryDecl>(&statement)) {
      query->id = "q" + std::to_string(++counter);
    }
  }
  return ast;
}

}  // namespace histq::scenario
