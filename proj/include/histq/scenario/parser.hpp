#pragma once

#include <string>
#include <vector>

#include "histq/errors.hpp"
#include "histq/scenario/ast.hpp"

namespace histq::scenario {

struct ScenarioSource {
  std::string text;
  std::string origin = "<inline>";
};

/// Error with a position inside the scenario source.
class ScenarioError : public Error {
public:
  ScenarioError(const std::string& what, SourcePos pos) : Error(what), pos(pos) {}
  SourcePos pos;
};

class ParseError : public ScenarioError {
public:
  ParseError(const std::string& what, SourcePos pos, std::vector<std::string> expected,
             std::string found)
      : ScenarioError(what, pos), expected(std::move(expected)), found(std::move(found)) {}
  std::vector<std::string> expected;
  std::string found;
};

class ResolutionError : public ScenarioError {
public:
  using ScenarioError::ScenarioError;
};

/// Syntax only; throws ParseError.
ScenarioAst parse_ast(const ScenarioSource& src);

/// Canonical text form; reparsing yields a structurally equal AST.
std::string print_ast(const ScenarioAst& ast);

}  // namespace histq::scenario
