#pragma once

#include <string>
#include <vector>

#include "histq/scenario/parser.hpp"

namespace histq::scenario {

enum class TokenType {
  Ident,
  Number,
  Semicolon,
  Comma,
  Equals,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Plus,
  Minus,
  Star,
  Slash,
  Colon,
  At,
  Ampersand,
  Pipe,
  Less,
  Greater,
  Dot,
  Arrow,
  End,
};

struct Token {
  TokenType type = TokenType::End;
  std::string text;
  double number = 0.0;
  SourcePos pos;
};

std::string token_name(TokenType type);

/// Throws ParseError on malformed input (bad number, stray character).
std::vector<Token> lex(const ScenarioSource& src);

}  // namespace histq::scenario
