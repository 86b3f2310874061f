#include "lexer.hpp"

#include <cctype>
#include <cstdlib>

namespace histq::scenario {

std::string token_name(TokenType type) {
  switch (type) {
    case TokenType::Ident: return "identifier";
    case TokenType::Number: return "number";
    case TokenType::Semicolon: return "';'";
    case TokenType::Comma: return "','";
    case TokenType::Equals: return "'='";
    case TokenType::LParen: return "'('";
    case TokenType::RParen: return "')'";
    case TokenType::LBracket: return "'['";
    case TokenType::RBracket: return "']'";
    case TokenType::LBrace: return "'{'";
    case TokenType::RBrace: return "'}'";
    case TokenType::Plus: return "'+'";
    case TokenType::Minus: return "'-'";
    case TokenType::Star: return "'*'";
    case TokenType::Slash: return "'/'";
    case TokenType::Colon: return "':'";
    case TokenType::At: return "'@'";
    case TokenType::Ampersand: return "'&'";
    case TokenType::Pipe: return "'|'";
    case TokenType::Less: return "'<'";
    case TokenType::Greater: return "'>'";
    case TokenType::Dot: return "'.'";
    case TokenType::Arrow: return "'->'";
    case TokenType::End: return "end of input";
  }
  return "token";
}

std::vector<Token> lex(const ScenarioSource& src) {
  std::vector<Token> tokens;
  const std::string& text = src.text;
  SourcePos pos;

  auto advance = [&](std::size_t count) {
    for (std::size_t i = 0; i < count && pos.offset < text.size(); ++i) {
      if (text[pos.offset] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
      ++pos.offset;
    }
  };

  while (pos.offset < text.size()) {
    const char c = text[pos.offset];
    if (c == '#') {
      while (pos.offset < text.size() && text[pos.offset] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }

    Token token;
    token.pos = pos;

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos.offset;
      while (end < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_')) {
        ++end;
      }
      token.type = TokenType::Ident;
      token.text = text.substr(pos.offset, end - pos.offset);
      advance(end - pos.offset);
      tokens.push_back(std::move(token));
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos.offset + 1 < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[pos.offset + 1])))) {
      std::size_t end = pos.offset;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      if (end < text.size() && text[end] == '.') {
        ++end;
        while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      }
      if (end < text.size() && (text[end] == 'e' || text[end] == 'E')) {
        std::size_t exp_end = end + 1;
        if (exp_end < text.size() && (text[exp_end] == '+' || text[exp_end] == '-')) ++exp_end;
        if (exp_end < text.size() && std::isdigit(static_cast<unsigned char>(text[exp_end]))) {
          end = exp_end;
          while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
        }
      }
      token.type = TokenType::Number;
      token.text = text.substr(pos.offset, end - pos.offset);
      token.number = std::strtod(token.text.c_str(), nullptr);
      advance(end - pos.offset);
      tokens.push_back(std::move(token));
      continue;
    }

    if (c == '-' && pos.offset + 1 < text.size() && text[pos.offset + 1] == '>') {
      token.type = TokenType::Arrow;
      token.text = "->";
      advance(2);
      tokens.push_back(std::move(token));
      continue;
    }

    TokenType type;
    switch (c) {
      case ';': type = TokenType::Semicolon; break;
      case ',': type = TokenType::Comma; break;
      case '=': type = TokenType::Equals; break;
      case '(': type = TokenType::LParen; break;
      case ')': type = TokenType::RParen; break;
      case '[': type = TokenType::LBracket; break;
      case ']': type = TokenType::RBracket; break;
      case '{': type = TokenType::LBrace; break;
      case '}': type = TokenType::RBrace; break;
      case '+': type = TokenType::Plus; break;
      case '-': type = TokenType::Minus; break;
      case '*': type = TokenType::Star; break;
      case '/': type = TokenType::Slash; break;
      case ':': type = TokenType::Colon; break;
      case '@': type = TokenType::At; break;
      case '&': type = TokenType::Ampersand; break;
      case '|': type = TokenType::Pipe; break;
      case '<': type = TokenType::Less; break;
      case '>': type = TokenType::Greater; break;
      case '.': type = TokenType::Dot; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "' at line " +
                             std::to_string(pos.line) + ", column " +
                             std::to_string(pos.column),
                         pos, {"a valid token"}, std::string(1, c));
    }
    token.type = type;
    token.text = std::string(1, c);
    advance(1);
    tokens.push_back(std::move(token));
  }

  Token end;
  end.type = TokenType::End;
  end.pos = pos;
  tokens.push_back(std::move(end));
  return tokens;
}

}  // namespace histq::scenario
