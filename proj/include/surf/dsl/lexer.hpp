#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "surf/dsl/diagnostics.hpp"

namespace surf::dsl {

struct Token {
  enum class Kind {
    ident, number, string, pullback,
    semicolon, comma, assign, eq, ne, tilde, plus, minus, star, dot, at, colon,
    lparen, rparen, lbracket, rbracket, lbrace, rbrace,
    end,
  };
  Kind kind = Kind::end;
  std::string text;  // identifier, number literal, or decoded string contents
  Pos pos;
};

const char* describe(Token::Kind kind);

/// Tokenizes the whole input. Lexical problems are appended to `diags`; the
/// offending bytes are skipped so the parser can keep going.
std::vector<Token> tokenize(std::string_view text, std::vector<Diagnostic>& diags);

}  // namespace surf::dsl
