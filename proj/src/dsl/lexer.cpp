#include "surf/dsl/lexer.hpp"

#include <cctype>

namespace surf::dsl {

std::string Diagnostic::str() const {
  std::string s = std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + code + " " + message;
  if (!expected.empty()) {
    s += " (expected one of:";
    for (std::size_t i = 0; i < expected.size(); ++i) s += (i ? ", " : " ") + expected[i];
    s += ")";
  }
  return s;
}

const char* describe(Token::Kind kind) {
  using K = Token::Kind;
  switch (kind) {
    case K::ident: return "identifier";
    case K::number: return "number";
    case K::string: return "string";
    case K::pullback: return "'p*('";
    case K::semicolon: return "';'";
    case K::comma: return "','";
    case K::assign: return "'='";
    case K::eq: return "'=='";
    case K::ne: return "'!='";
    case K::tilde: return "'~'";
    case K::plus: return "'+'";
    case K::minus: return "'-'";
    case K::star: return "'*'";
    case K::dot: return "'.'";
    case K::at: return "'@'";
    case K::colon: return "':'";
    case K::lparen: return "'('";
    case K::rparen: return "')'";
    case K::lbracket: return "'['";
    case K::rbracket: return "']'";
    case K::lbrace: return "'{'";
    case K::rbrace: return "'}'";
    case K::end: return "end of input";
  }
  return "?";
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

class Lexer {
 public:
  Lexer(std::string_view text, std::vector<Diagnostic>& diags) : src_(text), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      if (i_ >= src_.size()) break;
      const Pos start = pos_;
      const char c = src_[i_];
      if (c == 'p' && peek(1) == '*' && next_nonspace_after(2) == '(') {
        advance(2);
        out.push_back({Token::Kind::pullback, "p*", start});
      } else if (is_alpha(c)) {
        std::string word;
        while (i_ < src_.size() && (is_alpha(src_[i_]) || is_digit(src_[i_]) || src_[i_] == '_'))
          word += advance(1);
        out.push_back({Token::Kind::ident, word, start});
      } else if (is_digit(c)) {
        lex_number(out, start);
      } else if (c == '"') {
        lex_string(out, start);
      } else {
        lex_punct(out, start);
      }
    }
    out.push_back({Token::Kind::end, "", pos_});
    return out;
  }

 private:
  std::string_view src_;
  std::vector<Diagnostic>& diags_;
  std::size_t i_ = 0;
  Pos pos_;

  char peek(std::size_t ahead) const { return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0'; }

  char next_nonspace_after(std::size_t ahead) const {
    std::size_t j = i_ + ahead;
    while (j < src_.size() && (src_[j] == ' ' || src_[j] == '\t')) ++j;
    return j < src_.size() ? src_[j] : '\0';
  }

  std::string advance(std::size_t n) {
    std::string s;
    for (std::size_t k = 0; k < n && i_ < src_.size(); ++k) {
      const char c = src_[i_++];
      s += c;
      if (c == '\n') {
        ++pos_.line;
        pos_.col = 1;
      } else {
        ++pos_.col;
      }
    }
    return s;
  }

  void error(Pos at, std::string msg) { diags_.push_back({kLexicalError, at, "lexical error: " + msg, {}}); }

  void skip_space_and_comments() {
    while (i_ < src_.size()) {
      const char c = src_[i_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
      } else if (c == '#' || (c == '/' && peek(1) == '/')) {
        while (i_ < src_.size() && src_[i_] != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  void lex_number(std::vector<Token>& out, Pos start) {
    std::string lit;
    while (i_ < src_.size() && is_digit(src_[i_])) lit += advance(1);
    if (i_ < src_.size() && src_[i_] == '/' && is_digit(peek(1))) {
      lit += advance(1);
      std::string den;
      while (i_ < src_.size() && is_digit(src_[i_])) den += advance(1);
      if (den.find_first_not_of('0') == std::string::npos) {
        error(start, "zero denominator in '" + lit + den + "'");
        return;
      }
      lit += den;
    }
    out.push_back({Token::Kind::number, lit, start});
  }

  void lex_string(std::vector<Token>& out, Pos start) {
    advance(1);
    std::string body;
    while (i_ < src_.size() && src_[i_] != '"' && src_[i_] != '\n') {
      if (src_[i_] == '\\' && (peek(1) == '"' || peek(1) == '\\')) advance(1);
      body += advance(1);
    }
    if (i_ >= src_.size() || src_[i_] != '"') {
      error(start, "unterminated string literal");
      return;
    }
    advance(1);
    out.push_back({Token::Kind::string, body, start});
  }

  void lex_punct(std::vector<Token>& out, Pos start) {
    using K = Token::Kind;
    const char c = src_[i_];
    auto one = [&](K kind) {
      out.push_back({kind, advance(1), start});
    };
    switch (c) {
      case ';': return one(K::semicolon);
      case ',': return one(K::comma);
      case '~': return one(K::tilde);
      case '+': return one(K::plus);
      case '-': return one(K::minus);
      case '*': return one(K::star);
      case '.': return one(K::dot);
      case '@': return one(K::at);
      case ':': return one(K::colon);
      case '(': return one(K::lparen);
      case ')': return one(K::rparen);
      case '[': return one(K::lbracket);
      case ']': return one(K::rbracket);
      case '{': return one(K::lbrace);
      case '}': return one(K::rbrace);
      case '=':
        if (peek(1) == '=') {
          out.push_back({K::eq, advance(2), start});
          return;
        }
        return one(K::assign);
      case '!':
        if (peek(1) == '=') {
          out.push_back({K::ne, advance(2), start});
          return;
        }
        break;
      default:
        break;
    }
    const unsigned char u = static_cast<unsigned char>(c);
    std::string shown = std::isprint(u) ? std::string(1, c) : "\\x" + [&] {
      const char* hex = "0123456789abcdef";
      return std::string{hex[u >> 4], hex[u & 15]};
    }();
    error(start, "unexpected character '" + shown + "'");
    advance(1);
  }
};

}  // namespace

std::vector<Token> tokenize(std::string_view text, std::vector<Diagnostic>& diags) {
  return Lexer(text, diags).run();
}

}  // namespace surf::dsl
