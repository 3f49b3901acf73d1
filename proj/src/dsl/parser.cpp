#include "surf/dsl/parser.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <string>

#include "surf/dsl/lexer.hpp"
#include "surf/error.hpp"

namespace surf::dsl {

namespace {

constexpr std::array kKeywords{
    "base",   "pic0",   "points", "relation", "ruled",  "over",   "twist",  "fibers",
    "blowup", "at",     "as",     "point",    "on",     "general", "divisor", "let",
    "contract", "cover", "degree", "branch",  "char",   "verdict", "assert", "query",
    "report", "true",   "false",
};

constexpr std::array kBuiltins{
    "disc",      "obstruction", "qgor",     "sing",     "nef",       "big",     "negdef",
    "nklt",      "zerolocus",   "semiample", "cert",    "descend",   "mmp",     "composite",
    "mumford",   "pull",        "restrict", "numtriv",  "orth",      "canonical", "fg",
    "fgrule",    "fiberproduct", "contracted",
};

struct SyntaxError {
  Pos pos;
  std::string message;
  std::vector<std::string> expected;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
      : toks_(std::move(tokens)), diags_(diags) {
    declared_.insert("K");
  }

  Script script() {
    Script s;
    while (cur().kind != Token::Kind::end) {
      const std::size_t before = diags_.size();
      try {
        Stmt st = statement();
        if (diags_.size() == before) s.statements.push_back(std::move(st));
      } catch (const SyntaxError& e) {
        diags_.push_back({kSyntaxError, e.pos, "syntax error: " + e.message, e.expected});
        recover();
      }
    }
    return s;
  }

  ExprPtr lone_expression() {
    try {
      resolve_names_ = false;
      ExprPtr e = expr();
      expect(Token::Kind::end);
      return e;
    } catch (const SyntaxError& e) {
      diags_.push_back({kSyntaxError, e.pos, "syntax error: " + e.message, e.expected});
      return nullptr;
    }
  }

 private:
  std::vector<Token> toks_;
  std::vector<Diagnostic>& diags_;
  std::size_t i_ = 0;
  std::set<std::string> declared_;
  bool resolve_names_ = true;

  const Token& cur() const { return toks_[i_]; }
  const Token& peek(std::size_t ahead = 1) const { return toks_[std::min(i_ + ahead, toks_.size() - 1)]; }
  const Token& take() {
    const Token& t = toks_[i_];
    if (i_ + 1 < toks_.size()) ++i_;
    return t;
  }

  [[noreturn]] void fail(std::string message, std::vector<std::string> expected = {}) {
    throw SyntaxError{cur().pos, std::move(message), std::move(expected)};
  }

  bool at_word(std::string_view w) const { return cur().kind == Token::Kind::ident && cur().text == w; }

  const Token& expect(Token::Kind kind) {
    if (cur().kind != kind)
      fail("unexpected " + found(), {describe(kind)});
    return take();
  }

  void expect_word(std::string_view w) {
    if (!at_word(w)) fail("unexpected " + found(), {"'" + std::string(w) + "'"});
    take();
  }

  std::string found() const {
    if (cur().kind == Token::Kind::end) return "end of input";
    return std::string(describe(cur().kind)) + " '" + cur().text + "'";
  }

  std::string name_token() {
    if (cur().kind != Token::Kind::ident) fail("unexpected " + found(), {"identifier"});
    if (is_keyword(cur().text)) fail("keyword '" + cur().text + "' cannot be used as a name", {"identifier"});
    return take().text;
  }

  void recover() {
    while (cur().kind != Token::Kind::end && cur().kind != Token::Kind::semicolon) take();
    if (cur().kind == Token::Kind::semicolon) take();
  }

  void declare(const std::string& name, Pos pos) {
    if (!resolve_names_) return;
    if (is_builtin_function(name) || name == "K") {
      diags_.push_back({kRedefinition, pos, "name '" + name + "' is reserved", {}});
      return;
    }
    if (!declared_.insert(name).second)
      diags_.push_back({kRedefinition, pos, "redefinition of '" + name + "'", {}});
  }

  void use(const std::string& name, Pos pos) {
    if (!resolve_names_) return;
    if (!declared_.count(name))
      diags_.push_back({kUndefinedName, pos, "use of undefined name '" + name + "'", {}});
  }

  void use_expr(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::ident:
        use(e.text, e.pos);
        break;
      case Expr::Kind::set:
        for (const auto& n : e.names) use(n, e.pos);
        break;
      case Expr::Kind::call:
        if (!is_builtin_function(e.text))
          diags_.push_back({kUndefinedName, e.pos, "unknown function '" + e.text + "'", {}});
        break;
      default:
        break;
    }
    if (e.at) use(*e.at, e.pos);
    for (const auto& a : e.args) use_expr(*a);
  }

  std::vector<std::string> name_list() {
    std::vector<std::string> out{name_token()};
    while (cur().kind == Token::Kind::comma) {
      take();
      out.push_back(name_token());
    }
    return out;
  }

  Stmt statement() {
    if (cur().kind != Token::Kind::ident)
      fail("unexpected " + found(), {"statement keyword"});
    const std::string kw = cur().text;
    Stmt s;
    s.pos = cur().pos;
    if (kw == "base") {
      take();
      s.kind = Stmt::Kind::base;
      s.name = name_token();
      expect_word("pic0");
      s.list = name_list();
      if (at_word("points")) {
        take();
        s.list2 = name_list();
      }
      expect(Token::Kind::semicolon);
      declare(s.name, s.pos);
      for (const auto& g : s.list) declare(g, s.pos);
      for (const auto& p : s.list2) {
        declare(p, s.pos);
        declare(SurfaceModel::point_symbol(p), s.pos);
      }
    } else if (kw == "relation") {
      take();
      s.kind = Stmt::Kind::relation;
      s.lhs = sum();
      expect(Token::Kind::eq);
      s.rhs = sum();
      expect(Token::Kind::semicolon);
      use_expr(*s.lhs);
      use_expr(*s.rhs);
    } else if (kw == "ruled") {
      take();
      s.kind = Stmt::Kind::ruled;
      s.name = name_token();
      expect_word("over");
      s.target = name_token();
      expect_word("twist");
      s.list = {name_token()};
      expect_word("fibers");
      s.list2.push_back(name_token());
      expect(Token::Kind::comma);
      s.list2.push_back(name_token());
      expect(Token::Kind::semicolon);
      use(s.target, s.pos);
      use(s.list[0], s.pos);
      for (const auto& p : s.list2) use(p, s.pos);
      declare(s.name, s.pos);
      for (const char* c : {"B", "Bp", "F", "Fp"}) declare(c, s.pos);
    } else if (kw == "blowup") {
      take();
      s.kind = Stmt::Kind::blowup;
      s.name = name_token();
      expect_word("at");
      if (at_word("point")) {
        take();
        const std::string pt = name_token();
        expect_word("on");
        s.center = BlowupCenter::named(pt, name_token());
        use(s.center.point, s.pos);
        use(s.center.first, s.pos);
      } else if (at_word("general")) {
        take();
        s.center = BlowupCenter::general_point();
      } else if (cur().kind == Token::Kind::ident && !is_keyword(cur().text)) {
        const std::string a = name_token();
        expect(Token::Kind::star);
        s.center = BlowupCenter::meet(a, name_token());
        use(s.center.first, s.pos);
        use(s.center.second, s.pos);
      } else {
        fail("unexpected " + found(), {"identifier", "'point'", "'general'"});
      }
      if (at_word("as")) {
        take();
        s.alias = name_token();
      }
      expect(Token::Kind::semicolon);
      declare(s.name, s.pos);
      if (s.alias) declare(*s.alias, s.pos);
    } else if (kw == "divisor" || kw == "let" || kw == "verdict") {
      take();
      s.kind = kw == "divisor" ? Stmt::Kind::divisor : (kw == "let" ? Stmt::Kind::let : Stmt::Kind::verdict);
      s.name = name_token();
      expect(Token::Kind::assign);
      s.lhs = expr();
      expect(Token::Kind::semicolon);
      use_expr(*s.lhs);
      declare(s.name, s.pos);
    } else if (kw == "contract") {
      take();
      s.kind = Stmt::Kind::contract;
      s.name = name_token();
      expect(Token::Kind::assign);
      s.lhs = expr();
      if (at_word("as")) {
        take();
        s.alias = name_token();
      }
      expect(Token::Kind::semicolon);
      use_expr(*s.lhs);
      declare(s.name, s.pos);
      if (s.alias) declare(*s.alias, s.pos);
    } else if (kw == "cover") {
      take();
      s.kind = Stmt::Kind::cover;
      s.name = name_token();
      expect_word("over");
      s.target = name_token();
      expect_word("degree");
      const Token& n = expect(Token::Kind::number);
      if (n.text.find('/') != std::string::npos || n.text.size() > 6)
        throw SyntaxError{n.pos, "cover degree must be a small integer", {}};
      s.degree = std::stoi(n.text);
      expect_word("branch");
      s.lhs = expr();
      if (at_word("char")) {
        take();
        if (cur().kind == Token::Kind::number && cur().text == "0") {
          s.characteristic = "0";
        } else if (cur().kind == Token::Kind::ident && cur().text == "p") {
          s.characteristic = "p";
        } else {
          fail("unexpected " + found(), {"'0'", "'p'"});
        }
        take();
      }
      expect(Token::Kind::semicolon);
      use(s.target, s.pos);
      use_expr(*s.lhs);
      declare(s.name, s.pos);
    } else if (kw == "assert") {
      take();
      s.kind = Stmt::Kind::assert_;
      s.lhs = expr();
      if (cur().kind == Token::Kind::eq || cur().kind == Token::Kind::ne || cur().kind == Token::Kind::tilde) {
        const auto k = take().kind;
        s.op = k == Token::Kind::eq ? Stmt::Op::eq : (k == Token::Kind::ne ? Stmt::Op::ne : Stmt::Op::equiv);
        s.rhs = expr();
      }
      if (cur().kind == Token::Kind::colon) {
        take();
        s.citation = expect(Token::Kind::string).text;
      }
      if (cur().kind != Token::Kind::semicolon)
        fail("unexpected " + found(), {"';'", "'=='", "'!='", "'~'", "':'"});
      take();
      use_expr(*s.lhs);
      if (s.rhs) use_expr(*s.rhs);
    } else if (kw == "query") {
      take();
      s.kind = Stmt::Kind::query;
      s.lhs = expr();
      expect(Token::Kind::semicolon);
      use_expr(*s.lhs);
    } else if (kw == "report") {
      take();
      s.kind = Stmt::Kind::report;
      s.citation = expect(Token::Kind::string).text;
      expect(Token::Kind::assign);
      s.lhs = expr();
      expect(Token::Kind::semicolon);
      use_expr(*s.lhs);
    } else {
      fail("unknown statement '" + kw + "'",
           {"'base'", "'relation'", "'ruled'", "'blowup'", "'divisor'", "'let'", "'contract'", "'cover'",
            "'verdict'", "'assert'", "'query'", "'report'"});
    }
    return s;
  }

  static ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

  ExprPtr binary(Expr::Kind kind, Pos pos, ExprPtr a, ExprPtr b) {
    Expr e;
    e.kind = kind;
    e.pos = pos;
    e.args = {std::move(a), std::move(b)};
    return make(std::move(e));
  }

  // expr := sum ['.' sum ['@' ident]]
  ExprPtr expr() {
    ExprPtr left = sum();
    if (cur().kind == Token::Kind::dot) {
      const Pos p = take().pos;
      ExprPtr right = sum();
      Expr e;
      e.kind = Expr::Kind::dot;
      e.pos = p;
      e.args = {left, right};
      if (cur().kind == Token::Kind::at) {
        take();
        e.at = name_token();
      }
      return make(std::move(e));
    }
    return left;
  }

  ExprPtr sum() {
    ExprPtr left = product();
    while (cur().kind == Token::Kind::plus || cur().kind == Token::Kind::minus) {
      const Token& op = take();
      const auto kind = op.kind == Token::Kind::plus ? Expr::Kind::add : Expr::Kind::sub;
      left = binary(kind, op.pos, left, product());
    }
    return left;
  }

  ExprPtr product() {
    ExprPtr left = unary();
    while (cur().kind == Token::Kind::star) {
      const Pos p = take().pos;
      left = binary(Expr::Kind::mul, p, left, unary());
    }
    return left;
  }

  ExprPtr unary() {
    if (cur().kind == Token::Kind::minus) {
      const Pos p = take().pos;
      Expr e;
      e.kind = Expr::Kind::neg;
      e.pos = p;
      e.args = {unary()};
      return make(std::move(e));
    }
    return postfix();
  }

  ExprPtr postfix() {
    ExprPtr base = primary();
    while (cur().kind == Token::Kind::lbracket) {
      const Pos p = take().pos;
      Expr e;
      e.kind = Expr::Kind::index;
      e.pos = p;
      e.text = name_token();
      expect(Token::Kind::rbracket);
      e.args = {base};
      base = make(std::move(e));
    }
    return base;
  }

  ExprPtr primary() {
    Expr e;
    e.pos = cur().pos;
    switch (cur().kind) {
      case Token::Kind::number:
        e.kind = Expr::Kind::number;
        e.value = Rational::parse(take().text);
        return make(std::move(e));
      case Token::Kind::string:
        e.kind = Expr::Kind::string;
        e.text = take().text;
        return make(std::move(e));
      case Token::Kind::pullback:
        take();
        e.kind = Expr::Kind::pullback;
        expect(Token::Kind::lparen);
        e.args = {sum()};
        expect(Token::Kind::rparen);
        return make(std::move(e));
      case Token::Kind::lparen: {
        take();
        ExprPtr inner = expr();
        expect(Token::Kind::rparen);
        return inner;
      }
      case Token::Kind::lbrace:
        take();
        e.kind = Expr::Kind::set;
        if (cur().kind != Token::Kind::rbrace) e.names = name_list();
        expect(Token::Kind::rbrace);
        return make(std::move(e));
      case Token::Kind::ident: {
        const std::string word = cur().text;
        if (word == "true" || word == "false") {
          take();
          e.kind = Expr::Kind::boolean;
          e.flag = word == "true";
          return make(std::move(e));
        }
        if (peek().kind == Token::Kind::lparen) {
          take();
          take();
          e.kind = Expr::Kind::call;
          e.text = word;
          if (cur().kind != Token::Kind::rparen) {
            e.args.push_back(expr());
            while (cur().kind == Token::Kind::comma) {
              take();
              e.args.push_back(expr());
            }
          }
          expect(Token::Kind::rparen);
          return make(std::move(e));
        }
        e.kind = Expr::Kind::ident;
        e.text = name_token();
        return make(std::move(e));
      }
      default:
        fail("unexpected " + found(),
             {"identifier", "number", "string", "'('", "'{'", "'-'", describe(Token::Kind::pullback)});
    }
  }
};

}  // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_builtin_function(std::string_view word) {
  return std::find(kBuiltins.begin(), kBuiltins.end(), word) != kBuiltins.end();
}

ParseResult parse(std::string_view text) {
  ParseResult r;
  std::vector<Token> toks = tokenize(text, r.diagnostics);
  Parser p(std::move(toks), r.diagnostics);
  Script s = p.script();
  if (r.diagnostics.empty()) r.script = std::move(s);
  std::stable_sort(r.diagnostics.begin(), r.diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return a.pos.line != b.pos.line ? a.pos.line < b.pos.line : a.pos.col < b.pos.col;
  });
  return r;
}

ParseResult parse_expression(std::string_view text, ExprPtr& out) {
  ParseResult r;
  std::vector<Token> toks = tokenize(text, r.diagnostics);
  Parser p(std::move(toks), r.diagnostics);
  out = p.lone_expression();
  if (r.diagnostics.empty()) r.script = Script{};
  return r;
}

}  // namespace surf::dsl
