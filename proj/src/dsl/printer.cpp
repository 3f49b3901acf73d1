#include "surf/dsl/printer.hpp"

#include <sstream>

namespace surf::dsl {

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.value != b.value || a.text != b.text || a.flag != b.flag || a.names != b.names ||
      a.at != b.at || a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (*a.args[i] != *b.args[i]) return false;
  return true;
}

namespace {

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

}  // namespace

bool operator==(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && a.name == b.name && a.target == b.target && a.list == b.list &&
         a.list2 == b.list2 && a.center == b.center && a.alias == b.alias && a.degree == b.degree &&
         a.characteristic == b.characteristic && same_expr(a.lhs, b.lhs) && same_expr(a.rhs, b.rhs) &&
         a.op == b.op && a.citation == b.citation;
}

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::dot: return 1;
    case Expr::Kind::add:
    case Expr::Kind::sub: return 2;
    case Expr::Kind::mul: return 3;
    case Expr::Kind::neg: return 4;
    default: return 5;
  }
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string wrap(const Expr& e, bool parens) { return parens ? "(" + print(e) + ")" : print(e); }

std::string join(const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + names[i];
  return s;
}

}  // namespace

std::string print(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::number: return e.value.str();
    case Expr::Kind::string: return quote(e.text);
    case Expr::Kind::boolean: return e.flag ? "true" : "false";
    case Expr::Kind::ident: return e.text;
    case Expr::Kind::neg: return "-" + wrap(*e.args[0], precedence(*e.args[0]) < 4);
    case Expr::Kind::add:
    case Expr::Kind::sub: {
      const char* op = e.kind == Expr::Kind::add ? " + " : " - ";
      return wrap(*e.args[0], precedence(*e.args[0]) < 2) + op + wrap(*e.args[1], precedence(*e.args[1]) <= 2);
    }
    case Expr::Kind::mul:
      return wrap(*e.args[0], precedence(*e.args[0]) < 3) + "*" + wrap(*e.args[1], precedence(*e.args[1]) <= 3);
    case Expr::Kind::dot: {
      std::string s = wrap(*e.args[0], precedence(*e.args[0]) <= 1) + "." + wrap(*e.args[1], precedence(*e.args[1]) <= 1);
      if (e.at) s += " @ " + *e.at;
      return s;
    }
    case Expr::Kind::call: {
      std::string s = e.text + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + print(*e.args[i]);
      return s + ")";
    }
    case Expr::Kind::index: return wrap(*e.args[0], precedence(*e.args[0]) < 5) + "[" + e.text + "]";
    case Expr::Kind::set: return "{" + join(e.names) + "}";
    case Expr::Kind::pullback: return "p*(" + print(*e.args[0]) + ")";
  }
  return "";
}

std::string print(const Stmt& s) {
  std::ostringstream os;
  switch (s.kind) {
    case Stmt::Kind::base:
      os << "base " << s.name << " pic0 " << join(s.list);
      if (!s.list2.empty()) os << " points " << join(s.list2);
      break;
    case Stmt::Kind::relation:
      os << "relation " << print(*s.lhs) << " == " << print(*s.rhs);
      break;
    case Stmt::Kind::ruled:
      os << "ruled " << s.name << " over " << s.target << " twist " << s.list[0] << " fibers " << join(s.list2);
      break;
    case Stmt::Kind::blowup:
      os << "blowup " << s.name << " at " << s.center.str();
      if (s.alias) os << " as " << *s.alias;
      break;
    case Stmt::Kind::divisor:
    case Stmt::Kind::let:
    case Stmt::Kind::verdict: {
      const char* kw = s.kind == Stmt::Kind::divisor ? "divisor" : (s.kind == Stmt::Kind::let ? "let" : "verdict");
      os << kw << " " << s.name << " = " << print(*s.lhs);
      break;
    }
    case Stmt::Kind::contract:
      os << "contract " << s.name << " = " << print(*s.lhs);
      if (s.alias) os << " as " << *s.alias;
      break;
    case Stmt::Kind::cover:
      os << "cover " << s.name << " over " << s.target << " degree " << s.degree << " branch " << print(*s.lhs);
      if (!s.characteristic.empty()) os << " char " << s.characteristic;
      break;
    case Stmt::Kind::assert_:
      os << "assert " << print(*s.lhs);
      if (s.op != Stmt::Op::none)
        os << (s.op == Stmt::Op::eq ? " == " : (s.op == Stmt::Op::ne ? " != " : " ~ ")) << print(*s.rhs);
      if (s.citation) os << " : " << quote(*s.citation);
      break;
    case Stmt::Kind::query:
      os << "query " << print(*s.lhs);
      break;
    case Stmt::Kind::report:
      os << "report " << quote(*s.citation) << " = " << print(*s.lhs);
      break;
  }
  os << ";";
  return os.str();
}

std::string print(const Script& s) {
  std::string out;
  for (const auto& st : s.statements) out += print(st) + "\n";
  return out;
}

}  // namespace surf::dsl
