#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "surf/rational.hpp"
#include "surf/surface.hpp"

namespace surf::dsl {

struct Pos {
  int line = 1;
  int col = 1;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression node. Positions are carried but ignored by ==.
struct Expr {
  enum class Kind {
    number,    // value
    string,    // text
    boolean,   // flag
    ident,     // text
    neg,       // args[0]
    add,       // args[0] + args[1]
    sub,       // args[0] - args[1]
    mul,       // args[0] * args[1]
    dot,       // args[0] . args[1], optional "@ text"
    call,      // text(args...)
    index,     // args[0][text]
    set,       // {text, ...} stored in names
    pullback,  // p*(args[0])
  };

  Kind kind = Kind::number;
  Pos pos;
  Rational value;
  std::string text;
  bool flag = false;
  std::vector<ExprPtr> args;
  std::vector<std::string> names;
  std::optional<std::string> at;
};

bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

struct Stmt {
  enum class Kind {
    base,      // name, list = pic0 generators, list2 = points
    relation,  // lhs == rhs
    ruled,     // name over target, twist = list[0], fibers = list2
    blowup,    // name at center, optional alias (surface name)
    divisor,   // name = lhs
    let,       // name = lhs
    contract,  // name = lhs (curve set), optional alias (target name)
    cover,     // name over target degree degree branch lhs, characteristic
    verdict,   // name = lhs
    assert_,   // lhs [op rhs] [: citation]
    query,     // lhs
    report,    // citation (key) = lhs
  };
  enum class Op { none, eq, ne, equiv };

  Kind kind = Kind::query;
  Pos pos;
  std::string name;
  std::string target;
  std::vector<std::string> list;
  std::vector<std::string> list2;
  BlowupCenter center;
  std::optional<std::string> alias;
  int degree = 0;
  std::string characteristic;  // "0" or "p" for covers; empty when omitted
  ExprPtr lhs;
  ExprPtr rhs;
  Op op = Op::none;
  std::optional<std::string> citation;
};

bool operator==(const Stmt& a, const Stmt& b);
inline bool operator!=(const Stmt& a, const Stmt& b) { return !(a == b); }

struct Script {
  std::vector<Stmt> statements;
  friend bool operator==(const Script&, const Script&) = default;
};

}  // namespace surf::dsl
