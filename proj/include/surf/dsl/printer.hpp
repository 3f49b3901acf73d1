#pragma once

#include <string>

#include "surf/dsl/ast.hpp"

namespace surf::dsl {

/// Canonical text of an expression; parentheses only where precedence needs them.
std::string print(const Expr& e);

/// Canonical script text: one statement per line, comments dropped.
std::string print(const Script& s);
std::string print(const Stmt& s);

}  // namespace surf::dsl
