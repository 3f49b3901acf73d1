#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "surf/dsl/ast.hpp"
#include "surf/dsl/diagnostics.hpp"

namespace surf::dsl {

struct ParseResult {
  std::optional<Script> script;  // present iff diagnostics is empty
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return script.has_value(); }
};

/// Parses a .surf script, including name resolution (declare-before-use,
/// single assignment). Never throws on malformed input.
ParseResult parse(std::string_view text);

/// Parses a single expression (used by tests and the CLI).
ParseResult parse_expression(std::string_view text, ExprPtr& out);

bool is_keyword(std::string_view word);
bool is_builtin_function(std::string_view word);

}  // namespace surf::dsl
