#pragma once

#include <string>
#include <vector>

#include "surf/dsl/ast.hpp"

namespace surf::dsl {

/// Diagnostic codes are stable: tooling may match on them.
inline constexpr const char* kLexicalError = "E001";
inline constexpr const char* kSyntaxError = "E002";
inline constexpr const char* kRedefinition = "E003";
inline constexpr const char* kUndefinedName = "E004";

struct Diagnostic {
  std::string code;
  Pos pos;
  std::string message;
  std::vector<std::string> expected;

  /// "3:14: E002 syntax error: ... (expected one of: ';', ',')"
  std::string str() const;
};

}  // namespace surf::dsl
