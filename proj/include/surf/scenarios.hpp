#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "surf/dsl/ast.hpp"

namespace surf {

struct Expectation {
  std::string query;     // canonical text of the asserted expression
  std::string expected;  // canonical text of the right-hand side, "true" for predicates
  std::string citation;
};

struct GoldenSuite {
  std::string name;
  std::string_view source;  // the .surf text
  dsl::Script script;
  std::vector<Expectation> expectations;
};

/// Throws Error(usage) for an unknown name.
GoldenSuite builtin(std::string_view name);
std::vector<std::string> builtin_names();

}  // namespace surf
