#pragma once

#include <map>
#include <string>
#include <vector>

namespace surf {

struct CheckResult {
  enum class Kind { assertion, query };
  Kind kind = Kind::assertion;
  int line = 0;
  std::string query;     // canonical text of the checked expression
  std::string value;     // actual value, exact
  std::string expected;  // empty for queries and bare predicates
  bool pass = true;
  std::string citation;
  std::string error;     // engine error that decided the result, if any
};

struct AxiomUse {
  std::string axiom;
  int line = 0;
};

/// Outcome of running one scenario. Numbers are always exact strings.
struct Report {
  std::string scenario;
  std::vector<CheckResult> results;
  std::vector<std::string> axioms_used;
  std::vector<AxiomUse> axiom_invocations;
  std::map<std::string, std::string> verdict_summary;
  std::vector<std::string> errors;  // parse or execution errors (exit code 2)

  bool all_passed() const;
  /// 0 all assertions pass, 1 an assertion failed (or an axiom was used under
  /// strict mode), 2 parse/usage error.
  int exit_code(bool strict = false) const;
};

std::string to_json(const Report& r, bool strict = false);
std::string to_markdown(const Report& r, bool strict = false);

}  // namespace surf
