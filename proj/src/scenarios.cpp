#include "surf/scenarios.hpp"

#include <utility>

#include "surf/dsl/parser.hpp"
#include "surf/dsl/printer.hpp"
#include "surf/error.hpp"

namespace surf {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& scenario_sources();
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : detail::scenario_sources()) out.emplace_back(name);
  return out;
}

GoldenSuite builtin(std::string_view name) {
  for (const auto& [n, text] : detail::scenario_sources()) {
    if (n != name) continue;
    dsl::ParseResult p = dsl::parse(text);
    if (!p.ok()) throw Error(ErrorCode::usage, "builtin suite " + std::string(name) + " does not parse: " +
                                                   p.diagnostics.front().str());
    GoldenSuite g;
    g.name = std::string(name);
    g.source = text;
    g.script = std::move(*p.script);
    for (const auto& s : g.script.statements) {
      if (s.kind != dsl::Stmt::Kind::assert_) continue;
      Expectation e;
      e.query = dsl::print(*s.lhs);
      if (s.rhs) {
        const char* op = s.op == dsl::Stmt::Op::ne ? "not " : (s.op == dsl::Stmt::Op::equiv ? "~ " : "");
        e.expected = op + dsl::print(*s.rhs);
      } else {
        e.expected = "true";
      }
      e.citation = s.citation.value_or("");
      g.expectations.push_back(std::move(e));
    }
    return g;
  }
  throw Error(ErrorCode::usage, "unknown builtin suite '" + std::string(name) + "'");
}

}  // namespace surf
