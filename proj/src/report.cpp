#include "surf/report.hpp"

#include <sstream>

#include "json.hpp"

namespace surf {

bool Report::all_passed() const {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

int Report::exit_code(bool strict) const {
  if (!errors.empty()) return 2;
  if (!all_passed()) return 1;
  if (strict && !axiom_invocations.empty()) return 1;
  return 0;
}

std::string to_json(const Report& r, bool strict) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario;
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& c : r.results) {
    nlohmann::ordered_json e;
    e["kind"] = c.kind == CheckResult::Kind::assertion ? "assert" : "query";
    e["line"] = c.line;
    e["query"] = c.query;
    e["value"] = c.value;
    if (!c.expected.empty()) e["expected"] = c.expected;
    e["pass"] = c.pass;
    e["citation"] = c.citation;
    if (!c.error.empty()) e["error"] = c.error;
    j["results"].push_back(std::move(e));
  }
  j["axioms_used"] = r.axioms_used;
  j["verdict_summary"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.verdict_summary) j["verdict_summary"][k] = v;
  if (strict) {
    j["strict_warnings"] = nlohmann::ordered_json::array();
    for (const auto& a : r.axiom_invocations)
      j["strict_warnings"].push_back("line " + std::to_string(a.line) + ": " + a.axiom);
  }
  if (!r.errors.empty()) j["errors"] = r.errors;
  return j.dump(2) + "\n";
}

std::string to_markdown(const Report& r, bool strict) {
  std::ostringstream os;
  os << "# " << r.scenario << "\n\n";
  for (const auto& e : r.errors) os << "**error:** " << e << "\n\n";
  if (!r.results.empty()) {
    os << "| line | check | value | expected | status | citation |\n";
    os << "|---|---|---|---|---|---|\n";
    for (const auto& c : r.results) {
      const char* status = c.kind == CheckResult::Kind::query ? "query" : (c.pass ? "pass" : "FAIL");
      os << "| " << c.line << " | `" << c.query << "` | `" << c.value << "` | "
         << (c.expected.empty() ? "" : "`" + c.expected + "`") << " | " << status << " | " << c.citation
         << " |\n";
    }
    os << "\n";
  }
  for (const auto& c : r.results)
    if (!c.pass)
      os << "- line " << c.line << ": expected `" << c.expected << "`, got `" << c.value << "`"
         << (c.error.empty() ? "" : " (" + c.error + ")") << "\n";
  if (!r.verdict_summary.empty()) {
    os << "\n## Summary\n\n";
    for (const auto& [k, v] : r.verdict_summary) os << "- " << k << ": `" << v << "`\n";
  }
  if (!r.axioms_used.empty()) {
    os << "\n## Axioms used\n\n";
    for (const auto& a : r.axioms_used) os << "- " << a << "\n";
  }
  if (strict && !r.axiom_invocations.empty()) {
    os << "\n## Strict mode\n\n";
    for (const auto& a : r.axiom_invocations) os << "- warning (line " << a.line << "): " << a.axiom << "\n";
  }
  return os.str();
}

}  // namespace surf
