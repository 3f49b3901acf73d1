// surfcalc: run .surf scripts and the builtin golden suites.
#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "surf/dsl/interpreter.hpp"
#include "surf/dsl/parser.hpp"
#include "surf/dsl/printer.hpp"
#include "surf/error.hpp"
#include "surf/report.hpp"
#include "surf/scenarios.hpp"

namespace {

struct Output {
  std::string text;
  int code = 0;
};

std::string render(const surf::Report& r, const std::string& format, bool strict) {
  return format == "json" ? surf::to_json(r, strict) : surf::to_markdown(r, strict);
}

Output verify_one(const std::string& name, const std::string& format, bool strict) {
  Output o;
  try {
    const surf::GoldenSuite g = surf::builtin(name);
    const surf::Report r = surf::dsl::run_script(g.script, g.name);
    o.text = render(r, format, strict);
    o.code = r.exit_code(strict);
  } catch (const surf::Error& e) {
    o.text = std::string("error: ") + e.what() + "\n";
    o.code = 2;
  }
  return o;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

std::string stem(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string s = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = s.rfind('.');
  return dot == std::string::npos ? s : s.substr(0, dot);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact intersection theory on blow-ups of an elliptic ruled surface"};
  app.require_subcommand(0, 1);

  std::string format = "md";
  bool strict = false;
  bool list = false;
  app.add_flag("--list", list, "List builtin suites");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"md", "json"}));
  app.add_flag("--strict", strict, "Treat axiom usage as failure");

  std::vector<std::string> suites;
  auto* verify = app.add_subcommand("verify", "Run builtin golden suites (or 'all')");
  verify->add_option("suites", suites, "Suite names")->required();

  std::string path;
  auto* run = app.add_subcommand("run", "Run a .surf script");
  run->add_option("path", path, "Script file")->required();

  std::string print_path;
  auto* print = app.add_subcommand("print", "Print a .surf script in canonical form");
  print->add_option("path", print_path, "Script file")->required();

  for (auto* sub : {verify, run}) {
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"md", "json"}));
    sub->add_flag("--strict", strict, "Treat axiom usage as failure");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list) {
    for (const auto& n : surf::builtin_names()) std::cout << n << "\n";
    return 0;
  }

  if (*verify) {
    if (std::find(suites.begin(), suites.end(), "all") != suites.end()) suites = surf::builtin_names();
    const auto known = surf::builtin_names();
    for (const auto& s : suites) {
      if (std::find(known.begin(), known.end(), s) == known.end()) {
        std::cerr << "error: unknown builtin suite '" << s << "' (see --list)\n";
        return 2;
      }
    }
    std::vector<std::future<Output>> jobs;
    for (const auto& s : suites) jobs.push_back(std::async(std::launch::async, verify_one, s, format, strict));
    int code = 0;
    std::vector<std::string> texts;
    for (auto& j : jobs) {
      Output o = j.get();
      code = std::max(code, o.code);
      texts.push_back(std::move(o.text));
    }
    if (format == "json" && texts.size() > 1) {
      std::cout << "[\n";
      for (std::size_t i = 0; i < texts.size(); ++i) {
        std::string t = texts[i];
        while (!t.empty() && t.back() == '\n') t.pop_back();
        std::cout << t << (i + 1 < texts.size() ? ",\n" : "\n");
      }
      std::cout << "]\n";
    } else {
      for (const auto& t : texts) std::cout << t << (format == "md" ? "\n" : "");
    }
    return code;
  }

  if (*run) {
    std::string text;
    if (!read_file(path, text)) {
      std::cerr << "error: cannot read " << path << "\n";
      return 2;
    }
    const surf::Report r = surf::dsl::execute_text(text, stem(path));
    std::cout << render(r, format, strict);
    for (const auto& e : r.errors) std::cerr << path << ":" << e << "\n";
    for (const auto& c : r.results)
      if (!c.pass)
        std::cerr << path << ":" << c.line << ": assertion failed: expected " << c.expected << ", got " << c.value
                  << "\n";
    return r.exit_code(strict);
  }

  if (*print) {
    std::string text;
    if (!read_file(print_path, text)) {
      std::cerr << "error: cannot read " << print_path << "\n";
      return 2;
    }
    const auto p = surf::dsl::parse(text);
    if (!p.ok()) {
      for (const auto& d : p.diagnostics) std::cerr << print_path << ":" << d.str() << "\n";
      return 2;
    }
    std::cout << surf::dsl::print(*p.script);
    return 0;
  }

  std::cerr << app.help();
  return 2;
}
