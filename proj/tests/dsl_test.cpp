#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "surf/dsl/interpreter.hpp"
#include "surf/dsl/parser.hpp"
#include "surf/dsl/printer.hpp"
#include "surf/scenarios.hpp"

using namespace surf::dsl;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(SURF_SCENARIO_DIR) + "/" + name + ".surf");
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kPrelude =
    "base C pic0 e points x, xp;\n"
    "ruled S over C twist e fibers x, xp;\n";

std::string with_prelude(const std::string& body) { return kPrelude + body; }

bool has_code(const ParseResult& r, const char* code) {
  for (const auto& d : r.diagnostics)
    if (d.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("blow-up statement parses to an intersection center") {
  const auto r = parse(with_prelude("blowup E1 at B * F;"));
  REQUIRE(r.ok());
  const Stmt& s = r.script->statements.back();
  CHECK(s.kind == Stmt::Kind::blowup);
  CHECK(s.name == "E1");
  CHECK(s.center == surf::BlowupCenter::meet("B", "F"));
  CHECK(s.pos.line == 3);
  CHECK(s.pos.col == 1);
}

TEST_CASE("other centers and aliases") {
  const auto r = parse(with_prelude("blowup G at general as X1;\nblowup Q at point x on B;"));
  REQUIRE(r.ok());
  CHECK(r.script->statements[2].center == surf::BlowupCenter::general_point());
  CHECK(r.script->statements[2].alias == std::optional<std::string>("X1"));
  CHECK(r.script->statements[3].center == surf::BlowupCenter::named("x", "B"));
}

TEST_CASE("assert comparing a rational") {
  const auto r = parse(with_prelude("blowup E1 at B * F;\ncontract pi = {B, E1};\nassert disc(pi)[B] == -2;"));
  REQUIRE(r.ok());
  const Stmt& s = r.script->statements.back();
  CHECK(s.kind == Stmt::Kind::assert_);
  CHECK(s.op == Stmt::Op::eq);
  CHECK(s.lhs->kind == Expr::Kind::index);
  CHECK(s.lhs->text == "B");
  CHECK(s.rhs->kind == Expr::Kind::neg);
  CHECK(print(*s.lhs) == "disc(pi)[B]");
}

TEST_CASE("divisor definition followed by a self-intersection") {
  const auto r = parse(with_prelude("divisor D = 3*Bp + F;\nassert D.D == 4;"));
  REQUIRE(r.ok());
  CHECK(print(*r.script->statements[2].lhs) == "3*Bp + F");
  CHECK(print(*r.script->statements[3].lhs) == "D.D");
}

TEST_CASE("numbers print reduced and parentheses appear only when needed") {
  ExprPtr e;
  REQUIRE(parse_expression("4/2*B - (F - Fp) + -(2/6)*p*(e - 3*xi_x)", e).ok());
  CHECK(print(*e) == "2*B - (F - Fp) + -1/3*p*(e - 3*xi_x)");
  REQUIRE(parse_expression("(K.E5 @ pit)", e).ok());
  CHECK(print(*e) == "K.E5 @ pit");
  REQUIRE(parse_expression("a - (b + c) - d", e).ok());
  CHECK(print(*e) == "a - (b + c) - d");
  REQUIRE(parse_expression("(a - b) - c", e).ok());
  CHECK(print(*e) == "a - b - c");
  REQUIRE(parse_expression("\"q\\\"uote\"", e).ok());
  CHECK(print(*e) == "\"q\\\"uote\"");
}

TEST_CASE("relations print in declaration order") {
  const auto r = parse(with_prelude("relation xi_x == 2*e;\nrelation xi_xp - e == 0;\nrelation e == e;"));
  REQUIRE(r.ok());
  const std::string text = print(*r.script);
  const auto a = text.find("relation xi_x == 2*e;");
  const auto b = text.find("relation xi_xp - e == 0;");
  const auto c = text.find("relation e == e;");
  REQUIRE(a != std::string::npos);
  CHECK(a < b);
  CHECK(b < c);
}

TEST_CASE("diagnostic codes") {
  SUBCASE("lexical") {
    const auto r = parse(with_prelude("divisor D = 3 $ B;"));
    CHECK_FALSE(r.ok());
    CHECK(has_code(r, "E001"));
    CHECK(has_code(parse("divisor D = 1/0;"), "E001"));
  }
  SUBCASE("syntax") {
    const auto r = parse(with_prelude("blowup E1 at B F;"));
    REQUIRE_FALSE(r.ok());
    CHECK(r.diagnostics.front().code == "E002");
    CHECK(r.diagnostics.front().pos.line == 3);
    CHECK(r.diagnostics.front().pos.col == 16);
    CHECK_FALSE(r.diagnostics.front().expected.empty());
  }
  SUBCASE("redefinition") {
    CHECK(has_code(parse(with_prelude("divisor D = B;\ndivisor D = F;")), "E003"));
    CHECK(has_code(parse(with_prelude("divisor K = B;")), "E003"));
    CHECK(has_code(parse(with_prelude("divisor disc = B;")), "E003"));
  }
  SUBCASE("use before definition") {
    CHECK(has_code(parse(with_prelude("assert D.D == 4;\ndivisor D = B;")), "E004"));
    CHECK(has_code(parse(with_prelude("query frobnicate(B);")), "E004"));
  }
  SUBCASE("recovery keeps going after a bad statement") {
    const auto r = parse(with_prelude("blowup at;\ndivisor D = ;\nquery B.B;"));
    CHECK(r.diagnostics.size() >= 2);
  }
}

TEST_CASE("round trip on every fixture") {
  for (const auto& name : surf::builtin_names()) {
    const std::string text = read_fixture(name);
    const auto first = parse(text);
    REQUIRE_MESSAGE(first.ok(), name);
    const std::string canon = print(*first.script);
    const auto second = parse(canon);
    REQUIRE_MESSAGE(second.ok(), name);
    CHECK_MESSAGE(*second.script == *first.script, name);
    CHECK(print(*second.script) == canon);
  }
}

TEST_CASE("fuzz: the parser never crashes and diagnostics stay inside the text") {
  testing::Rng rng(1234);
  std::vector<std::string> corpus;
  for (const auto& name : surf::builtin_names()) corpus.push_back(read_fixture(name));
  auto check_positions = [](const std::string& text, const ParseResult& r) {
    int lines = 1;
    for (char ch : text) lines += ch == '\n';
    for (const auto& d : r.diagnostics) {
      CHECK(d.pos.line >= 1);
      CHECK(d.pos.line <= lines);
      CHECK(d.pos.col >= 1);
      CHECK(!d.code.empty());
    }
    CHECK(r.ok() == r.diagnostics.empty());
  };
  for (int trial = 0; trial < 400; ++trial) {
    std::string text;
    if (trial % 2 == 0) {
      const int n = rng.integer(0, 200);
      for (int i = 0; i < n; ++i) text.push_back(static_cast<char>(rng.integer(0, 255)));
    } else {
      text = corpus[static_cast<std::size_t>(rng.integer(0, static_cast<int>(corpus.size()) - 1))];
      const int edits = rng.integer(1, 8);
      for (int i = 0; i < edits && !text.empty(); ++i) {
        const auto at = static_cast<std::size_t>(rng.integer(0, static_cast<int>(text.size()) - 1));
        switch (rng.integer(0, 2)) {
          case 0: text.erase(at, static_cast<std::size_t>(rng.integer(1, 10))); break;
          case 1: text.insert(at, 1, "(){};,.*@~=!-+[]\"#/"[rng.integer(0, 19)]); break;
          default: text[at] = static_cast<char>(rng.integer(0, 255)); break;
        }
      }
    }
    const auto r = parse(text);
    check_positions(text, r);
    if (r.ok()) {
      // whatever parsed must also survive execution without crashing
      const auto report = execute_text(text, "fuzz");
      CHECK(report.exit_code() >= 0);
    }
  }
}

TEST_CASE("interpreter: failing assert, engine error inside an assert, usage error") {
  const std::string prelude = std::string(kPrelude) + "blowup E1 at B * F;\nblowup E2 at E1 * F as X;\n";
  auto run = [&](const std::string& body) { return execute_text(prelude + body, "t"); };

  const auto fail = run("divisor D = 3*Bp + F;\nassert D.D == 5 : \"square\";\n");
  CHECK(fail.exit_code() == 1);
  REQUIRE(fail.results.size() == 1);
  CHECK(fail.results[0].value == "4");
  CHECK(fail.results[0].expected == "5");
  CHECK(fail.results[0].citation == "square");

  const auto engine = run("contract pi = {B, E1};\nassert descend(pi, E2)[ample];\nquery B.B;\n");
  CHECK(engine.exit_code() == 1);
  REQUIRE(engine.results.size() == 2);
  CHECK(engine.results[0].error.find("not-descendable") != std::string::npos);
  CHECK(engine.results[1].value == "-1");

  const auto usage = run("assert B.B == true;\n");
  CHECK(usage.exit_code() == 2);
  CHECK_FALSE(usage.errors.empty());

  const auto outside = run("contract pi = {F, Fp, E2, B, E1};\n");
  CHECK(outside.exit_code() == 2);

  CHECK(execute_text("assert ;", "t").exit_code() == 2);
}

TEST_CASE("interpreter: contexts, pullbacks and comparisons") {
  const std::string text = std::string(kPrelude) +
                           "let KS = K;\n"
                           "blowup E1 at B * F as X1;\n"
                           "assert KS == pull(S, K) : \"let binds on the surface it was made on\";\n"
                           "assert KS == K - E1;\n"
                           "assert KS != K;\n"
                           "assert pull(S, p*(e)) ~ B - Bp + E1;\n"
                           "assert xi_x - xi_xp != 7*e;\n"
                           "relation xi_x - xi_xp == 7*e;\n"
                           "assert xi_x - xi_xp == 7*e;\n"
                           "assert restrict(B, B)[pic] == e - xi_x;\n"
                           "assert {B, E1} == {E1, B};\n"
                           "assert mmp(S) == \"mori_fiber(F)\";\n";
  const auto r = execute_text(text, "ctx");
  CHECK(r.errors.empty());
  for (const auto& c : r.results) CHECK_MESSAGE(c.pass, (c.query + " -> " + c.value));
  CHECK(r.exit_code() == 0);
}
