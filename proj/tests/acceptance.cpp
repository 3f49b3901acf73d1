// One line per acceptance criterion; exit status is the number of failures.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "surf/contraction.hpp"
#include "surf/cover.hpp"
#include "surf/dsl/interpreter.hpp"
#include "surf/dsl/parser.hpp"
#include "surf/dsl/printer.hpp"
#include "surf/error.hpp"
#include "surf/positivity.hpp"
#include "surf/scenarios.hpp"

using namespace surf;
using testing::Rng;

namespace {

struct Checker {
  std::vector<std::string> failures;
  void operator()(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  template <class A, class B>
  void eq(const A& got, const B& want, const std::string& what) {
    if (!(got == want)) {
      std::ostringstream os;
      os << what << ": expected " << want << ", got " << got;
      failures.push_back(os.str());
    }
  }
};

std::ostream& operator<<(std::ostream& os, const Pic0Class& p) { return os << p.str(); }

CurveExpr c(const std::string& name, const Rational& k = 1) { return CurveExpr::curve(name, k); }
Pic0Class sym(const std::string& s, const Rational& k = 1) { return Pic0Class::symbol(s, k); }

Rational dot(const SurfaceModel& m, const CurveExpr& a, const CurveExpr& b) {
  return testing::oracle_dot(m.evaluate(a), m.evaluate(b));
}

DivClass base(const Rational& a, const Rational& b, const Pic0Class& p) {
  DivClass d(0);
  d.section = a;
  d.fiber = b;
  d.pic0 = p;
  return d;
}

DivClass cert_class(const SurfaceModel& m, const NefCertificate& cert) {
  DivClass d = cert.base.extended(m.blowup_count());
  for (const auto& [name, k] : cert.effective) d += k * m.curve(name).cls;
  return d;
}

// ---------------------------------------------------------------------------

void lattice(Checker& ck) {
  const auto s = testing::ruled_S();
  ck.eq(dot(s, c("B"), c("B")), Rational(0), "S: B^2");
  ck.eq(dot(s, c("Bp"), c("Bp")), Rational(0), "S: B'^2");
  ck.eq(dot(s, c("B"), c("Bp")), Rational(0), "S: B.B'");

  const auto x = testing::model_X();
  ck.eq(dot(x, c("B"), c("B")), Rational(-1), "X: B^2");
  ck.eq(dot(x, c("E1"), c("E1")), Rational(-2), "X: E1^2");
  ck.eq(dot(x, c("B"), c("E1")), Rational(1), "X: B.E1");
  ck.eq(dot(x, c("F"), c("F")), Rational(-2), "X: F^2");
  const CurveExpr d = c("Bp", 3) + c("F");
  ck.eq(dot(x, d, d), Rational(4), "X: (3B'+F)^2");
  ck.eq(dot(x, d, c("B")), Rational(0), "X: (3B'+F).B");
  ck.eq(dot(x, d, c("E1")), Rational(0), "X: (3B'+F).E1");
  ck.eq(dot(x, d, c("E2")), Rational(1), "X: (3B'+F).E2");

  const auto xt = testing::model_Xt();
  ck.eq(dot(xt, c("Fp"), c("Fp")), Rational(-3), "Xt: F'^2");
  for (const char* n : {"B", "E1", "E3", "E4"}) ck.eq(dot(xt, c(n), c(n)), Rational(-2), std::string("Xt: ") + n + "^2");
  const CurveExpr dt = c("Bp", 6) + c("F", 2) + c("Fp");
  ck.eq(dot(xt, dt, dt), Rational(25), "Xt: (6B'+2F+F')^2");
  const std::map<std::string, Rational> want{{"B", 0}, {"E1", 0}, {"E3", 0}, {"E4", 0}, {"E5", 1}, {"Fp", 3}};
  for (const auto& [n, v] : want) ck.eq(dot(xt, dt, c(n)), v, "Xt: (6B'+2F+F')." + n);
  // the engine's own pairing must agree with the oracle everywhere above
  ck.eq(xt.intersect(dt, dt), Rational(25), "Xt: engine pairing");
  ck.eq(x.intersect(d, c("E2")), Rational(1), "X: engine pairing");
}

void linear_equivalences(Checker& ck) {
  const RelationSet none;
  const auto s = testing::ruled_S();
  const auto x = testing::model_X();
  const auto xt = testing::model_Xt();
  const CurveExpr kx = x.canonical_expr();
  const CurveExpr kxt = xt.canonical_expr();

  ck(lin_equiv(x.evaluate(kx + c("B") + c("Bp") - c("E2")), DivClass(2), none), "K_X + B + B' - E2 ~ 0");
  ck(lin_equiv(xt.evaluate(kxt + c("B") + c("Bp") - c("E2") - c("E4") - c("E5", 2)), DivClass(5), none),
     "K_Xt + B + B' - E2 - E4 - 2E5 ~ 0");
  ck(lin_equiv(x.total_pullback(s, s.evaluate(s.canonical_expr())), x.evaluate(kx - c("E1") - c("E2", 2)), none),
     "phi^*K_S = K_X - E1 - 2E2");
  ck(lin_equiv(xt.evaluate(xt.total_pullback(s, CurveExpr::pull(sym("e")))),
               xt.evaluate(c("B") - c("Bp") + c("E1") + c("E2") + c("E3") + c("E4") + c("E5")), none),
     "phit^*p^*e ~ B - B' + E1 + ... + E5");

  // 3B'+F - K_X: nef part and L part of the semi-ample certificate
  const NefCertificate dx{base(1, 1, sym("e", -3)), {{"B", 2}, {"E1", 1}}};
  const NefCertificate lx{base(1, 1, sym("e", -4)), {}};
  const CurveExpr d = c("Bp", 3) + c("F");
  ck(lin_equiv(x.evaluate(d), cert_class(x, dx), none), "3B'+F certificate decomposition");
  ck(lin_equiv(x.evaluate(d - kx - c("B", 4) - c("E1", 2)), cert_class(x, lx), none),
     "3B'+F - K_X - (4B + 2E1) decomposition");
  ck(nef_with_certificate(x, x.evaluate(d - kx - c("B", 4) - c("E1", 2)), lx).nef, "3B'+F - K_X - Delta nef");

  const Pic0Class shift = sym("xi_x") - sym("xi_xp");
  const NefCertificate dt{base(2, 2, sym("e", -6)), {{"B", 4}, {"E1", 2}, {"E3", 4}, {"E4", 4}, {"E5", 4}, {"Fp", 1}}};
  const NefCertificate lt{base(2, 3, sym("e", -7) - shift), {}};
  const CurveExpr d2 = c("Bp", 6) + c("F", 2) + c("Fp");
  const CurveExpr delta = c("B", 6) + c("E1", 3) + c("E3", 4) + c("E4", 2);
  ck(lin_equiv(xt.evaluate(d2), cert_class(xt, dt), none), "6B'+2F+F' certificate decomposition");
  ck(lin_equiv(xt.evaluate(d2 - kxt - delta), cert_class(xt, lt), none),
     "6B'+2F+F' - K_Xt - Delta decomposition");
  ck(nef_with_certificate(xt, xt.evaluate(d2 - kxt - delta), lt).nef, "6B'+2F+F' - K_Xt - Delta nef");
}

std::map<std::string, Rational> as_map(const std::vector<std::pair<std::string, Rational>>& v) {
  std::map<std::string, Rational> m;
  for (const auto& [k, x] : v)
    if (!x.is_zero()) m[k] += x;
  return m;
}

void discrepancy_values(Checker& ck) {
  const auto pi = Contraction::make(testing::model_X(), {"B", "E1"}, "pi");
  const auto d = discrepancies(pi);
  ck.eq(d.at("B"), Rational(-2), "disc(pi)[B]");
  ck.eq(d.at("E1"), Rational(-1), "disc(pi)[E1]");

  const auto pit = Contraction::make(testing::model_Xt(), {"B", "E1", "E3", "E4"}, "pit");
  const auto dt = discrepancies(pit);
  ck.eq(dt.at("B"), Rational(-12, 5), "disc(pit)[B]");
  ck.eq(dt.at("E1"), Rational(-6, 5), "disc(pit)[E1]");
  ck.eq(dt.at("E3"), Rational(-8, 5), "disc(pit)[E3]");
  ck.eq(dt.at("E4"), Rational(-4, 5), "disc(pit)[E4]");

  // (K - sum a_i C_i).C_j = 0 written out by hand
  using Eq = std::pair<Rational, std::map<std::string, Rational>>;
  const std::map<std::string, Eq> want{
      {"B", {2, {{"B", 2}, {"E1", -1}, {"E3", -1}}}},
      {"E1", {0, {{"B", -1}, {"E1", 2}}}},
      {"E3", {0, {{"B", -1}, {"E3", 2}, {"E4", -1}}}},
      {"E4", {0, {{"E3", -1}, {"E4", 2}}}},
  };
  const auto eqs = orthogonality_equations(pit);
  ck.eq(eqs.size(), want.size(), "number of orthogonality equations");
  for (const auto& f : eqs) {
    const auto it = want.find(f.curve);
    if (it == want.end()) {
      ck(false, "unexpected orthogonality equation for " + f.curve);
      continue;
    }
    ck.eq(f.constant, it->second.first, "orthogonality constant for " + f.curve);
    ck(as_map(f.coeffs) == it->second.second, "orthogonality coefficients for " + f.curve + ": " + f.str());
    // the discrepancies satisfy the equation
    Rational v = f.constant;
    for (const auto& [n, k] : f.coeffs) v += k * dt.at(n);
    ck.eq(v, Rational(0), "discrepancies satisfy equation for " + f.curve);
  }
}

RelationSet with_7e() {
  RelationSet r;
  r.add(testing::relation_7e());
  return r;
}

void q_gorenstein(Checker& ck) {
  const auto pi = Contraction::make(testing::model_X(), {"B", "E1"}, "pi");
  const auto v = q_gorenstein_test(pi, RelationSet{});
  ck(v.verdict == Verdict::no, "qgor(pi) is false");
  ck.eq(v.obstructions.at("B"), sym("e"), "obstruction(pi)[B]");

  const auto pit = Contraction::make(testing::model_Xt(), {"B", "E1", "E3", "E4"}, "pit");
  const auto vt = q_gorenstein_test(pit, RelationSet{});
  ck(vt.verdict == Verdict::no, "qgor(pit) without relation is false");
  const Pic0Class want = Rational(1, 5) * (sym("e", 7) - sym("xi_x") + sym("xi_xp"));
  ck.eq(vt.obstructions.at("B"), want, "obstruction(pit)[B]");

  const auto vr = q_gorenstein_test(pit, with_7e());
  ck(vr.verdict == Verdict::yes, "qgor(pit) with xi_x - xi_xp = 7e is true");
  ck(vr.obstructions.at("B").is_zero(), "obstruction vanishes under the relation");
}

void mmp_on_yt(Checker& ck) {
  const auto xt = testing::model_Xt().with_relations(with_7e());
  const auto pit = Contraction::make(xt, {"B", "E1", "E3", "E4"}, "pit");
  ck.eq(target_intersect(pit, xt.canonical_expr(), c("E5")), Rational(-1, 5), "K_Yt.E5");
  ck.eq(target_intersect(pit, c("E5"), c("E5")), Rational(-1, 5), "E5^2 on Yt");

  const auto step = mmp_step(pit);
  ck(step.kind == MmpOutcome::Kind::contraction, "mmp step on Yt is a divisorial contraction: " + step.str());
  ck(step.curves == std::vector<std::string>{"E5"}, "mmp step contracts E5");
  ck.eq(step.k_dot, Rational(-1, 5), "step K-degree");
  ck.eq(step.self_dot, Rational(-1, 5), "step self-intersection");

  const auto y = compose(pit, step, "Y");
  ck(y.contracted() == std::vector<std::string>{"B", "E1", "E3", "E4", "E5"}, "composite contracted set");
  const auto vy = q_gorenstein_test(y, with_7e());
  ck(vy.verdict == Verdict::no, "qgor(Y) is false");

  // the composite is Y: on the curves surviving from X, pairings agree with pi
  const auto pi = Contraction::make(testing::model_X(), {"B", "E1"}, "pi");
  const std::vector<std::string> common{"Bp", "F", "Fp", "E2"};
  const auto x = pi.source();
  for (const auto& a : common)
    for (const auto& b : common) {
      const CurveExpr ax = c(a), bx = c(b);
      const CurveExpr at = xt.total_pullback(x, ax), bt = xt.total_pullback(x, bx);
      ck.eq(target_intersect(y, at, bt), target_intersect(pi, ax, bx), "Y pairing " + a + "." + b);
    }
  ck.eq(vy.obstructions.at("B"), q_gorenstein_test(pi).obstructions.at("B"), "Y obstruction matches pi");
}

void cover(Checker& ck) {
  const auto pi = Contraction::make(testing::model_X(), {"B", "E1"}, "pi");
  const auto& x = pi.source();
  const CurveExpr ky = mumford_pullback(pi, x.canonical_expr());
  ck(lin_equiv(x.evaluate(ky), x.evaluate(CurveExpr::pull(sym("e"))), RelationSet{}), "pi^*K_Y ~ p^*e");
  // numerically trivial, hence nef
  ck(x.evaluate(ky).numerically_trivial(), "pi^*K_Y is numerically trivial");

  const CurveExpr h = c("Bp", 3) + c("F");
  const auto sa = semi_ample_certificate(x, h, {{"B", 4}, {"E1", 2}}, 1,
                                         {base(1, 1, sym("e", -3)), {{"B", 2}, {"E1", 1}}},
                                         {base(1, 1, sym("e", -4)), {}});
  ck(sa.pass(), "semi-ample certificate for 3B'+F");
  const auto ample = descend_divisor(pi, h, &sa);
  ck(ample.ample, "3B'+F descends to an ample class");

  const CoverSpec spec{2, ample.scaled(2), pi, Characteristic::zero};
  const auto kz = cover_canonical_class(spec);
  ck.eq(kz.degree, 2, "cover degree");
  ck.eq(kz.branch_coeff, Rational(1, 2), "branch coefficient");
  ck.eq(kz.str(), std::string("g*(K_Y + 1/2*A)"), "cover canonical class");

  const auto qy = q_gorenstein_test(pi, RelationSet{});
  const auto flags = cover_flags(kz, qy);
  const auto fz = fg_verdict(flags);
  ck(fz.finitely_generated == FgAnswer::no, std::string("fg(Z) = no, got ") + to_string(fz.finitely_generated));

  const auto pit = Contraction::make(testing::model_Xt(), {"B", "E1", "E3", "E4"}, "pit");
  const auto node = fiber_product(q_gorenstein_test(pit, with_7e()), fz, flags);
  ck(node.q_gorenstein == Verdict::yes, "qgor(Zt) = true");
  ck(node.finitely_generated == FgAnswer::no, "fg(Zt) = no");
}

// --- property suites --------------------------------------------------------

std::vector<SurfaceModel> chain() {
  return {testing::ruled_S(), testing::model_X1(), testing::model_X(),
          testing::model_X3(), testing::model_X4(), testing::model_Xt()};
}

void properties(Checker& ck) {
  Rng rng(20261016);
  const auto models = chain();

  // adjunction: K.C + C^2 = 2g - 2 for every tracked curve after every step
  for (const auto& m : models) {
    ck(m.consistency_violations().empty(), "consistency after " + std::to_string(m.blowup_count()) + " blow-ups");
    for (const auto& cur : m.curves()) {
      const Rational lhs = testing::oracle_dot(m.canonical(), cur.cls) + testing::oracle_dot(cur.cls, cur.cls);
      ck.eq(lhs, Rational(2 * cur.genus - 2), "adjunction for " + cur.name);
    }
  }

  // projection formula: phi^*a . b = a . phi_*b
  for (std::size_t i = 1; i < models.size(); ++i) {
    const auto& hi = models[i];
    const auto& lo = models[i - 1];
    for (int t = 0; t < 100; ++t) {
      const CurveExpr a = rng.curve_expr(lo);
      const DivClass b = rng.div_class(hi.blowup_count());
      DivClass pushed = b;
      pushed.exc.resize(lo.blowup_count());
      const DivClass up = hi.evaluate(hi.total_pullback(lo, a));
      if (!(up == lo.evaluate(a).extended(hi.blowup_count()))) {
        ck(false, "total pullback disagrees with zero padding");
        break;
      }
      if (!(testing::oracle_dot(up, b) == testing::oracle_dot(lo.evaluate(a), pushed))) {
        ck(false, "projection formula on model " + std::to_string(i));
        break;
      }
    }
  }

  // Mumford pullback: orthogonal, matches an independent solve, linear
  const std::vector<Contraction> cons{
      Contraction::make(testing::model_X(), {"B", "E1"}),
      Contraction::make(testing::model_Xt(), {"B", "E1", "E3", "E4"}),
      Contraction::make(testing::model_Xt(), {"B", "E1", "E3", "E4", "E5"}),
  };
  for (const auto& con : cons) {
    const auto& m = con.source();
    for (int t = 0; t < 100; ++t) {
      const CurveExpr d1 = rng.curve_expr(m), d2 = rng.curve_expr(m);
      const Rational s1 = rng.rational(), s2 = rng.rational();
      const CurveExpr m1 = mumford_pullback(con, d1);
      bool ok = m.evaluate(m1) == m.evaluate(testing::oracle_mumford(m, con.contracted(), d1));
      for (const auto& n : con.contracted()) ok = ok && testing::oracle_dot(m.evaluate(m1), m.curve(n).cls).is_zero();
      const DivClass lin = m.evaluate(mumford_pullback(con, s1 * d1 + s2 * d2));
      ok = ok && lin == s1 * m.evaluate(m1) + s2 * m.evaluate(mumford_pullback(con, d2));
      if (!ok) {
        ck(false, "Mumford pullback property on " + std::to_string(con.contracted().size()) + " curves");
        break;
      }
    }
  }

  // obstruction invariance: K + P with P ~ 0 restricts to the same reduced class
  {
    const RelationSet rels = with_7e();
    const auto s = testing::ruled_S();
    const auto xt = testing::model_Xt();
    const auto pit = Contraction::make(xt, {"B", "E1", "E3", "E4"});
    const Pic0Class base_obs = q_gorenstein_test(pit, rels).obstructions.at("B");
    const CurveExpr n1 = xt.total_pullback(s, c("Bp")) - xt.total_pullback(s, c("B") - CurveExpr::pull(sym("e")));
    const CurveExpr n2 = xt.total_pullback(s, c("F")) - xt.total_pullback(s, c("Fp")) -
                         CurveExpr::pull(sym("xi_x") - sym("xi_xp"));
    const CurveExpr n3 = CurveExpr::pull(testing::relation_7e());
    for (int t = 0; t < 20; ++t) {
      const CurveExpr p = rng.rational() * n1 + rng.rational() * n2 + rng.rational() * n3;
      const DivClass pc = xt.evaluate(p);
      ck(pc.numerically_trivial() && rels.reduce(pc.pic0).is_zero(), "perturbation is ~ 0");
      const CurveExpr pulled = mumford_pullback(pit, xt.canonical_expr() + p);
      const auto r = xt.restrict_to_curve(pulled, "B");
      ck(r.pic0.has_value() && rels.reduce(*r.pic0) == base_obs, "obstruction invariant under perturbation");
      // without the relation the unreduced obstruction moves only by multiples of it
      const Pic0Class raw = *xt.restrict_to_curve(mumford_pullback(pit, xt.canonical_expr() + p), "B").pic0;
      ck(rels.reduce(raw - *xt.restrict_to_curve(mumford_pullback(pit, xt.canonical_expr()), "B").pic0).is_zero(),
         "raw obstruction differs by a relation");
    }
  }

  // negative definiteness against all principal minors
  for (int t = 0; t < 400; ++t) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 4));
    QMatrix m = rng.symmetric(n);
    if (t % 3 == 0)
      for (std::size_t i = 0; i < n; ++i) m(i, i) -= Rational(rng.integer(2, 8));
    if (is_negative_definite(m) != testing::oracle_negative_definite(m)) {
      ck(false, "negdef disagrees with the minors oracle");
      break;
    }
  }

  // DSL round trip on fixtures, then random input must not crash
  for (const auto& name : builtin_names()) {
    const auto g = builtin(name);
    const auto again = dsl::parse(dsl::print(g.script));
    ck(again.ok() && *again.script == g.script, "round trip " + name);
  }
  for (int t = 0; t < 300; ++t) {
    std::string text;
    const int n = rng.integer(0, 160);
    for (int i = 0; i < n; ++i) text.push_back(static_cast<char>(rng.integer(1, 127)));
    try {
      const auto r = dsl::parse(text);
      if (r.ok()) (void)dsl::execute_text(text, "fuzz");
    } catch (...) {
      ck(false, "parser threw on random input");
      break;
    }
  }
}

// --- CLI --------------------------------------------------------------------

int run(const std::string& cmd) {
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void cli(Checker& ck) {
  namespace fs = std::filesystem;
  const std::string exe = SURFCALC_PATH;
  const fs::path dir = fs::temp_directory_path() / ("surf_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  ck.eq(run(exe + " verify all > " + (dir / "all.out").string() + " 2>&1"), 0, "verify all exit code");

  std::string text = slurp(fs::path(SURF_SCENARIO_DIR) / "section4_X.surf");
  const std::string from = "assert D.D == 4";
  const auto at = text.find(from);
  ck(at != std::string::npos, "fixture contains the (3B'+F)^2 assertion");
  if (at != std::string::npos) {
    text.replace(at, from.size(), "assert D.D == 5");
    std::ofstream(dir / "corrupt.surf") << text;
    const fs::path err = dir / "corrupt.err";
    ck.eq(run(exe + " run " + (dir / "corrupt.surf").string() + " > /dev/null 2> " + err.string()), 1,
          "corrupted golden exit code");
    const std::string diag = slurp(err);
    ck(diag.find("expected 5") != std::string::npos && diag.find("got 4") != std::string::npos,
       "corrupted golden prints expected vs actual: " + diag);
  }

  std::ofstream(dir / "bad.surf") << "base C pic0 e points x, xp;\nblowup E1 at B F;\n";
  ck.eq(run(exe + " run " + (dir / "bad.surf").string() + " > /dev/null 2>&1"), 2, "malformed script exit code");

  fs::remove_all(dir);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria{
      {"lattice values on S, X and Xt", lattice},
      {"linear equivalences and certificate decompositions", linear_equivalences},
      {"discrepancies and orthogonality equations", discrepancy_values},
      {"Q-Gorenstein verdicts and obstructions", q_gorenstein},
      {"MMP step on Yt lands on Y", mmp_on_yt},
      {"Mumford nef K_Y, cover class and finite generation", cover},
      {"property suites", properties},
      {"CLI exit codes", cli},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checker ck;
    try {
      criteria[i].second(ck);
    } catch (const std::exception& e) {
      ck.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = ck.failures.empty();
    failed += !ok;
    std::cout << "criterion " << i + 1 << ": " << (ok ? "PASS" : "FAIL") << " - " << criteria[i].first << "\n";
    for (const auto& f : ck.failures) std::cout << "    " << f << "\n";
  }
  return failed;
}
