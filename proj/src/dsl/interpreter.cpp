#include "surf/dsl/interpreter.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <variant>
#include <vector>

#include "surf/contraction.hpp"
#include "surf/cover.hpp"
#include "surf/dsl/parser.hpp"
#include "surf/dsl/printer.hpp"
#include "surf/error.hpp"
#include "surf/positivity.hpp"

namespace surf::dsl {

namespace {

struct CurveName {
  std::string name;
};
struct BaseCurve {
  std::string name;
};
struct Divisor {
  std::size_t surface = 0;
  CurveExpr expr;
};
struct CurveSet {
  std::vector<std::string> names;
};
struct SurfaceRef {
  std::size_t index = 0;
};
struct ContractionRef {
  std::size_t index = 0;
};
struct CoverRef {
  std::size_t index = 0;
};
struct Equations {
  std::vector<AffineForm> forms;
};
struct SemiAmple {
  std::size_t surface = 0;
  SemiAmpleReport report;
};
struct Descended {
  std::size_t contraction = 0;
  DescendedClass cls;
};
struct Mmp {
  std::optional<std::size_t> contraction;
  MmpOutcome outcome;
};
struct Obstructions {
  QGorensteinVerdict verdict;
};
struct Fiber {
  FiberProductNode node;
};

using Value = std::variant<Rational, bool, std::string, Pic0Class, CurveName, BaseCurve, Divisor, CurveSet,
                           SurfaceRef, ContractionRef, CoverRef, Restriction, DiscrepancyVector, Obstructions,
                           NefCertificate, SemiAmple, Descended, Mmp, CoverCanonical, FGVerdict, Fiber, Equations>;

struct CoverRecord {
  std::size_t base = 0;
  CoverCanonical canonical;
  FgFlags flags;
  FGVerdict verdict;
};

std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string verdict_text(Verdict v) {
  if (v == Verdict::yes) return "true";
  if (v == Verdict::no) return "false";
  return "unknown";
}

Value verdict_value(Verdict v) {
  if (v == Verdict::unknown) return std::string("unknown");
  return v == Verdict::yes;
}

class Interpreter {
 public:
  explicit Interpreter(std::string scenario) { report_.scenario = std::move(scenario); }

  Report run(const Script& script) {
    for (const Stmt& s : script.statements) {
      line_ = s.pos.line;
      try {
        exec(s);
      } catch (const Error& e) {
        if (s.kind == Stmt::Kind::assert_ && e.code() != ErrorCode::usage) {
          CheckResult r;
          r.line = s.pos.line;
          r.query = assert_text(s);
          r.value = "error";
          r.expected = s.rhs ? print(*s.rhs) : "true";
          r.pass = false;
          r.citation = s.citation.value_or("");
          r.error = std::string(to_string(e.code())) + ": " + e.what();
          report_.results.push_back(std::move(r));
          continue;
        }
        fail(s, std::string(to_string(e.code())) + ": " + e.what());
        break;
      } catch (const std::exception& e) {
        fail(s, e.what());
        break;
      }
    }
    return std::move(report_);
  }

 private:
  Report report_;
  int line_ = 0;
  std::map<std::string, Value> env_;
  RelationSet rels_;
  std::vector<std::string> pic0_generators_;
  std::vector<std::string> base_points_;
  std::string base_curve_;
  std::vector<SurfaceModel> surfaces_;
  std::vector<Contraction> contractions_;
  std::vector<CoverRecord> covers_;

  void fail(const Stmt& s, const std::string& msg) {
    report_.errors.push_back("line " + std::to_string(s.pos.line) + ": " + msg);
  }

  [[noreturn]] static void usage(const std::string& msg) { throw Error(ErrorCode::usage, msg); }

  static std::string assert_text(const Stmt& s) {
    std::string t = print(*s.lhs);
    if (s.rhs) {
      const char* op = s.op == Stmt::Op::eq ? " == " : (s.op == Stmt::Op::ne ? " != " : " ~ ");
      t += op + print(*s.rhs);
    }
    return t;
  }

  // ---- model access ------------------------------------------------------

  std::size_t current() const {
    if (surfaces_.empty()) usage("no surface has been declared");
    return surfaces_.size() - 1;
  }
  SurfaceModel model(std::size_t i) const { return surfaces_.at(i).with_relations(rels_); }
  Contraction contraction(std::size_t i) const { return contractions_.at(i).with_relations(rels_); }
  std::size_t source_index(const Contraction& c) const {
    return c.source().blowup_count();  // surfaces form one blow-up chain
  }

  void note_axioms(const std::vector<std::string>& axioms) {
    for (const auto& a : axioms) {
      if (std::find(report_.axioms_used.begin(), report_.axioms_used.end(), a) == report_.axioms_used.end())
        report_.axioms_used.push_back(a);
      report_.axiom_invocations.push_back({a, line_});
    }
  }

  // ---- value coercions ---------------------------------------------------

  static const char* type_name(const Value& v) {
    static const char* names[] = {"number",      "boolean",       "string",       "pic0 class",
                                  "curve",       "base curve",    "divisor",      "curve set",
                                  "surface",     "contraction",   "cover",        "restriction",
                                  "discrepancies", "obstructions", "certificate", "semi-ample report",
                                  "descended class", "mmp outcome", "cover canonical class", "fg verdict",
                                  "fiber product", "equations"};
    return names[v.index()];
  }

  template <class T>
  static const T& as(const Value& v, const char* what) {
    if (const T* p = std::get_if<T>(&v)) return *p;
    usage(std::string(what) + " expected, got " + type_name(v));
  }

  Divisor lift(const Divisor& d, std::size_t to) const {
    if (d.surface == to) return d;
    if (d.surface > to) usage("divisor lives on a later blow-up than the requested surface");
    return {to, surfaces_[to].total_pullback(surfaces_[d.surface], d.expr)};
  }

  /// Divisor on surface ctx. Curves resolve on ctx; earlier divisors are pulled back.
  Divisor divisor(const Value& v, std::size_t ctx) const {
    if (const auto* d = std::get_if<Divisor>(&v)) return lift(*d, ctx);
    if (const auto* c = std::get_if<CurveName>(&v)) return curve_divisor(c->name, ctx);
    if (const auto* r = std::get_if<Rational>(&v)) {
      if (r->is_zero()) return {ctx, CurveExpr{}};
    }
    if (const auto* d = std::get_if<Descended>(&v)) {
      const std::size_t src = source_index(contractions_[d->contraction]);
      return lift({src, d->cls.representative}, ctx);
    }
    usage(std::string("divisor expected, got ") + type_name(v));
  }

  Divisor curve_divisor(const std::string& name, std::size_t ctx) const {
    if (!surfaces_.at(ctx).has_curve(name)) usage("curve " + name + " does not exist on this surface");
    return {ctx, CurveExpr::curve(name)};
  }

  static WeightedCurves weighted(const Divisor& d, const char* what) {
    if (!d.expr.pullback.is_zero()) usage(std::string(what) + " must be a combination of curves");
    WeightedCurves out(d.expr.curves.begin(), d.expr.curves.end());
    return out;
  }

  // ---- evaluation --------------------------------------------------------

  Value eval(const Expr& e, std::optional<std::size_t> ctx_opt = std::nullopt) {
    auto ctx = [&] { return ctx_opt ? *ctx_opt : current(); };
    switch (e.kind) {
      case Expr::Kind::number: return e.value;
      case Expr::Kind::string: return e.text;
      case Expr::Kind::boolean: return e.flag;
      case Expr::Kind::ident: {
        if (e.text == "K") {
          const std::size_t c = ctx();
          return Divisor{c, surfaces_[c].canonical_expr()};
        }
        auto it = env_.find(e.text);
        if (it == env_.end()) usage("undefined name " + e.text);
        if (const auto* c = std::get_if<CurveName>(&it->second)) {
          const std::size_t i = ctx();
          if (surfaces_[i].has_curve(c->name)) return curve_divisor(c->name, i);
          return it->second;
        }
        return it->second;
      }
      case Expr::Kind::neg: return scale(Rational(-1), eval(*e.args[0], ctx_opt));
      case Expr::Kind::add:
      case Expr::Kind::sub: {
        Value a = eval(*e.args[0], ctx_opt);
        Value b = eval(*e.args[1], ctx_opt);
        if (e.kind == Expr::Kind::sub) b = scale(Rational(-1), b);
        return add(a, b);
      }
      case Expr::Kind::mul: {
        Value a = eval(*e.args[0], ctx_opt);
        Value b = eval(*e.args[1], ctx_opt);
        if (const auto* r = std::get_if<Rational>(&a)) return scale(*r, b);
        if (const auto* r = std::get_if<Rational>(&b)) return scale(*r, a);
        usage("product needs a numeric factor");
      }
      case Expr::Kind::dot: return dot(e, ctx_opt);
      case Expr::Kind::pullback: {
        const Value v = eval(*e.args[0], ctx_opt);
        return Divisor{ctx(), CurveExpr::pull(as<Pic0Class>(v, "pic0 class"))};
      }
      case Expr::Kind::set: return CurveSet{e.names};
      case Expr::Kind::index: return index(eval(*e.args[0], ctx_opt), e.text);
      case Expr::Kind::call: return call(e, ctx_opt);
    }
    usage("unsupported expression");
  }

  Value scale(const Rational& s, const Value& v) {
    if (const auto* r = std::get_if<Rational>(&v)) return s * *r;
    if (const auto* p = std::get_if<Pic0Class>(&v)) return s * *p;
    if (const auto* d = std::get_if<Descended>(&v)) return Descended{d->contraction, d->cls.scaled(s)};
    if (std::holds_alternative<Divisor>(v) || std::holds_alternative<CurveName>(v)) {
      Divisor d = divisor(v, std::holds_alternative<Divisor>(v) ? std::get<Divisor>(v).surface : current());
      d.expr *= s;
      return d;
    }
    usage(std::string("cannot scale a ") + type_name(v));
  }

  Value add(const Value& a, const Value& b) {
    if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b))
      return std::get<Rational>(a) + std::get<Rational>(b);
    if (std::holds_alternative<Pic0Class>(a) && std::holds_alternative<Pic0Class>(b))
      return std::get<Pic0Class>(a) + std::get<Pic0Class>(b);
    if (std::holds_alternative<Descended>(a) && std::holds_alternative<Descended>(b)) {
      const auto& x = std::get<Descended>(a);
      const auto& y = std::get<Descended>(b);
      if (x.contraction != y.contraction) usage("descended classes live on different contractions");
      Descended out = x;
      out.cls.representative += y.cls.representative;
      const Contraction c = contraction(x.contraction);
      out.cls.numerically_trivial = c.source().evaluate(out.cls.representative).numerically_trivial();
      out.cls.ample = (x.cls.ample && (y.cls.ample || y.cls.numerically_trivial)) ||
                      (y.cls.ample && x.cls.numerically_trivial);
      return out;
    }
    auto surface_of = [&](const Value& v) -> std::optional<std::size_t> {
      if (const auto* d = std::get_if<Divisor>(&v)) return d->surface;
      if (std::holds_alternative<CurveName>(v)) return current();
      return std::nullopt;
    };
    const auto sa = surface_of(a);
    const auto sb = surface_of(b);
    if (sa && sb) {
      const std::size_t to = std::max(*sa, *sb);
      Divisor x = divisor(a, to);
      x.expr += divisor(b, to).expr;
      return x;
    }
    usage(std::string("cannot add ") + type_name(a) + " and " + type_name(b));
  }

  Value dot(const Expr& e, std::optional<std::size_t> ctx_opt) {
    if (e.at) {
      const Contraction c = contraction(as<ContractionRef>(lookup(*e.at), "contraction").index);
      const std::size_t src = source_index(c);
      const Divisor a = divisor(eval(*e.args[0], src), src);
      const Divisor b = divisor(eval(*e.args[1], src), src);
      return target_intersect(c, a.expr, b.expr);
    }
    const Value va = eval(*e.args[0], ctx_opt);
    const Value vb = eval(*e.args[1], ctx_opt);
    const auto* da = std::get_if<Descended>(&va);
    const auto* db = std::get_if<Descended>(&vb);
    if (da && db) {
      if (da->contraction != db->contraction) usage("descended classes live on different contractions");
      return target_intersect(contraction(da->contraction), da->cls.representative, db->cls.representative);
    }
    std::size_t to = ctx_opt ? *ctx_opt : current();
    for (const Value* v : {&va, &vb})
      if (const auto* d = std::get_if<Divisor>(v)) to = std::max(to, d->surface);
    const Divisor a = divisor(va, to);
    const Divisor b = divisor(vb, to);
    return surfaces_[to].intersect(a.expr, b.expr);
  }

  const Value& lookup(const std::string& name) const {
    auto it = env_.find(name);
    if (it == env_.end()) usage("undefined name " + name);
    return it->second;
  }

  std::string curve_arg(const Expr& e) const {
    if (e.kind != Expr::Kind::ident) usage("curve name expected");
    const Value& v = lookup(e.text);
    if (!std::holds_alternative<CurveName>(v)) usage(e.text + " is not a curve");
    return e.text;
  }

  Value index(const Value& v, const std::string& field) {
    if (const auto* d = std::get_if<DiscrepancyVector>(&v)) return d->at(field);
    if (const auto* o = std::get_if<Obstructions>(&v)) {
      auto it = o->verdict.obstructions.find(field);
      if (it != o->verdict.obstructions.end()) return it->second;
      if (o->verdict.verdict == Verdict::unknown)
        throw Error(ErrorCode::obstruction_not_computable, "no obstruction computed for " + field);
      usage(field + " is not a contracted genus-1 curve");
    }
    if (const auto* r = std::get_if<Restriction>(&v)) {
      if (field == "deg") return r->degree;
      if (field == "pic") return r->value().pic0;
      usage("restriction fields are deg and pic");
    }
    if (const auto* s = std::get_if<SemiAmple>(&v)) {
      if (field == "pass") return s->report.pass();
      if (field == "zero_locus") return CurveSet{s->report.zero_locus};
      if (field == "nklt") return CurveSet{s->report.nklt};
      if (field == "numtriv") return s->report.numerically_trivial_flag;
      auto it = s->report.checks.find(field);
      if (it != s->report.checks.end()) return it->second;
      usage("unknown semi-ample report field " + field);
    }
    if (const auto* d = std::get_if<Descended>(&v)) {
      if (field == "ample") return d->cls.ample;
      if (field == "trivial") return d->cls.numerically_trivial;
      usage("descended class fields are ample and trivial");
    }
    if (const auto* k = std::get_if<CoverCanonical>(&v)) {
      if (field == "coeff") return k->branch_coeff;
      if (field == "nef") return k->nef;
      if (field == "big") return k->big;
      if (field == "square") return k->log_square;
      usage("cover canonical class fields are coeff, nef, big and square");
    }
    if (const auto* f = std::get_if<FGVerdict>(&v)) {
      if (field == "answer") return std::string(to_string(f->finitely_generated));
      if (field == "rule") return std::string(to_string(f->rule_applied));
      auto it = f->inputs.find(field);
      if (it != f->inputs.end()) return it->second;
      usage("unknown fg verdict field " + field);
    }
    if (const auto* n = std::get_if<Fiber>(&v)) {
      if (field == "qgor") return verdict_value(n->node.q_gorenstein);
      if (field == "fg") return std::string(to_string(n->node.finitely_generated));
      if (field == "kappa2") return n->node.kappa_two;
      usage("fiber product fields are qgor, fg and kappa2");
    }
    if (const auto* q = std::get_if<Equations>(&v)) {
      for (const auto& f : q->forms)
        if (f.curve == field) return f.str();
      usage("no orthogonality equation for " + field);
    }
    if (const auto* m = std::get_if<Mmp>(&v)) {
      if (field == "kdot") return m->outcome.k_dot;
      if (field == "selfdot") return m->outcome.self_dot;
      if (field == "kind") {
        const std::string s = m->outcome.str();
        return s.substr(0, s.find('('));
      }
      usage("mmp fields are kdot, selfdot and kind");
    }
    usage(std::string("cannot index a ") + type_name(v));
  }

  std::size_t arity(const Expr& e, std::size_t lo, std::size_t hi) const {
    if (e.args.size() < lo || e.args.size() > hi)
      usage(e.text + " takes " + std::to_string(lo) + (lo == hi ? "" : "-" + std::to_string(hi)) + " arguments");
    return e.args.size();
  }

  std::size_t contraction_arg(const Expr& e) { return as<ContractionRef>(eval(e), "contraction").index; }

  NefCertificate certificate_arg(const Expr& e) { return as<NefCertificate>(eval(e), "certificate"); }

  Value call(const Expr& e, std::optional<std::size_t> ctx_opt) {
    const std::string& f = e.text;
    const std::size_t ctx = ctx_opt ? *ctx_opt : current();

    if (f == "disc") {
      arity(e, 1, 1);
      return discrepancies(contraction(contraction_arg(*e.args[0])));
    }
    if (f == "obstruction" || f == "qgor") {
      arity(e, 1, 1);
      const Contraction c = contraction(contraction_arg(*e.args[0]));
      QGorensteinVerdict v = q_gorenstein_test(c, rels_);
      if (f == "qgor") return verdict_value(v.verdict);
      return Obstructions{std::move(v)};
    }
    if (f == "sing") {
      arity(e, 1, 1);
      return std::string(to_string(classify_singularity(discrepancies(contraction(contraction_arg(*e.args[0]))))));
    }
    if (f == "orth") {
      arity(e, 1, 1);
      return Equations{orthogonality_equations(contraction(contraction_arg(*e.args[0])))};
    }
    if (f == "contracted") {
      arity(e, 1, 1);
      return CurveSet{contractions_[contraction_arg(*e.args[0])].contracted()};
    }
    if (f == "nef") {
      const std::size_t n = arity(e, 1, 2);
      const Divisor d = divisor(eval(*e.args[0], ctx_opt), ctx);
      const SurfaceModel m = model(ctx);
      if (n == 1) return nef_on_tracked(m, m.evaluate(d.expr));
      const NefCheck chk = nef_with_certificate(m, m.evaluate(d.expr), certificate_arg(*e.args[1]));
      note_axioms(chk.axioms_used);
      return chk.nef;
    }
    if (f == "big") {
      arity(e, 1, 1);
      const Value v = eval(*e.args[0], ctx_opt);
      if (const auto* d = std::get_if<Descended>(&v)) {
        const Contraction c = contraction(d->contraction);
        return target_intersect(c, d->cls.representative, d->cls.representative).sign() > 0;
      }
      const Divisor d = divisor(v, ctx);
      const SurfaceModel m = model(ctx);
      return is_big_given_nef(m, m.evaluate(d.expr));
    }
    if (f == "numtriv") {
      arity(e, 1, 1);
      const Value v = eval(*e.args[0], ctx_opt);
      if (const auto* d = std::get_if<Descended>(&v)) return d->cls.numerically_trivial;
      const Divisor d = divisor(v, ctx);
      return surfaces_[ctx].evaluate(d.expr).numerically_trivial();
    }
    if (f == "negdef") {
      arity(e, 1, 1);
      const Value v = eval(*e.args[0], ctx_opt);
      if (const auto* c = std::get_if<ContractionRef>(&v)) return is_negative_definite(contractions_[c->index].gram());
      const auto& set = as<CurveSet>(v, "curve set");
      return is_negative_definite(gram_matrix(surfaces_[ctx], set.names));
    }
    if (f == "nklt") {
      arity(e, 1, 1);
      const Divisor d = divisor(eval(*e.args[0], ctx_opt), ctx);
      return CurveSet{nklt_locus(surfaces_[ctx], weighted(d, "boundary"))};
    }
    if (f == "zerolocus") {
      arity(e, 1, 1);
      const Divisor d = divisor(eval(*e.args[0], ctx_opt), ctx);
      return CurveSet{zero_locus(surfaces_[ctx], surfaces_[ctx].evaluate(d.expr))};
    }
    if (f == "cert") {
      const std::size_t n = arity(e, 2, 3);
      const std::size_t s = as<SurfaceRef>(eval(*e.args[0]), "surface").index;
      if (surfaces_[s].blowup_count() != 0) usage("certificate base must be given on the ruled surface");
      NefCertificate c;
      c.base = surfaces_[s].evaluate(divisor(eval(*e.args[1], s), s).expr);
      if (n == 3) c.effective = weighted(divisor(eval(*e.args[2], ctx_opt), ctx), "effective part");
      return c;
    }
    if (f == "semiample") {
      arity(e, 5, 5);
      const Divisor d = divisor(eval(*e.args[0], ctx_opt), ctx);
      const WeightedCurves delta = weighted(divisor(eval(*e.args[1], ctx_opt), ctx), "boundary");
      const Rational a = as<Rational>(eval(*e.args[2]), "number");
      if (!a.is_integer() || a.sign() <= 0 || a > Rational(1 << 20)) usage("semiample multiple must be a positive integer");
      const SemiAmpleReport r = semi_ample_certificate(model(ctx), d.expr, delta, std::stoi(a.str()),
                                                       certificate_arg(*e.args[3]), certificate_arg(*e.args[4]));
      note_axioms(r.axioms_used);
      return SemiAmple{ctx, r};
    }
    if (f == "descend") {
      const std::size_t n = arity(e, 2, 3);
      const std::size_t ci = contraction_arg(*e.args[0]);
      const Contraction c = contraction(ci);
      const std::size_t src = source_index(c);
      const Divisor d = divisor(eval(*e.args[1], src), src);
      std::optional<SemiAmple> sa;
      if (n == 3) {
        sa = as<SemiAmple>(eval(*e.args[2]), "semi-ample report");
        if (sa->surface != src) usage("semi-ample report lives on a different surface");
      }
      return Descended{ci, descend_divisor(c, d.expr, sa ? &sa->report : nullptr)};
    }
    if (f == "mumford") {
      arity(e, 2, 2);
      const Contraction c = contraction(contraction_arg(*e.args[0]));
      const std::size_t src = source_index(c);
      const Divisor d = divisor(eval(*e.args[1], src), src);
      return Divisor{src, mumford_pullback(c, d.expr)};
    }
    if (f == "pull") {
      arity(e, 2, 2);
      const std::size_t s = as<SurfaceRef>(eval(*e.args[0]), "surface").index;
      if (s > ctx) usage("pull: source surface is not an ancestor");
      return lift(divisor(eval(*e.args[1], s), s), ctx);
    }
    if (f == "restrict") {
      arity(e, 2, 2);
      const Divisor d = divisor(eval(*e.args[0], ctx_opt), ctx);
      return model(ctx).restrict_to_curve(d.expr, curve_arg(*e.args[1]));
    }
    if (f == "mmp") {
      arity(e, 1, 1);
      const Value v = eval(*e.args[0]);
      if (const auto* c = std::get_if<ContractionRef>(&v)) return Mmp{c->index, mmp_step(contraction(c->index))};
      return Mmp{std::nullopt, mmp_step(model(as<SurfaceRef>(v, "surface or contraction").index))};
    }
    if (f == "composite") {
      arity(e, 2, 2);
      const std::size_t ci = contraction_arg(*e.args[0]);
      const Mmp step = as<Mmp>(eval(*e.args[1]), "mmp outcome");
      if (step.contraction != ci) usage("mmp step was not taken on this contraction");
      contractions_.push_back(compose(contractions_[ci], step.outcome));
      return ContractionRef{contractions_.size() - 1};
    }
    if (f == "canonical" || f == "fg" || f == "fgrule") {
      arity(e, 1, 1);
      const CoverRecord& z = covers_.at(as<CoverRef>(eval(*e.args[0]), "cover").index);
      if (f == "canonical") return z.canonical;
      if (f == "fg") return z.verdict;
      return std::string(to_string(z.verdict.rule_applied));
    }
    if (f == "fiberproduct") {
      arity(e, 2, 2);
      const Contraction c = contraction(contraction_arg(*e.args[0]));
      const CoverRecord& z = covers_.at(as<CoverRef>(eval(*e.args[1]), "cover").index);
      return Fiber{fiber_product(q_gorenstein_test(c, rels_), z.verdict, z.flags)};
    }
    usage("unknown function " + f);
  }

  // ---- rendering and comparison -----------------------------------------

  std::string render(const Value& v) const {
    struct Visitor {
      const Interpreter& self;
      std::string operator()(const Rational& r) const { return r.str(); }
      std::string operator()(bool b) const { return b ? "true" : "false"; }
      std::string operator()(const std::string& s) const { return s; }
      std::string operator()(const Pic0Class& p) const { return self.rels_.reduce(p).str(); }
      std::string operator()(const CurveName& c) const { return c.name; }
      std::string operator()(const BaseCurve& c) const { return c.name; }
      std::string operator()(const Divisor& d) const { return d.expr.str(); }
      std::string operator()(const CurveSet& s) const { return "{" + join(s.names) + "}"; }
      std::string operator()(const SurfaceRef& s) const {
        return "surface with " + std::to_string(self.surfaces_[s.index].blowup_count()) + " blow-ups";
      }
      std::string operator()(const ContractionRef& c) const {
        return "contraction of {" + join(self.contractions_[c.index].contracted()) + "}";
      }
      std::string operator()(const CoverRef& c) const {
        return "cover of degree " + std::to_string(self.covers_[c.index].canonical.degree);
      }
      std::string operator()(const Restriction& r) const {
        return "degree " + r.degree.str() + ", pic0 " + (r.pic0 ? r.pic0->str() : "unknown");
      }
      std::string operator()(const DiscrepancyVector& d) const {
        std::vector<std::string> parts;
        for (const auto& [n, a] : d.coefficients) parts.push_back(n + ": " + a.str());
        return join(parts);
      }
      std::string operator()(const Obstructions& o) const {
        std::vector<std::string> parts;
        for (const auto& [n, p] : o.verdict.obstructions) parts.push_back(n + ": " + p.str());
        if (parts.empty()) return verdict_text(o.verdict.verdict);
        return join(parts);
      }
      std::string operator()(const NefCertificate& c) const {
        std::string s = c.base.str();
        for (const auto& [n, a] : c.effective) s += " + " + a.str() + "*" + n;
        return s;
      }
      std::string operator()(const SemiAmple& s) const {
        if (s.report.pass()) return "pass";
        std::vector<std::string> bad;
        for (const auto& [k, ok] : s.report.checks)
          if (!ok) bad.push_back(k);
        return "fail: " + join(bad);
      }
      std::string operator()(const Descended& d) const {
        return d.cls.representative.str() + (d.cls.ample ? " (ample)" : "") +
               (d.cls.numerically_trivial ? " (numerically trivial)" : "");
      }
      std::string operator()(const Mmp& m) const { return m.outcome.str(); }
      std::string operator()(const CoverCanonical& k) const { return k.str(); }
      std::string operator()(const FGVerdict& f) const { return to_string(f.finitely_generated); }
      std::string operator()(const Fiber& n) const {
        return "qgor=" + verdict_text(n.node.q_gorenstein) + " fg=" + to_string(n.node.finitely_generated);
      }
      std::string operator()(const Equations& q) const {
        std::vector<std::string> parts;
        for (const auto& f : q.forms) parts.push_back(f.curve + ": 0 = " + f.str());
        return join(parts, "; ");
      }
    };
    return std::visit(Visitor{*this}, v);
  }

  bool is_divisorish(const Value& v) const {
    return std::holds_alternative<Divisor>(v) || std::holds_alternative<CurveName>(v);
  }
  static bool is_zero_number(const Value& v) {
    const auto* r = std::get_if<Rational>(&v);
    return r && r->is_zero();
  }

  // Pullback is injective on classes, so comparing on the latest surface is faithful.
  std::pair<DivClass, DivClass> common_classes(const Value& a, const Value& b) const {
    const std::size_t to = current();
    return {surfaces_[to].evaluate(divisor(a, to).expr), surfaces_[to].evaluate(divisor(b, to).expr)};
  }

  bool equal(const Value& a, const Value& b) const {
    const bool sa = std::holds_alternative<std::string>(a);
    const bool sb = std::holds_alternative<std::string>(b);
    if (sa || sb) return render(a) == render(b);
    if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b))
      return std::get<Rational>(a) == std::get<Rational>(b);
    if (std::holds_alternative<bool>(a) && std::holds_alternative<bool>(b)) return std::get<bool>(a) == std::get<bool>(b);
    if (std::holds_alternative<Pic0Class>(a) || std::holds_alternative<Pic0Class>(b)) {
      auto pic = [&](const Value& v) -> Pic0Class {
        if (is_zero_number(v)) return {};
        return as<Pic0Class>(v, "pic0 class");
      };
      return rels_.reduce(pic(a) - pic(b)).is_zero();
    }
    if (std::holds_alternative<Descended>(a) && std::holds_alternative<Descended>(b)) {
      const auto& x = std::get<Descended>(a);
      const auto& y = std::get<Descended>(b);
      if (x.contraction != y.contraction) return false;
      const SurfaceModel& m = contractions_[x.contraction].source();
      return m.evaluate(x.cls.representative) == m.evaluate(y.cls.representative);
    }
    if ((is_divisorish(a) || is_zero_number(a)) && (is_divisorish(b) || is_zero_number(b))) {
      const auto [x, y] = common_classes(a, b);
      return x == y;
    }
    if (std::holds_alternative<CurveSet>(a) && std::holds_alternative<CurveSet>(b)) {
      auto x = std::get<CurveSet>(a).names;
      auto y = std::get<CurveSet>(b).names;
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      return x == y;
    }
    usage(std::string("cannot compare ") + type_name(a) + " with " + type_name(b));
  }

  bool equivalent(const Value& a, const Value& b) const {
    if (std::holds_alternative<Pic0Class>(a) || std::holds_alternative<Pic0Class>(b)) return equal(a, b);
    if (std::holds_alternative<Descended>(a) && std::holds_alternative<Descended>(b)) {
      const auto& x = std::get<Descended>(a);
      const auto& y = std::get<Descended>(b);
      if (x.contraction != y.contraction) return false;
      const SurfaceModel& m = contractions_[x.contraction].source();
      return lin_equiv(m.evaluate(x.cls.representative), m.evaluate(y.cls.representative), rels_);
    }
    if ((is_divisorish(a) || is_zero_number(a)) && (is_divisorish(b) || is_zero_number(b))) {
      const auto [x, y] = common_classes(a, b);
      return lin_equiv(x, y, rels_);
    }
    usage(std::string("'~' compares divisors, got ") + type_name(a) + " and " + type_name(b));
  }

  // ---- statements --------------------------------------------------------

  void bind(const std::string& name, Value v) { env_[name] = std::move(v); }

  void exec(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::base: {
        if (!base_curve_.empty()) usage("only one base curve is supported");
        base_curve_ = s.name;
        pic0_generators_ = s.list;
        base_points_ = s.list2;
        bind(s.name, BaseCurve{s.name});
        for (const auto& g : s.list) bind(g, Pic0Class::symbol(g));
        for (const auto& p : s.list2) {
          bind(p, Pic0Class::symbol(SurfaceModel::point_symbol(p)));
          bind(SurfaceModel::point_symbol(p), Pic0Class::symbol(SurfaceModel::point_symbol(p)));
        }
        return;
      }
      case Stmt::Kind::relation: {
        const Pic0Class l = as<Pic0Class>(eval(*s.lhs), "pic0 class");
        const Pic0Class r = as<Pic0Class>(eval(*s.rhs), "pic0 class");
        rels_.add(l - r);
        return;
      }
      case Stmt::Kind::ruled: {
        if (!surfaces_.empty()) usage("only one ruled surface is supported");
        if (s.target != base_curve_) usage(s.target + " is not the declared base curve");
        RuledSurfaceSpec spec;
        spec.base_curve = base_curve_;
        spec.pic0_generators = pic0_generators_;
        spec.twist = s.list.at(0);
        spec.fiber_points = {s.list2.at(0), s.list2.at(1)};
        for (const auto& p : base_points_)
          if (p != spec.fiber_points[0] && p != spec.fiber_points[1]) spec.extra_points.push_back(p);
        if (std::find(pic0_generators_.begin(), pic0_generators_.end(), spec.twist) == pic0_generators_.end())
          usage("twist " + spec.twist + " is not a declared pic0 generator");
        spec.relations = rels_;
        surfaces_.push_back(SurfaceModel::ruled(spec).with_relations({}));
        bind(s.name, SurfaceRef{0});
        for (const char* c : {"B", "Bp", "F", "Fp"}) bind(c, CurveName{c});
        return;
      }
      case Stmt::Kind::blowup: {
        surfaces_.push_back(surfaces_.at(current()).blow_up(s.center, s.name));
        bind(s.name, CurveName{s.name});
        if (s.alias) bind(*s.alias, SurfaceRef{current()});
        return;
      }
      case Stmt::Kind::divisor:
      case Stmt::Kind::let:
      case Stmt::Kind::verdict: {
        Value v = eval(*s.lhs);
        if (s.kind == Stmt::Kind::divisor) {
          if (std::holds_alternative<CurveName>(v) || is_zero_number(v)) v = divisor(v, current());
          if (!std::holds_alternative<Divisor>(v) && !std::holds_alternative<Descended>(v))
            usage(s.name + " is not a divisor");
        }
        bind(s.name, std::move(v));
        return;
      }
      case Stmt::Kind::contract: {
        const CurveSet set = as<CurveSet>(eval(*s.lhs), "curve set");
        contractions_.push_back(Contraction::make(surfaces_.at(current()), set.names, s.name));
        bind(s.name, ContractionRef{contractions_.size() - 1});
        if (s.alias) bind(*s.alias, ContractionRef{contractions_.size() - 1});
        return;
      }
      case Stmt::Kind::cover: {
        const std::size_t ci = as<ContractionRef>(lookup(s.target), "contraction").index;
        const Value branch = eval(*s.lhs);
        const auto& d = as<Descended>(branch, "descended branch class");
        if (d.contraction != ci) usage("branch class does not live on " + s.target);
        CoverSpec spec;
        spec.degree = s.degree;
        spec.branch = d.cls;
        spec.base = contraction(ci);
        spec.characteristic = s.characteristic == "p" ? Characteristic::positive : Characteristic::zero;
        CoverRecord z;
        z.base = ci;
        z.canonical = cover_canonical_class(spec);
        z.flags = cover_flags(z.canonical, q_gorenstein_test(spec.base, rels_));
        z.verdict = fg_verdict(z.flags);
        covers_.push_back(std::move(z));
        bind(s.name, CoverRef{covers_.size() - 1});
        return;
      }
      case Stmt::Kind::assert_: {
        CheckResult r;
        r.line = s.pos.line;
        r.query = assert_text(s);
        r.citation = s.citation.value_or("");
        const Value lhs = eval(*s.lhs);
        r.value = render(lhs);
        if (!s.rhs) {
          r.expected = "true";
          r.pass = as<bool>(lhs, "boolean predicate");
        } else {
          const Value rhs = eval(*s.rhs);
          r.expected = render(rhs);
          switch (s.op) {
            case Stmt::Op::eq: r.pass = equal(lhs, rhs); break;
            case Stmt::Op::ne:
              r.pass = !equal(lhs, rhs);
              r.expected = "not " + r.expected;
              break;
            case Stmt::Op::equiv:
              r.pass = equivalent(lhs, rhs);
              r.expected = "~ " + r.expected;
              break;
            case Stmt::Op::none: break;
          }
        }
        report_.results.push_back(std::move(r));
        return;
      }
      case Stmt::Kind::query: {
        CheckResult r;
        r.kind = CheckResult::Kind::query;
        r.line = s.pos.line;
        r.query = print(*s.lhs);
        r.value = render(eval(*s.lhs));
        report_.results.push_back(std::move(r));
        return;
      }
      case Stmt::Kind::report: {
        report_.verdict_summary[s.citation.value_or("")] = render(eval(*s.lhs));
        return;
      }
    }
  }
};

}  // namespace

Report run_script(const Script& script, const std::string& scenario) {
  return Interpreter(scenario).run(script);
}

Report execute_text(std::string_view text, const std::string& scenario) {
  ParseResult p = parse(text);
  if (!p.ok()) {
    Report r;
    r.scenario = scenario;
    for (const auto& d : p.diagnostics) r.errors.push_back(d.str());
    return r;
  }
  return run_script(*p.script, scenario);
}

}  // namespace surf::dsl
