#include "surf/contraction.hpp"

#include <algorithm>

#include "surf/error.hpp"

namespace surf {

QMatrix gram_matrix(const SurfaceModel& model, const std::vector<std::string>& curves) {
  QMatrix g(curves.size(), curves.size());
  for (std::size_t i = 0; i < curves.size(); ++i)
    for (std::size_t j = 0; j < curves.size(); ++j)
      g(i, j) = intersect(model.curve(curves[i]).cls, model.curve(curves[j]).cls);
  return g;
}

Contraction Contraction::make(const SurfaceModel& source, std::vector<std::string> curves, std::string name) {
  for (std::size_t i = 0; i < curves.size(); ++i)
    for (std::size_t j = i + 1; j < curves.size(); ++j)
      if (curves[i] == curves[j]) throw Error(ErrorCode::usage, "curve " + curves[i] + " listed twice");
  Contraction c;
  c.source_ = source;
  c.gram_ = gram_matrix(source, curves);
  c.contracted_ = std::move(curves);
  c.name_ = std::move(name);
  if (!is_negative_definite(c.gram_))
    throw Error(ErrorCode::not_contractible, "Gram matrix of the configuration is not negative definite");
  return c;
}

bool Contraction::contracts(const std::string& curve) const {
  return std::find(contracted_.begin(), contracted_.end(), curve) != contracted_.end();
}

Contraction Contraction::with_relations(RelationSet rels) const {
  Contraction c = *this;
  c.source_ = source_.with_relations(std::move(rels));
  return c;
}

namespace {

std::vector<Rational> pullback_coefficients(const Contraction& c, const DivClass& d) {
  std::vector<Rational> rhs;
  rhs.reserve(c.contracted().size());
  for (const auto& name : c.contracted()) rhs.push_back(-intersect(d, c.source().curve(name).cls));
  auto x = solve_linear(c.gram(), rhs);
  if (!x) throw Error(ErrorCode::singular, "Gram system of a contraction is singular");
  return *x;
}

}  // namespace

DivClass mumford_pullback(const Contraction& c, const DivClass& d) {
  const auto x = pullback_coefficients(c, d);
  DivClass out = d;
  for (std::size_t i = 0; i < x.size(); ++i) out += x[i] * c.source().curve(c.contracted()[i]).cls;
  return out;
}

CurveExpr mumford_pullback(const Contraction& c, const CurveExpr& d) {
  const auto x = pullback_coefficients(c, c.source().evaluate(d));
  CurveExpr out = d;
  for (std::size_t i = 0; i < x.size(); ++i) out.add(c.contracted()[i], x[i]);
  return out;
}

Rational target_intersect(const Contraction& c, const DivClass& a, const DivClass& b) {
  return intersect(mumford_pullback(c, a), mumford_pullback(c, b));
}

Rational target_intersect(const Contraction& c, const CurveExpr& a, const CurveExpr& b) {
  return target_intersect(c, c.source().evaluate(a), c.source().evaluate(b));
}

Rational DiscrepancyVector::at(const std::string& curve) const {
  for (const auto& [name, v] : coefficients)
    if (name == curve) return v;
  throw Error(ErrorCode::usage, "no discrepancy recorded for " + curve);
}

Rational DiscrepancyVector::min() const {
  if (coefficients.empty()) return 0;
  Rational m = coefficients.front().second;
  for (const auto& [_, v] : coefficients) m = std::min(m, v);
  return m;
}

DiscrepancyVector discrepancies(const Contraction& c) {
  const auto x = pullback_coefficients(c, c.source().canonical());
  DiscrepancyVector d;
  for (std::size_t i = 0; i < x.size(); ++i) d.coefficients.emplace_back(c.contracted()[i], -x[i]);
  return d;
}

std::string AffineForm::str() const {
  std::string out;
  bool first = true;
  if (!constant.is_zero()) {
    out = constant.str();
    first = false;
  }
  for (const auto& [name, k] : coeffs) {
    if (k.is_zero()) continue;
    const bool negative = k.sign() < 0;
    const Rational mag = negative ? -k : k;
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    if (mag != Rational(1)) out += mag.str() + "*";
    out += "a_" + name;
    first = false;
  }
  return first ? "0" : out;
}

std::vector<AffineForm> orthogonality_equations(const Contraction& c) {
  std::vector<AffineForm> out;
  const auto& names = c.contracted();
  for (std::size_t j = 0; j < names.size(); ++j) {
    AffineForm f;
    f.curve = names[j];
    f.constant = intersect(c.source().canonical(), c.source().curve(names[j]).cls);
    for (std::size_t i = 0; i < names.size(); ++i) f.coeffs.emplace_back(names[i], -c.gram()(i, j));
    out.push_back(std::move(f));
  }
  return out;
}

const char* to_string(Singularity s) {
  switch (s) {
    case Singularity::canonical: return "canonical";
    case Singularity::klt_noncanonical: return "klt-noncanonical";
    case Singularity::lc_nonklt: return "lc-nonklt";
    case Singularity::non_lc: return "non-lc";
  }
  return "";
}

Singularity classify_singularity(const DiscrepancyVector& d) {
  const Rational m = d.min();
  if (m.sign() >= 0) return Singularity::canonical;
  if (m > Rational(-1)) return Singularity::klt_noncanonical;
  if (m == Rational(-1)) return Singularity::lc_nonklt;
  return Singularity::non_lc;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "";
}

QGorensteinVerdict q_gorenstein_test(const Contraction& c, const RelationSet& rels) {
  QGorensteinVerdict out;
  const CurveExpr pulled = mumford_pullback(c, c.source().canonical_expr());
  bool unknown = false;
  bool obstructed = false;
  for (const auto& name : c.contracted()) {
    const CurveRecord& curve = c.source().curve(name);
    if (curve.genus == 0) continue;  // orthogonality already makes the restriction trivial
    const Restriction r = c.source().restrict_to_curve(pulled, name);
    if (!r.pic0) {
      unknown = true;
      out.notes.push_back(r.note);
      continue;
    }
    Pic0Class reduced = rels.reduce(*r.pic0);
    if (!reduced.is_zero()) obstructed = true;
    out.obstructions.emplace(name, std::move(reduced));
  }
  if (obstructed)
    out.verdict = Verdict::no;
  else
    out.verdict = unknown ? Verdict::unknown : Verdict::yes;
  return out;
}

DescendedClass DescendedClass::scaled(const Rational& s) const {
  DescendedClass d = *this;
  d.representative *= s;
  if (s.sign() <= 0) d.ample = false;
  if (s.is_zero()) d.numerically_trivial = true;
  return d;
}

DescendedClass descend_divisor(const Contraction& c, const CurveExpr& d, const SemiAmpleReport* report) {
  const DivClass cls = c.source().evaluate(d);
  for (const auto& name : c.contracted())
    if (!intersect(cls, c.source().curve(name).cls).is_zero())
      throw Error(ErrorCode::not_descendable, "divisor meets contracted curve " + name);
  DescendedClass out;
  out.contraction = c.name();
  out.representative = d;
  out.numerically_trivial = cls.numerically_trivial();
  if (report && report->pass() && report->divisor == cls) {
    auto zl = report->zero_locus;
    auto cs = c.contracted();
    std::sort(zl.begin(), zl.end());
    std::sort(cs.begin(), cs.end());
    out.ample = zl == cs;
  }
  return out;
}

std::string MmpOutcome::str() const {
  auto join = [&] {
    std::string s;
    for (std::size_t i = 0; i < curves.size(); ++i) s += (i ? "," : "") + curves[i];
    return s;
  };
  switch (kind) {
    case Kind::minimal: return "minimal";
    case Kind::mori_fiber: return "mori_fiber(" + join() + ")";
    case Kind::contraction: return "contraction(" + join() + ")";
    case Kind::fano_direction: return "fano_direction(" + join() + ")";
  }
  return "";
}

MmpOutcome mmp_step(const Contraction& c) {
  const SurfaceModel& m = c.source();
  const DivClass k = mumford_pullback(c, m.canonical());
  for (const auto& curve : m.curves()) {
    if (c.contracts(curve.name)) continue;
    const DivClass pulled = mumford_pullback(c, curve.cls);
    const Rational kc = intersect(k, pulled);
    if (kc.sign() >= 0) continue;
    MmpOutcome out;
    out.curves = {curve.name};
    out.k_dot = kc;
    out.self_dot = intersect(pulled, pulled);
    if (out.self_dot.sign() < 0) {
      out.kind = MmpOutcome::Kind::contraction;
    } else if (out.self_dot.is_zero()) {
      out.kind = MmpOutcome::Kind::mori_fiber;
    } else {
      out.kind = MmpOutcome::Kind::fano_direction;
      out.caveat = "K-negative curve with positive self-intersection";
    }
    return out;
  }
  MmpOutcome out;
  out.caveat = "K is nonnegative on tracked curves only";
  return out;
}

MmpOutcome mmp_step(const SurfaceModel& model) { return mmp_step(Contraction::make(model, {})); }

Contraction compose(const Contraction& c, const MmpOutcome& step, std::string name) {
  if (step.kind != MmpOutcome::Kind::contraction)
    throw Error(ErrorCode::usage, "only a birational contraction step can be composed");
  auto curves = c.contracted();
  curves.insert(curves.end(), step.curves.begin(), step.curves.end());
  return Contraction::make(c.source(), std::move(curves), std::move(name));
}

}  // namespace surf
