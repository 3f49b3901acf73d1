#include "surf/positivity.hpp"

#include <algorithm>

#include "surf/error.hpp"
#include "surf/matrix.hpp"

namespace surf {

NefCheck nef_with_certificate(const SurfaceModel& model, const DivClass& d, const NefCertificate& cert) {
  NefCheck out;
  for (const auto& c : model.curves()) {
    const Rational v = intersect(d, c.cls);
    if (v.sign() < 0) {
      out.reason = "D." + c.name + " = " + v.str() + " < 0";
      return out;
    }
  }
  out.numerically_trivial = d.numerically_trivial();

  if (cert.empty()) {
    out.nef = out.numerically_trivial;
    if (!out.nef) throw Error(ErrorCode::certificate_invalid, "empty certificate for a class that is not numerically trivial");
    out.reason = "numerically trivial";
    return out;
  }

  if (cert.base.blowups() != 0)
    throw Error(ErrorCode::certificate_invalid, "certificate base part must live on the ruled surface");
  DivClass sum = cert.base.extended(model.blowup_count());
  for (const auto& [name, coeff] : cert.effective) {
    if (coeff.sign() <= 0)
      throw Error(ErrorCode::certificate_invalid, "effective coefficient of " + name + " is not positive");
    sum += coeff * model.curve(name).cls;
  }
  if (!lin_equiv(sum, d, model.relations()))
    throw Error(ErrorCode::certificate_invalid, "certificate decomposition is not linearly equivalent to D");

  out.axioms_used.push_back(kRuledNefConeAxiom);
  if (cert.base.section.sign() < 0 || cert.base.fiber.sign() < 0) {
    out.reason = "base part " + cert.base.str() + " is outside the nef cone of the ruled surface";
    return out;
  }
  for (const auto& [name, _] : cert.effective) {
    const Rational v = intersect(d, model.curve(name).cls);
    out.verified.emplace_back(name, v);
    if (v.sign() < 0) {
      out.reason = "D." + name + " < 0";
      return out;
    }
  }
  out.nef = true;
  return out;
}

bool nef_on_tracked(const SurfaceModel& model, const DivClass& d) {
  for (const auto& c : model.curves())
    if (intersect(d, c.cls).sign() < 0) return false;
  return true;
}

bool is_big_given_nef(const SurfaceModel&, const DivClass& d) { return intersect(d, d).sign() > 0; }

std::vector<std::string> nklt_locus(const SurfaceModel& model, const WeightedCurves& delta) {
  std::vector<std::string> out;
  for (const auto& [name, coeff] : delta) {
    model.curve(name);
    if (coeff.sign() < 0) throw Error(ErrorCode::usage, "boundary coefficient of " + name + " is negative");
    if (coeff >= Rational(1)) out.push_back(name);
  }
  return out;
}

std::vector<std::string> zero_locus(const SurfaceModel& model, const DivClass& d) {
  std::vector<std::string> out;
  for (const auto& c : model.curves())
    if (intersect(d, c.cls).is_zero() && intersect(c.cls, c.cls).sign() < 0) out.push_back(c.name);
  return out;
}

bool SemiAmpleReport::pass() const {
  if (checks.empty()) return false;
  for (const auto& [_, ok] : checks)
    if (!ok) return false;
  return true;
}

SemiAmpleReport semi_ample_certificate(const SurfaceModel& model, const CurveExpr& d,
                                       const WeightedCurves& delta, int a,
                                       const NefCertificate& cert_d,
                                       const NefCertificate& cert_ad_minus_k_delta) {
  if (a < 1) throw Error(ErrorCode::usage, "basepoint-free multiple a must be positive");
  SemiAmpleReport r;
  r.divisor = model.evaluate(d);
  r.boundary = delta;
  r.a = a;

  const NefCheck nef_d = nef_with_certificate(model, r.divisor, cert_d);
  r.checks["nef_D"] = nef_d.nef;
  r.numerically_trivial_flag = r.divisor.numerically_trivial();
  if (r.numerically_trivial_flag)
    r.notes.push_back("D is numerically trivial: the basepoint-free statement then needs characteristic zero");

  CurveExpr boundary;
  for (const auto& [name, coeff] : delta) boundary.add(name, coeff);
  const DivClass l = Rational(a) * r.divisor - model.canonical() - model.evaluate(boundary);
  const NefCheck nef_l = nef_with_certificate(model, l, cert_ad_minus_k_delta);
  r.checks["nef_big_aD_minus_K_Delta"] = nef_l.nef && is_big_given_nef(model, l);

  for (const auto* chk : {&nef_d, &nef_l})
    for (const auto& ax : chk->axioms_used)
      if (std::find(r.axioms_used.begin(), r.axioms_used.end(), ax) == r.axioms_used.end())
        r.axioms_used.push_back(ax);

  r.nklt = nklt_locus(model, delta);
  bool trivial = true;
  for (const auto& name : r.nklt) {
    if (!intersect(r.divisor, model.curve(name).cls).is_zero()) {
      trivial = false;
      r.notes.push_back("D." + name + " != 0");
      continue;
    }
    if (model.curve(name).genus == 1) {
      const Restriction res = model.restrict_to_curve(d, name);
      if (!res.pic0) {
        trivial = false;
        r.notes.push_back(res.note);
      } else if (!model.relations().reduce(*res.pic0).is_zero()) {
        trivial = false;
        r.notes.push_back("D|" + name + " has nonzero Pic0 part " + res.pic0->str());
      }
    }
  }
  r.checks["nklt_restriction_trivial"] = trivial;

  r.zero_locus = zero_locus(model, r.divisor);
  QMatrix gram(r.zero_locus.size(), r.zero_locus.size());
  for (std::size_t i = 0; i < r.zero_locus.size(); ++i)
    for (std::size_t j = 0; j < r.zero_locus.size(); ++j)
      gram(i, j) = intersect(model.curve(r.zero_locus[i]).cls, model.curve(r.zero_locus[j]).cls);
  r.checks["zero_locus_negative_definite"] = is_negative_definite(gram);
  return r;
}

}  // namespace surf
