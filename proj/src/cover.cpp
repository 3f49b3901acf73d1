#include "surf/cover.hpp"

#include "surf/error.hpp"

namespace surf {

std::string CoverCanonical::str() const {
  return "g*(K_Y + " + branch_coeff.str() + "*A)";
}

CoverCanonical cover_canonical_class(const CoverSpec& spec) {
  if (spec.degree < 2) throw Error(ErrorCode::usage, "cyclic cover degree must be at least 2");
  if (spec.characteristic == Characteristic::zero && spec.degree != 2)
    throw Error(ErrorCode::usage, "characteristic-zero configuration uses degree 2");
  if (!spec.branch.ample) throw Error(ErrorCode::usage, "branch divisor is not flagged ample");
  for (const auto& name : spec.base.contracted())
    if (!intersect(spec.base.source().evaluate(spec.branch.representative),
                   spec.base.source().curve(name).cls)
             .is_zero())
      throw Error(ErrorCode::usage, "branch representative meets contracted curve " + name);

  CoverCanonical k;
  k.degree = spec.degree;
  k.branch_coeff = Rational(spec.degree - 1, spec.degree);
  k.canonical_pullback = mumford_pullback(spec.base, spec.base.source().canonical_expr());
  k.branch = spec.branch.representative;
  k.log_class = k.canonical_pullback + k.branch_coeff * k.branch;
  const SurfaceModel& m = spec.base.source();
  k.log_square = m.intersect(k.log_class, k.log_class);

  const bool k_trivial = m.evaluate(k.canonical_pullback).numerically_trivial();
  k.nef = k_trivial;  // numerically trivial K_Y plus a positive multiple of an ample class
  k.big = k.nef && k.log_square.sign() > 0;

  k.assumptions.push_back("Supp A lies in the smooth locus of Y");
  if (spec.characteristic == Characteristic::positive)
    k.assumptions.push_back("degree " + std::to_string(spec.degree) + " is coprime to char(k)");
  if (!k_trivial) k.assumptions.push_back("K_Y is not numerically trivial: nefness not established");
  return k;
}

const char* to_string(FgAnswer a) {
  switch (a) {
    case FgAnswer::yes: return "yes";
    case FgAnswer::no: return "no";
    case FgAnswer::undetermined: return "undetermined";
  }
  return "";
}

const char* to_string(FgRule r) {
  switch (r) {
    case FgRule::criterion_theorem: return "criterion-theorem";
    case FgRule::kappa_le_1: return "kappa-le-1";
    case FgRule::gorenstein_remark: return "gorenstein-remark";
    case FgRule::none: return "none";
  }
  return "";
}

FGVerdict fg_verdict(const FgFlags& flags) {
  FGVerdict v;
  v.inputs = {
      {"q_gorenstein", to_string(flags.q_gorenstein)},
      {"K_nef_mumford", flags.k_nef_mumford ? "true" : "false"},
      {"K_big", flags.k_big ? "true" : "false"},
      {"kappa_le_1", flags.kappa_le_1 ? "true" : "false"},
      {"gorenstein", flags.gorenstein ? "true" : "false"},
  };
  if (flags.kappa_le_1) {
    v.finitely_generated = FgAnswer::yes;
    v.rule_applied = FgRule::kappa_le_1;
  } else if (flags.gorenstein) {
    v.finitely_generated = FgAnswer::yes;
    v.rule_applied = FgRule::gorenstein_remark;
  } else if (flags.k_nef_mumford && flags.k_big && flags.q_gorenstein != Verdict::unknown) {
    // nef and big K gives kappa = 2
    v.inputs["kappa"] = "2";
    v.finitely_generated = flags.q_gorenstein == Verdict::yes ? FgAnswer::yes : FgAnswer::no;
    v.rule_applied = FgRule::criterion_theorem;
  }
  return v;
}

FgFlags cover_flags(const CoverCanonical& k, const QGorensteinVerdict& base_q_gorenstein) {
  FgFlags f;
  f.q_gorenstein = base_q_gorenstein.verdict;
  f.k_nef_mumford = k.nef;
  f.k_big = k.big;
  return f;
}

FiberProductNode fiber_product(const QGorensteinVerdict& partial_resolution, const FGVerdict& cover,
                               const FgFlags& flags) {
  FiberProductNode n;
  n.q_gorenstein = partial_resolution.verdict;
  n.finitely_generated = cover.finitely_generated;
  n.kappa_two = flags.k_nef_mumford && flags.k_big;
  n.notes.push_back("Q-Gorenstein flag inherited from the partial resolution");
  n.notes.push_back("finite generation inherited from the cover");
  n.notes.push_back("kappa inherited from the cover");
  return n;
}

}  // namespace surf
