#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "surf/surface.hpp"

namespace surf {

/// Name of the model axiom describing the nef cone of the ruled surface:
/// a*Bbar + b*Fbar is nef iff a >= 0 and b >= 0.
inline constexpr const char* kRuledNefConeAxiom = "ruled-surface nef cone: a*B + b*F nef iff a,b >= 0";

using WeightedCurves = std::vector<std::pair<std::string, Rational>>;

/// D ~ (pullback of a class on the ruled surface) + (nonnegative curve combination).
struct NefCertificate {
  DivClass base;            // lives on the ruled surface (no exceptional coordinates)
  WeightedCurves effective; // strictly positive coefficients

  bool empty() const { return base.is_zero() && effective.empty(); }
};

struct NefCheck {
  bool nef = false;
  bool numerically_trivial = false;
  WeightedCurves verified;              // D.C for each effective component
  std::vector<std::string> axioms_used;
  std::string reason;

  explicit operator bool() const { return nef; }
};

/// Certificate-based nef test. Any tracked curve with D.C < 0 refutes nefness
/// outright. Throws Error(certificate_invalid) when the decomposition does not
/// reproduce D.
NefCheck nef_with_certificate(const SurfaceModel& model, const DivClass& d, const NefCertificate& cert);

/// D.C >= 0 for every tracked curve. Tracked curves are not all curves, so
/// this is only a heuristic.
bool nef_on_tracked(const SurfaceModel& model, const DivClass& d);

/// Caller must already know D is nef.
bool is_big_given_nef(const SurfaceModel& model, const DivClass& d);

/// Support of the round-down of a boundary with transverse components.
std::vector<std::string> nklt_locus(const SurfaceModel& model, const WeightedCurves& delta);

struct SemiAmpleReport {
  DivClass divisor;
  WeightedCurves boundary;
  int a = 1;
  std::map<std::string, bool> checks;
  std::vector<std::string> zero_locus;
  std::vector<std::string> nklt;
  std::vector<std::string> axioms_used;
  std::vector<std::string> notes;
  /// Set when D is numerically trivial; the theorem then needs char 0.
  bool numerically_trivial_flag = false;

  bool pass() const;
};

SemiAmpleReport semi_ample_certificate(const SurfaceModel& model, const CurveExpr& d,
                                       const WeightedCurves& delta, int a,
                                       const NefCertificate& cert_d,
                                       const NefCertificate& cert_ad_minus_k_delta);

/// Tracked curves C with D.C = 0 and C^2 < 0, in construction order.
std::vector<std::string> zero_locus(const SurfaceModel& model, const DivClass& d);

}  // namespace surf
