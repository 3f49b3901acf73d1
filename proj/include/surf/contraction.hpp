#pragma once

#include <map>
#include <string>
#include <vector>

#include "surf/matrix.hpp"
#include "surf/positivity.hpp"
#include "surf/surface.hpp"

namespace surf {

/// Contraction of a negative-definite configuration of tracked curves.
/// Divisors on the singular target are always handled through source
/// representatives and their Mumford pullbacks.
class Contraction {
 public:
  /// Throws Error(not_contractible) if the Gram matrix is not negative definite.
  static Contraction make(const SurfaceModel& source, std::vector<std::string> curves, std::string name = "");

  const SurfaceModel& source() const { return source_; }
  const std::vector<std::string>& contracted() const { return contracted_; }
  const QMatrix& gram() const { return gram_; }
  const std::string& name() const { return name_; }
  bool contracts(const std::string& curve) const;

  Contraction with_relations(RelationSet rels) const;

 private:
  SurfaceModel source_;
  std::vector<std::string> contracted_;
  QMatrix gram_;
  std::string name_;
};

QMatrix gram_matrix(const SurfaceModel& model, const std::vector<std::string>& curves);

/// D + sum a_i C_i, orthogonal to every contracted C_j.
DivClass mumford_pullback(const Contraction& c, const DivClass& d);
CurveExpr mumford_pullback(const Contraction& c, const CurveExpr& d);

Rational target_intersect(const Contraction& c, const DivClass& a, const DivClass& b);
Rational target_intersect(const Contraction& c, const CurveExpr& a, const CurveExpr& b);

/// Coefficients a_i in K_source = pi^*K_target + sum a_i C_i.
struct DiscrepancyVector {
  std::vector<std::pair<std::string, Rational>> coefficients;

  Rational at(const std::string& curve) const;  // throws Error(usage)
  Rational min() const;                         // 0 for an empty contraction
};

DiscrepancyVector discrepancies(const Contraction& c);

/// 0 = constant + sum coeffs_i * a_i: the condition (K - sum a_i C_i).C_j = 0
/// for one contracted curve C_j.
struct AffineForm {
  std::string curve;  // C_j
  Rational constant;
  std::vector<std::pair<std::string, Rational>> coeffs;

  /// e.g. "2 + 2*a_B - a_E1 - a_E3"
  std::string str() const;
};

std::vector<AffineForm> orthogonality_equations(const Contraction& c);

enum class Singularity { canonical, klt_noncanonical, lc_nonklt, non_lc };
const char* to_string(Singularity s);
Singularity classify_singularity(const DiscrepancyVector& d);

enum class Verdict { yes, no, unknown };
const char* to_string(Verdict v);

struct QGorensteinVerdict {
  Verdict verdict = Verdict::unknown;
  /// Reduced Pic0 obstruction for each contracted genus-1 curve.
  std::map<std::string, Pic0Class> obstructions;
  std::vector<std::string> notes;

  bool is_q_gorenstein() const { return verdict == Verdict::yes; }
};

/// Restricts pi^*K to each contracted elliptic curve and reduces the Pic0 part
/// modulo `rels`. K is Q-Cartier iff every obstruction vanishes.
QGorensteinVerdict q_gorenstein_test(const Contraction& c, const RelationSet& rels);
inline QGorensteinVerdict q_gorenstein_test(const Contraction& c) {
  return q_gorenstein_test(c, c.source().relations());
}

/// A divisor on the target, held as a source representative orthogonal to the
/// contracted curves.
struct DescendedClass {
  std::string contraction;
  CurveExpr representative;
  bool numerically_trivial = false;
  bool ample = false;

  DescendedClass scaled(const Rational& s) const;
};

/// Throws Error(not_descendable) when D meets a contracted curve. The handle is
/// flagged ample when `report` passed with zero locus equal to the contracted set.
DescendedClass descend_divisor(const Contraction& c, const CurveExpr& d,
                               const SemiAmpleReport* report = nullptr);

struct MmpOutcome {
  enum class Kind { minimal, mori_fiber, contraction, fano_direction };
  Kind kind = Kind::minimal;
  std::vector<std::string> curves;
  Rational k_dot;      // K.C for the selected curve
  Rational self_dot;   // C^2 for the selected curve
  std::string caveat;

  std::string str() const;
};

/// One MMP step on the target of `c` (use an empty contraction for a smooth
/// model). Picks the first K-negative tracked curve in construction order.
MmpOutcome mmp_step(const Contraction& c);
MmpOutcome mmp_step(const SurfaceModel& model);

/// Contraction obtained by following `step` after `c`.
Contraction compose(const Contraction& c, const MmpOutcome& step, std::string name = "");

}  // namespace surf
