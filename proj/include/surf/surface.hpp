#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "surf/picard.hpp"

namespace surf {

/// Q-combination of named (strict-transform) curves plus a pullback term p^*(c).
/// This is the user-facing notation; DivClass is the coordinate form.
struct CurveExpr {
  std::map<std::string, Rational> curves;
  Pic0Class pullback;

  static CurveExpr curve(const std::string& name, const Rational& coeff = 1);
  static CurveExpr pull(const Pic0Class& c);

  Rational coeff(const std::string& name) const;
  void add(const std::string& name, const Rational& coeff);
  bool is_zero() const { return curves.empty() && pullback.is_zero(); }

  CurveExpr operator-() const;
  CurveExpr& operator+=(const CurveExpr& o);
  CurveExpr& operator-=(const CurveExpr& o);
  CurveExpr& operator*=(const Rational& s);
  friend CurveExpr operator+(CurveExpr a, const CurveExpr& b) { return a += b; }
  friend CurveExpr operator-(CurveExpr a, const CurveExpr& b) { return a -= b; }
  friend CurveExpr operator*(const Rational& s, CurveExpr a) { return a *= s; }
  friend bool operator==(const CurveExpr&, const CurveExpr&) = default;

  std::string str() const;
};

/// A point where tracked curves meet. Named points are points of the base
/// curve C seen on a section; their Pic^0 symbol is "xi_<name>".
struct PointRecord {
  int id = 0;
  std::optional<std::string> name;
  std::vector<std::string> curves;

  bool on(const std::string& curve) const;
};

struct CurveRecord {
  std::string name;
  int genus = 0;
  DivClass cls;
  /// Normal class C|_C for sections identified with the base curve.
  std::optional<PicCurveClass> normal_pic;
  /// Set once an anonymous point of the curve has been blown up: the Pic^0
  /// part of normal_pic is then unknown.
  bool normal_opaque = false;
};

struct BlowupCenter {
  enum class Kind { intersection, named_point, general };
  Kind kind = Kind::general;
  std::string first;   // intersection: first curve; named_point: the curve
  std::string second;  // intersection: second curve
  std::string point;   // named_point: the point name

  static BlowupCenter meet(std::string a, std::string b);
  static BlowupCenter named(std::string point, std::string curve);
  static BlowupCenter general_point();
  std::string str() const;
  friend bool operator==(const BlowupCenter&, const BlowupCenter&) = default;
};

struct BlowupRecord {
  std::string exceptional;
  BlowupCenter center;
  std::vector<std::string> through;  // curves passing through the center
};

struct RuledSurfaceSpec {
  std::string base_curve = "C";
  std::vector<std::string> pic0_generators{"e"};
  std::string twist = "e";
  std::array<std::string, 2> fiber_points{"x", "xp"};
  std::vector<std::string> extra_points;
  RelationSet relations;
};

/// Result of restricting a divisor to a curve. The Pic^0 part is absent when
/// some term meets the target at an anonymous point.
struct Restriction {
  Rational degree;
  std::optional<Pic0Class> pic0;
  std::string note;

  /// Throws Error(obstruction_not_computable) when pic0 is unknown.
  PicCurveClass value() const;
};

/// Iterated blow-up of S = P_C(O + O(e)). Immutable: blow_up returns a new model.
///
/// Tracked curves on S: sections B (normal class e) and Bp ~ B - p^*e, and fibers
/// F over x and Fp over x'. Curve names always denote strict transforms.
class SurfaceModel {
 public:
  static SurfaceModel ruled(const RuledSurfaceSpec& spec);

  SurfaceModel blow_up(const BlowupCenter& center, const std::string& new_name) const;

  std::size_t blowup_count() const { return history_.size(); }
  const std::string& base_curve() const { return base_curve_; }
  const std::vector<std::string>& base_symbols() const { return base_symbols_; }
  const std::vector<std::string>& base_points() const { return base_points_; }
  const RelationSet& relations() const { return relations_; }
  const std::vector<CurveRecord>& curves() const { return curves_; }
  const std::vector<PointRecord>& points() const { return points_; }
  const std::vector<BlowupRecord>& history() const { return history_; }
  const DivClass& canonical() const { return canonical_; }
  /// K expressed through tracked curves and p^* terms.
  const CurveExpr& canonical_expr() const { return canonical_expr_; }

  SurfaceModel with_relations(RelationSet rels) const;

  bool has_curve(const std::string& name) const;
  const CurveRecord& curve(const std::string& name) const;  // throws Error(usage)
  /// Points shared by two distinct curves.
  std::vector<PointRecord> incidence(const std::string& a, const std::string& b) const;

  static std::string point_symbol(const std::string& point) { return "xi_" + point; }

  DivClass evaluate(const CurveExpr& expr) const;
  Rational intersect(const CurveExpr& a, const CurveExpr& b) const;

  /// True when `ancestor` is this model or an earlier stage of its blow-up history.
  bool descends_from(const SurfaceModel& ancestor) const;
  DivClass total_pullback(const SurfaceModel& ancestor, const DivClass& d) const;
  /// Total transform written in strict-transform notation on this model.
  CurveExpr total_pullback(const SurfaceModel& ancestor, const CurveExpr& expr) const;

  Restriction restrict_to_curve(const CurveExpr& expr, const std::string& target) const;

  /// Human-readable adjunction/incidence violations; empty on a consistent model.
  std::vector<std::string> consistency_violations() const;

 private:
  std::string base_curve_;
  std::vector<std::string> base_symbols_;
  std::vector<std::string> base_points_;
  RelationSet relations_;
  std::vector<CurveRecord> curves_;
  std::vector<PointRecord> points_;
  std::vector<BlowupRecord> history_;
  DivClass canonical_;
  CurveExpr canonical_expr_;
  int next_point_id_ = 0;

  CurveRecord& curve_mut(const std::string& name);
  int add_point(std::optional<std::string> name, std::vector<std::string> curves);
};

}  // namespace surf
