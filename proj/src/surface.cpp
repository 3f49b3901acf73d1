#include "surf/surface.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "surf/error.hpp"

namespace surf {

// ---- CurveExpr ------------------------------------------------------------

CurveExpr CurveExpr::curve(const std::string& name, const Rational& coeff) {
  CurveExpr e;
  e.add(name, coeff);
  return e;
}

CurveExpr CurveExpr::pull(const Pic0Class& c) {
  CurveExpr e;
  e.pullback = c;
  return e;
}

Rational CurveExpr::coeff(const std::string& name) const {
  const auto it = curves.find(name);
  return it == curves.end() ? Rational(0) : it->second;
}

void CurveExpr::add(const std::string& name, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = curves.try_emplace(name, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) curves.erase(it);
  }
}

CurveExpr CurveExpr::operator-() const { return Rational(-1) * *this; }

CurveExpr& CurveExpr::operator+=(const CurveExpr& o) {
  for (const auto& [name, c] : o.curves) add(name, c);
  pullback += o.pullback;
  return *this;
}

CurveExpr& CurveExpr::operator-=(const CurveExpr& o) { return *this += -o; }

CurveExpr& CurveExpr::operator*=(const Rational& s) {
  if (s.is_zero()) {
    curves.clear();
    pullback = Pic0Class{};
    return *this;
  }
  for (auto& [_, c] : curves) c *= s;
  pullback *= s;
  return *this;
}

std::string CurveExpr::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, c] : curves) {
    const bool negative = c.sign() < 0;
    const Rational mag = negative ? -c : c;
    os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    if (mag != Rational(1)) os << mag << "*";
    os << name;
    first = false;
  }
  if (!pullback.is_zero()) {
    os << (first ? "" : " + ") << "p*(" << pullback.str() << ")";
    first = false;
  }
  return first ? "0" : os.str();
}

// ---- centers, points, restriction -------------------------------------------

bool PointRecord::on(const std::string& curve) const {
  return std::find(curves.begin(), curves.end(), curve) != curves.end();
}

BlowupCenter BlowupCenter::meet(std::string a, std::string b) {
  BlowupCenter c;
  c.kind = Kind::intersection;
  c.first = std::move(a);
  c.second = std::move(b);
  return c;
}

BlowupCenter BlowupCenter::named(std::string point, std::string curve) {
  BlowupCenter c;
  c.kind = Kind::named_point;
  c.point = std::move(point);
  c.first = std::move(curve);
  return c;
}

BlowupCenter BlowupCenter::general_point() { return BlowupCenter{}; }

std::string BlowupCenter::str() const {
  switch (kind) {
    case Kind::intersection: return first + " * " + second;
    case Kind::named_point: return "point " + point + " on " + first;
    case Kind::general: return "general";
  }
  return "";
}

PicCurveClass Restriction::value() const {
  if (!pic0) throw Error(ErrorCode::obstruction_not_computable, note);
  return PicCurveClass{degree, *pic0};
}

// ---- SurfaceModel -----------------------------------------------------------

SurfaceModel SurfaceModel::ruled(const RuledSurfaceSpec& spec) {
  SurfaceModel m;
  m.base_curve_ = spec.base_curve;
  m.relations_ = spec.relations;

  std::set<std::string> seen;
  auto claim = [&](const std::string& name) {
    if (!seen.insert(name).second) throw Error(ErrorCode::usage, "duplicate name '" + name + "'");
  };
  claim(spec.base_curve);
  for (const auto& g : spec.pic0_generators) {
    claim(g);
    m.base_symbols_.push_back(g);
  }
  if (std::find(spec.pic0_generators.begin(), spec.pic0_generators.end(), spec.twist) ==
      spec.pic0_generators.end())
    throw Error(ErrorCode::usage, "twist '" + spec.twist + "' is not a declared Pic0 generator");
  if (spec.fiber_points[0] == spec.fiber_points[1])
    throw Error(ErrorCode::usage, "the two fibers must lie over distinct points");
  std::vector<std::string> pts(spec.fiber_points.begin(), spec.fiber_points.end());
  pts.insert(pts.end(), spec.extra_points.begin(), spec.extra_points.end());
  for (const auto& p : pts) {
    claim(p);
    claim(point_symbol(p));
    m.base_points_.push_back(p);
    m.base_symbols_.push_back(point_symbol(p));
  }
  for (const char* c : {"B", "Bp", "F", "Fp"}) claim(c);

  const Pic0Class twist = Pic0Class::symbol(spec.twist);
  const std::string& x = spec.fiber_points[0];
  const std::string& xp = spec.fiber_points[1];
  const Pic0Class fiber_shift = Pic0Class::symbol(point_symbol(x)) - Pic0Class::symbol(point_symbol(xp));

  CurveRecord b{"B", 1, DivClass::section_class(0), PicCurveClass{0, twist}, false};
  CurveRecord bp{"Bp", 1, DivClass::section_class(0) - DivClass::pullback(0, twist),
                 PicCurveClass{0, -twist}, false};
  CurveRecord f{"F", 0, DivClass::fiber_class(0), std::nullopt, false};
  CurveRecord fp{"Fp", 0, DivClass::fiber_class(0) - DivClass::pullback(0, fiber_shift), std::nullopt, false};
  m.curves_ = {b, bp, f, fp};

  m.add_point(x, {"B", "F"});
  m.add_point(xp, {"B", "Fp"});
  m.add_point(std::nullopt, {"Bp", "F"});
  m.add_point(std::nullopt, {"Bp", "Fp"});

  // K_S + B + Bp ~ 0
  m.canonical_ = Rational(-2) * DivClass::section_class(0) + DivClass::pullback(0, twist);
  m.canonical_expr_ = CurveExpr::curve("B", -1) + CurveExpr::curve("Bp", -1);
  return m;
}

int SurfaceModel::add_point(std::optional<std::string> name, std::vector<std::string> curves) {
  const int id = next_point_id_++;
  points_.push_back(PointRecord{id, std::move(name), std::move(curves)});
  return id;
}

SurfaceModel SurfaceModel::with_relations(RelationSet rels) const {
  SurfaceModel m = *this;
  m.relations_ = std::move(rels);
  return m;
}

bool SurfaceModel::has_curve(const std::string& name) const {
  return std::any_of(curves_.begin(), curves_.end(), [&](const auto& c) { return c.name == name; });
}

const CurveRecord& SurfaceModel::curve(const std::string& name) const {
  for (const auto& c : curves_)
    if (c.name == name) return c;
  throw Error(ErrorCode::usage, "unknown curve '" + name + "'");
}

CurveRecord& SurfaceModel::curve_mut(const std::string& name) {
  for (auto& c : curves_)
    if (c.name == name) return c;
  throw Error(ErrorCode::usage, "unknown curve '" + name + "'");
}

std::vector<PointRecord> SurfaceModel::incidence(const std::string& a, const std::string& b) const {
  std::vector<PointRecord> out;
  if (a == b) return out;
  for (const auto& p : points_)
    if (p.on(a) && p.on(b)) out.push_back(p);
  return out;
}

SurfaceModel SurfaceModel::blow_up(const BlowupCenter& center, const std::string& new_name) const {
  if (has_curve(new_name) || new_name == base_curve_ ||
      std::find(base_symbols_.begin(), base_symbols_.end(), new_name) != base_symbols_.end() ||
      std::find(base_points_.begin(), base_points_.end(), new_name) != base_points_.end())
    throw Error(ErrorCode::usage, "name '" + new_name + "' is already in use");

  SurfaceModel m = *this;
  std::optional<std::size_t> center_index;

  switch (center.kind) {
    case BlowupCenter::Kind::intersection: {
      curve(center.first);
      curve(center.second);
      if (center.first == center.second)
        throw Error(ErrorCode::usage, "intersection center needs two distinct curves");
      std::vector<std::size_t> shared;
      for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_[i].on(center.first) && points_[i].on(center.second)) shared.push_back(i);
      const Rational meet = surf::intersect(curve(center.first).cls, curve(center.second).cls);
      if (shared.size() != 1 || meet != Rational(1))
        throw Error(ErrorCode::unsupported_configuration,
                    center.str() + " is not a single transverse intersection point");
      center_index = shared.front();
      break;
    }
    case BlowupCenter::Kind::named_point: {
      curve(center.first);
      if (std::find(base_points_.begin(), base_points_.end(), center.point) == base_points_.end())
        throw Error(ErrorCode::usage, "point '" + center.point + "' is not a declared base point");
      for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_[i].name == center.point) center_index = i;
      if (center_index) {
        if (!points_[*center_index].on(center.first))
          throw Error(ErrorCode::unsupported_configuration,
                      "point '" + center.point + "' is tracked but does not lie on " + center.first);
      } else {
        m.add_point(center.point, {center.first});
        center_index = m.points_.size() - 1;
      }
      break;
    }
    case BlowupCenter::Kind::general:
      break;
  }

  std::vector<std::string> through;
  std::optional<std::string> center_name;
  if (center_index) {
    const PointRecord& p = m.points_[*center_index];
    if (p.curves.size() > 2)
      throw Error(ErrorCode::unsupported_configuration, "center " + center.str() + " is a triple point");
    through = p.curves;
    center_name = p.name;
    m.points_.erase(m.points_.begin() + static_cast<std::ptrdiff_t>(*center_index));
  }

  const std::size_t n = blowup_count() + 1;
  const DivClass e_new = DivClass::exceptional(n, n - 1);
  for (auto& c : m.curves_) {
    c.cls = c.cls.extended(n);
    if (std::find(through.begin(), through.end(), c.name) != through.end()) {
      c.cls -= e_new;
      if (c.genus == 1 && c.normal_pic) {
        c.normal_pic->degree -= 1;
        if (center_name)
          c.normal_pic->pic0 -= Pic0Class::symbol(point_symbol(*center_name));
        else
          c.normal_opaque = true;
      }
    }
  }

  Rational k_coeff = 1;
  for (const auto& name : through) k_coeff += m.canonical_expr_.coeff(name);
  m.canonical_ = m.canonical_.extended(n) + e_new;
  m.canonical_expr_.add(new_name, k_coeff);

  m.curves_.push_back(CurveRecord{new_name, 0, e_new, std::nullopt, false});
  bool name_used = false;
  for (const auto& name : through) {
    std::optional<std::string> label;
    if (center_name && !name_used && m.curve(name).genus == 1) {
      label = center_name;
      name_used = true;
    }
    m.add_point(label, {name, new_name});
  }
  m.history_.push_back(BlowupRecord{new_name, center, through});
  return m;
}

DivClass SurfaceModel::evaluate(const CurveExpr& expr) const {
  DivClass out(blowup_count());
  for (const auto& [name, c] : expr.curves) out += c * curve(name).cls;
  out.pic0 += expr.pullback;
  return out;
}

Rational SurfaceModel::intersect(const CurveExpr& a, const CurveExpr& b) const {
  return surf::intersect(evaluate(a), evaluate(b));
}

bool SurfaceModel::descends_from(const SurfaceModel& ancestor) const {
  if (ancestor.base_curve_ != base_curve_ || ancestor.base_symbols_ != base_symbols_) return false;
  if (ancestor.history_.size() > history_.size()) return false;
  for (std::size_t i = 0; i < ancestor.history_.size(); ++i) {
    if (ancestor.history_[i].exceptional != history_[i].exceptional ||
        ancestor.history_[i].through != history_[i].through)
      return false;
  }
  return true;
}

DivClass SurfaceModel::total_pullback(const SurfaceModel& ancestor, const DivClass& d) const {
  if (!descends_from(ancestor))
    throw Error(ErrorCode::usage, "total_pullback: source model is not an ancestor");
  if (d.blowups() != ancestor.blowup_count())
    throw Error(ErrorCode::usage, "total_pullback: class does not live on the ancestor model");
  return d.extended(blowup_count());
}

CurveExpr SurfaceModel::total_pullback(const SurfaceModel& ancestor, const CurveExpr& expr) const {
  if (!descends_from(ancestor))
    throw Error(ErrorCode::usage, "total_pullback: source model is not an ancestor");
  for (const auto& [name, _] : expr.curves) ancestor.curve(name);
  CurveExpr out = expr;
  for (std::size_t i = ancestor.blowup_count(); i < history_.size(); ++i) {
    Rational mult = 0;
    for (const auto& name : history_[i].through) mult += out.coeff(name);
    out.add(history_[i].exceptional, mult);
  }
  return out;
}

Restriction SurfaceModel::restrict_to_curve(const CurveExpr& expr, const std::string& target) const {
  const CurveRecord& t = curve(target);
  Restriction r;
  r.degree = surf::intersect(evaluate(expr), t.cls);
  if (t.genus == 0) {
    r.pic0 = Pic0Class{};
    return r;
  }
  if (!t.normal_pic) {
    r.note = "curve " + target + " has no normal class record";
    return r;
  }

  PicCurveClass acc{0, expr.pullback};
  for (const auto& [name, c] : expr.curves) {
    if (name == target) {
      if (t.normal_opaque) {
        r.note = "normal class of " + target + " involves an anonymous point";
        return r;
      }
      acc += c * *t.normal_pic;
      continue;
    }
    for (const auto& p : incidence(name, target)) {
      if (!p.name) {
        r.note = name + " meets " + target + " at an anonymous point";
        return r;
      }
      acc += c * PicCurveClass{1, Pic0Class::symbol(point_symbol(*p.name))};
    }
  }
  if (acc.degree != r.degree) {
    r.note = "incidence bookkeeping disagrees with the intersection number on " + target;
    return r;
  }
  r.pic0 = acc.pic0;
  return r;
}

std::vector<std::string> SurfaceModel::consistency_violations() const {
  std::vector<std::string> out;
  for (const auto& c : curves_) {
    const Rational lhs = surf::intersect(c.cls, c.cls) + surf::intersect(canonical_, c.cls);
    if (lhs != Rational(2 * c.genus - 2))
      out.push_back("adjunction fails on " + c.name + ": C^2 + K.C = " + lhs.str());
    if (c.cls.blowups() != blowup_count()) out.push_back("class of " + c.name + " has stale dimension");
    if (c.genus == 1 && c.normal_pic && c.normal_pic->degree != surf::intersect(c.cls, c.cls))
      out.push_back("normal degree of " + c.name + " differs from its self-intersection");
  }
  for (std::size_t i = 0; i < curves_.size(); ++i)
    for (std::size_t j = i + 1; j < curves_.size(); ++j) {
      const auto shared = incidence(curves_[i].name, curves_[j].name);
      const Rational meet = surf::intersect(curves_[i].cls, curves_[j].cls);
      if (meet != Rational(static_cast<std::int64_t>(shared.size())))
        out.push_back("incidence of " + curves_[i].name + " and " + curves_[j].name +
                      " disagrees with intersection number " + meet.str());
    }
  if (evaluate(canonical_expr_) != canonical_ &&
      !lin_equiv(evaluate(canonical_expr_), canonical_, relations_))
    out.push_back("canonical curve expression is not equivalent to K");
  return out;
}

}  // namespace surf
