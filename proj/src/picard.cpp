#include "surf/picard.hpp"

#include <sstream>

#include "surf/error.hpp"

namespace surf {

Pic0Class Pic0Class::symbol(const std::string& name, const Rational& coeff) {
  Pic0Class c;
  c.add(name, coeff);
  return c;
}

Rational Pic0Class::coeff(const std::string& name) const {
  const auto it = terms_.find(name);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Pic0Class::add(const std::string& name, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(name, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Pic0Class Pic0Class::operator-() const {
  Pic0Class out = *this;
  for (auto& [_, c] : out.terms_) c = -c;
  return out;
}

Pic0Class& Pic0Class::operator+=(const Pic0Class& o) {
  for (const auto& [name, c] : o.terms_) add(name, c);
  return *this;
}

Pic0Class& Pic0Class::operator-=(const Pic0Class& o) {
  for (const auto& [name, c] : o.terms_) add(name, -c);
  return *this;
}

Pic0Class& Pic0Class::operator*=(const Rational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [_, c] : terms_) c *= s;
  return *this;
}

namespace {

void append_term(std::ostringstream& os, bool first, const Rational& c, const std::string& atom) {
  const bool negative = c.sign() < 0;
  const Rational mag = negative ? -c : c;
  if (first)
    os << (negative ? "-" : "");
  else
    os << (negative ? " - " : " + ");
  if (mag != Rational(1)) os << mag << "*";
  os << atom;
}

}  // namespace

std::string Pic0Class::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, c] : terms_) {
    append_term(os, first, c, name);
    first = false;
  }
  return os.str();
}

bool RelationSet::add(const Pic0Class& relation) {
  Pic0Class row = reduce(relation);
  if (row.is_zero()) return false;
  const std::string pivot_name = row.terms().rbegin()->first;
  const Rational lead = row.terms().rbegin()->second;
  row *= Rational(1) / lead;
  for (auto& other : rows_) {
    const Rational c = other.coeff(pivot_name);
    if (!c.is_zero()) other -= c * row;
  }
  rows_.push_back(std::move(row));
  return true;
}

Pic0Class RelationSet::reduce(const Pic0Class& c) const {
  Pic0Class out = c;
  for (const auto& row : rows_) {
    const std::string& pivot = row.terms().rbegin()->first;
    const Rational k = out.coeff(pivot);
    if (!k.is_zero()) out -= k * row;
  }
  return out;
}

DivClass DivClass::section_class(std::size_t blowups) {
  DivClass d(blowups);
  d.section = 1;
  return d;
}

DivClass DivClass::fiber_class(std::size_t blowups) {
  DivClass d(blowups);
  d.fiber = 1;
  return d;
}

DivClass DivClass::exceptional(std::size_t blowups, std::size_t index) {
  if (index >= blowups) throw Error(ErrorCode::usage, "exceptional index out of range");
  DivClass d(blowups);
  d.exc[index] = 1;
  return d;
}

DivClass DivClass::pullback(std::size_t blowups, const Pic0Class& c) {
  DivClass d(blowups);
  d.pic0 = c;
  return d;
}

bool DivClass::numerically_trivial() const {
  if (!section.is_zero() || !fiber.is_zero()) return false;
  for (const auto& e : exc)
    if (!e.is_zero()) return false;
  return true;
}

DivClass DivClass::extended(std::size_t blowups) const {
  if (blowups < exc.size()) throw Error(ErrorCode::usage, "cannot extend a class to a smaller model");
  DivClass d = *this;
  d.exc.resize(blowups);
  return d;
}

DivClass DivClass::operator-() const { return Rational(-1) * *this; }

DivClass& DivClass::operator+=(const DivClass& o) {
  if (o.exc.size() != exc.size()) throw Error(ErrorCode::usage, "adding classes from different surfaces");
  section += o.section;
  fiber += o.fiber;
  for (std::size_t i = 0; i < exc.size(); ++i) exc[i] += o.exc[i];
  pic0 += o.pic0;
  return *this;
}

DivClass& DivClass::operator-=(const DivClass& o) { return *this += -o; }

DivClass& DivClass::operator*=(const Rational& s) {
  section *= s;
  fiber *= s;
  for (auto& e : exc) e *= s;
  pic0 *= s;
  return *this;
}

std::string DivClass::str() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](const Rational& c, const std::string& atom) {
    if (c.is_zero()) return;
    append_term(os, first, c, atom);
    first = false;
  };
  term(section, "Bbar");
  term(fiber, "Fbar");
  for (std::size_t i = 0; i < exc.size(); ++i) term(exc[i], "Etot" + std::to_string(i + 1));
  if (!pic0.is_zero()) {
    os << (first ? "" : " + ") << "p*(" << pic0.str() << ")";
    first = false;
  }
  return first ? "0" : os.str();
}

PicCurveClass& PicCurveClass::operator+=(const PicCurveClass& o) {
  degree += o.degree;
  pic0 += o.pic0;
  return *this;
}

Rational intersect(const DivClass& a, const DivClass& b) {
  if (a.exc.size() != b.exc.size())
    throw Error(ErrorCode::usage, "intersecting classes from different surfaces");
  Rational out = a.section * b.fiber + a.fiber * b.section;
  for (std::size_t i = 0; i < a.exc.size(); ++i) out -= a.exc[i] * b.exc[i];
  return out;
}

bool lin_equiv(const DivClass& a, const DivClass& b, const RelationSet& rels) {
  if (a.exc.size() != b.exc.size())
    throw Error(ErrorCode::usage, "comparing classes from different surfaces");
  const DivClass diff = a - b;
  return diff.numerically_trivial() && rels.reduce(diff.pic0).is_zero();
}

}  // namespace surf
