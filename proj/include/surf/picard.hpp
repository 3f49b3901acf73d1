#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "surf/rational.hpp"

namespace surf {

/// Formal Q-combination of Pic^0 symbols of the base curve ("e", "xi_x", ...).
/// Zero coefficients are never stored, so == is exact equality of classes.
class Pic0Class {
 public:
  Pic0Class() = default;
  static Pic0Class symbol(const std::string& name, const Rational& coeff = 1);

  const std::map<std::string, Rational>& terms() const { return terms_; }
  Rational coeff(const std::string& name) const;
  bool is_zero() const { return terms_.empty(); }
  void add(const std::string& name, const Rational& coeff);

  Pic0Class operator-() const;
  Pic0Class& operator+=(const Pic0Class& o);
  Pic0Class& operator-=(const Pic0Class& o);
  Pic0Class& operator*=(const Rational& s);
  friend Pic0Class operator+(Pic0Class a, const Pic0Class& b) { return a += b; }
  friend Pic0Class operator-(Pic0Class a, const Pic0Class& b) { return a -= b; }
  friend Pic0Class operator*(const Rational& s, Pic0Class a) { return a *= s; }

  friend bool operator==(const Pic0Class&, const Pic0Class&) = default;

  /// "0", or e.g. "7/5*e - 1/5*xi_x + 1/5*xi_xp".
  std::string str() const;

 private:
  std::map<std::string, Rational> terms_;
};

/// Declared relations "c == 0" in Pic^0 (x) Q, kept in reduced echelon form.
/// The pivot of each relation is its lexicographically largest symbol, and no
/// pivot occurs in any other stored relation.
class RelationSet {
 public:
  RelationSet() = default;

  /// Adds a relation; returns false if it was already implied by the set.
  bool add(const Pic0Class& relation);

  const std::vector<Pic0Class>& relations() const { return rows_; }
  bool empty() const { return rows_.empty(); }

  /// Canonical representative of c modulo the span of the relations.
  Pic0Class reduce(const Pic0Class& c) const;

 private:
  std::vector<Pic0Class> rows_;
};

inline Pic0Class pic0_reduce(const Pic0Class& c, const RelationSet& rels) { return rels.reduce(c); }

/// Divisor class on a blow-up of the ruled surface, in the basis
/// {Bbar, Fbar, E_1..E_n} with E_i total transforms, plus a numerically
/// trivial pullback p^*(pic0).
struct DivClass {
  Rational section;
  Rational fiber;
  std::vector<Rational> exc;
  Pic0Class pic0;

  DivClass() = default;
  explicit DivClass(std::size_t blowups) : exc(blowups) {}

  static DivClass section_class(std::size_t blowups);
  static DivClass fiber_class(std::size_t blowups);
  static DivClass exceptional(std::size_t blowups, std::size_t index);  // index is 0-based
  static DivClass pullback(std::size_t blowups, const Pic0Class& c);

  std::size_t blowups() const { return exc.size(); }
  /// All lattice coordinates vanish (the class is numerically trivial).
  bool numerically_trivial() const;
  bool is_zero() const { return numerically_trivial() && pic0.is_zero(); }

  /// Total transform to a model with more blow-ups (zero padding).
  DivClass extended(std::size_t blowups) const;

  DivClass operator-() const;
  DivClass& operator+=(const DivClass& o);
  DivClass& operator-=(const DivClass& o);
  DivClass& operator*=(const Rational& s);
  friend DivClass operator+(DivClass a, const DivClass& b) { return a += b; }
  friend DivClass operator-(DivClass a, const DivClass& b) { return a -= b; }
  friend DivClass operator*(const Rational& s, DivClass a) { return a *= s; }

  friend bool operator==(const DivClass&, const DivClass&) = default;

  std::string str() const;
};

/// Class of a divisor on a genus-1 curve: degree * [o] + pic0.
struct PicCurveClass {
  Rational degree;
  Pic0Class pic0;

  PicCurveClass& operator+=(const PicCurveClass& o);
  friend PicCurveClass operator*(const Rational& s, PicCurveClass c) {
    c.degree *= s;
    c.pic0 *= s;
    return c;
  }
  friend bool operator==(const PicCurveClass&, const PicCurveClass&) = default;
};

/// The intersection pairing. Throws Error(usage) when the classes live on
/// different blow-ups.
Rational intersect(const DivClass& a, const DivClass& b);

/// Linear equivalence modulo the declared Pic^0 relations.
bool lin_equiv(const DivClass& a, const DivClass& b, const RelationSet& rels);

}  // namespace surf
