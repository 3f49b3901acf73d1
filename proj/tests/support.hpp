#pragma once
// Shared builders, random generators and independent oracles for the tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "surf/contraction.hpp"
#include "surf/matrix.hpp"
#include "surf/picard.hpp"
#include "surf/surface.hpp"

namespace testing {

using surf::BlowupCenter;
using surf::CurveExpr;
using surf::DivClass;
using surf::Pic0Class;
using surf::QMatrix;
using surf::Rational;
using surf::SurfaceModel;

inline SurfaceModel ruled_S() { return SurfaceModel::ruled(surf::RuledSurfaceSpec{}); }

inline SurfaceModel model_X1() { return ruled_S().blow_up(BlowupCenter::meet("B", "F"), "E1"); }
inline SurfaceModel model_X() { return model_X1().blow_up(BlowupCenter::meet("E1", "F"), "E2"); }
inline SurfaceModel model_X3() { return model_X().blow_up(BlowupCenter::meet("B", "Fp"), "E3"); }
inline SurfaceModel model_X4() { return model_X3().blow_up(BlowupCenter::meet("E3", "Fp"), "E4"); }
inline SurfaceModel model_Xt() { return model_X4().blow_up(BlowupCenter::meet("E4", "Fp"), "E5"); }

inline Pic0Class relation_7e() {
  // xi_x - xi_xp - 7e
  return Pic0Class::symbol("xi_x") - Pic0Class::symbol("xi_xp") - Rational(7) * Pic0Class::symbol("e");
}

class Rng {
 public:
  explicit Rng(std::uint32_t seed) : gen_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  Rational rational(int span = 9, int max_den = 6) {
    return Rational(integer(-span, span), integer(1, max_den));
  }

  Pic0Class pic0(const std::vector<std::string>& symbols) {
    Pic0Class c;
    for (const auto& s : symbols)
      if (integer(0, 1)) c.add(s, rational());
    return c;
  }

  CurveExpr curve_expr(const SurfaceModel& m) {
    CurveExpr e;
    for (const auto& c : m.curves())
      if (integer(0, 2)) e.add(c.name, rational());
    e.pullback = pic0({"e", "xi_x", "xi_xp"});
    return e;
  }

  DivClass div_class(std::size_t blowups) {
    DivClass d(blowups);
    d.section = rational();
    d.fiber = rational();
    for (auto& x : d.exc) x = rational();
    d.pic0 = pic0({"e", "xi_x", "xi_xp"});
    return d;
  }

  QMatrix symmetric(std::size_t n, int span = 5) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = rational(span, 3);
    return m;
  }

 private:
  std::mt19937 gen_;
};

/// Numerical pairing written out from the basis Gram: Bbar.Fbar = 1, Ei.Ej = -delta_ij.
inline Rational oracle_dot(const DivClass& a, const DivClass& b) {
  Rational s = a.section * b.fiber + a.fiber * b.section;
  for (std::size_t i = 0; i < a.exc.size(); ++i) s -= a.exc[i] * b.exc[i];
  return s;
}

/// Laplace expansion along the first row.
inline Rational oracle_det(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Rational total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    QMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    const Rational term = m(0, j) * oracle_det(minor);
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

/// Negative definite iff every principal minor of order k has sign (-1)^k.
inline bool oracle_negative_definite(const QMatrix& m) {
  const std::size_t n = m.rows();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    QMatrix sub(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = m(idx[r], idx[c]);
    const int want = idx.size() % 2 == 0 ? 1 : -1;
    if (oracle_det(sub).sign() != want) return false;
  }
  return true;
}

/// Cramer's rule with Laplace determinants.
inline std::vector<Rational> oracle_solve(const QMatrix& a, const std::vector<Rational>& b) {
  const Rational d = oracle_det(a);
  std::vector<Rational> x(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    QMatrix aj = a;
    for (std::size_t i = 0; i < b.size(); ++i) aj(i, j) = b[i];
    x[j] = oracle_det(aj) / d;
  }
  return x;
}

/// Mumford coefficients of D along the contracted curves, solved independently.
inline CurveExpr oracle_mumford(const SurfaceModel& m, const std::vector<std::string>& curves, const CurveExpr& d) {
  const std::size_t n = curves.size();
  QMatrix g(n, n);
  std::vector<Rational> rhs(n);
  const DivClass dc = m.evaluate(d);
  for (std::size_t i = 0; i < n; ++i) {
    const DivClass ci = m.curve(curves[i]).cls;
    rhs[i] = -oracle_dot(dc, ci);
    for (std::size_t j = 0; j < n; ++j) g(i, j) = oracle_dot(ci, m.curve(curves[j]).cls);
  }
  const auto x = oracle_solve(g, rhs);
  CurveExpr out = d;
  for (std::size_t i = 0; i < n; ++i) out.add(curves[i], x[i]);
  return out;
}

}  // namespace testing
