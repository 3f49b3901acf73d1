#include "surf/matrix.hpp"

#include <utility>

#include "surf/error.hpp"

namespace surf {

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::usage, "ragged matrix literal");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool QMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

QMatrix QMatrix::leading(std::size_t k) const {
  QMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
  return m;
}

QMatrix QMatrix::principal(std::span<const std::size_t> indices) const {
  QMatrix m(indices.size(), indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) m(i, j) = (*this)(indices[i], indices[j]);
  return m;
}

std::vector<Rational> QMatrix::apply(std::span<const Rational> x) const {
  if (x.size() != cols_) throw Error(ErrorCode::usage, "matrix-vector dimension mismatch");
  std::vector<Rational> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * x[j];
  return out;
}

Rational determinant(const QMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::usage, "determinant of a non-square matrix");
  QMatrix m = a;
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      const Rational factor = m(r, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(r, j) -= factor * m(col, j);
    }
  }
  return det;
}

std::optional<std::vector<Rational>> solve_linear(const QMatrix& a, std::span<const Rational> b) {
  if (!a.is_square()) throw Error(ErrorCode::usage, "solve_linear needs a square matrix");
  if (b.size() != a.rows()) throw Error(ErrorCode::usage, "right-hand side length does not match matrix");
  const std::size_t n = a.rows();
  QMatrix m = a;
  std::vector<Rational> rhs(b.begin(), b.end());

  for (std::size_t col = 0; col < n; ++col) {
    // first nonzero pivot; exact arithmetic needs no magnitude heuristics
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      std::swap(rhs[pivot], rhs[col]);
    }
    const Rational inv = Rational(1) / m(col, col);
    for (std::size_t j = col; j < n; ++j) m(col, j) *= inv;
    rhs[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m(r, col).is_zero()) continue;
      const Rational factor = m(r, col);
      for (std::size_t j = col; j < n; ++j) m(r, j) -= factor * m(col, j);
      rhs[r] -= factor * rhs[col];
    }
  }
  return rhs;
}

bool is_negative_definite(const QMatrix& a) {
  if (!a.is_symmetric()) throw Error(ErrorCode::usage, "is_negative_definite needs a symmetric matrix");
  for (std::size_t k = 1; k <= a.rows(); ++k) {
    const Rational minor = determinant(a.leading(k));
    const int expected = (k % 2 == 1) ? -1 : 1;
    if (minor.sign() != expected) return false;
  }
  return true;
}

}  // namespace surf
