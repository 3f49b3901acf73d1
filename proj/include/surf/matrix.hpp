#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "surf/rational.hpp"

namespace surf {

/// Dense row-major matrix over the rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  /// Leading k x k block.
  QMatrix leading(std::size_t k) const;
  /// Principal submatrix on the given (sorted, distinct) indices.
  QMatrix principal(std::span<const std::size_t> indices) const;

  std::vector<Rational> apply(std::span<const Rational> x) const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Exact determinant by fraction-free elimination over Q.
Rational determinant(const QMatrix& a);

/// Unique solution of A x = b, or nullopt when A is singular.
/// Throws Error(usage) if A is not square or b has the wrong length.
std::optional<std::vector<Rational>> solve_linear(const QMatrix& a, std::span<const Rational> b);

/// Sylvester's criterion for negative definiteness: (-1)^k det(A_k) > 0 for every
/// leading block A_k. Throws Error(usage) on non-symmetric input.
bool is_negative_definite(const QMatrix& a);

}  // namespace surf
