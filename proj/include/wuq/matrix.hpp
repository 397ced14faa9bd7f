#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wuq/scalar.hpp"
#include "wuq/seqvec.hpp"

namespace wuq {

/// Dense exact matrix mapping domain coordinates 1..cols to codomain
/// coordinates 1..rows. Accessors are 1-based to match coordinate indices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> row_major);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[(r - 1) * cols_ + (c - 1)]; }
  Scalar& at(std::size_t r, std::size_t c) { return data_[(r - 1) * cols_ + (c - 1)]; }

  bool is_zero() const;
  FinVec row(std::size_t r) const;
  FinVec column(std::size_t c) const;

  /// Throws SupportOverflow when x has coordinates beyond cols.
  FinVec apply(const FinVec& x) const;
  FinVec apply_transpose(const FinVec& y) const;

  /// Copy keeping only rows in [row_first, row_last] and columns in the
  /// given set; the rest is zeroed (Q A P for coordinate projections Q, P).
  Matrix masked(Index row_first, Index row_last, const std::vector<bool>& keep_col) const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;

  std::size_t rank() const;
  /// Indices (1-based) of a maximal independent set of columns, leftmost first.
  std::vector<std::size_t> pivot_columns() const;
  /// Inverse of a square matrix; nullopt when singular.
  std::optional<Matrix> inverse() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

}  // namespace wuq
