#include "wuq/matrix.hpp"

#include "wuq/error.hpp"

namespace wuq {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) throw Error(ErrorCode::LengthMismatch, "matrix data size differs from rows*cols");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 1; i <= n; ++i) m.at(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

FinVec Matrix::row(std::size_t r) const {
  FinVec v;
  for (std::size_t c = 1; c <= cols_; ++c) v.set(c, at(r, c));
  return v;
}

FinVec Matrix::column(std::size_t c) const {
  FinVec v;
  for (std::size_t r = 1; r <= rows_; ++r) v.set(r, at(r, c));
  return v;
}

FinVec Matrix::apply(const FinVec& x) const {
  if (x.max_index() > cols_) throw Error(ErrorCode::SupportOverflow, "vector exceeds the matrix domain");
  std::vector<Scalar> acc(rows_);
  for (const auto& [c, v] : x.entries())
    for (std::size_t r = 1; r <= rows_; ++r) {
      const Scalar& a = at(r, c);
      if (a != 0) acc[r - 1] += a * v;
    }
  FinVec y;
  for (std::size_t r = 0; r < rows_; ++r) y.set(r + 1, acc[r]);
  return y;
}

FinVec Matrix::apply_transpose(const FinVec& y) const {
  if (y.max_index() > rows_) throw Error(ErrorCode::SupportOverflow, "vector exceeds the matrix codomain");
  std::vector<Scalar> acc(cols_);
  for (const auto& [r, v] : y.entries())
    for (std::size_t c = 1; c <= cols_; ++c) {
      const Scalar& a = at(r, c);
      if (a != 0) acc[c - 1] += a * v;
    }
  FinVec x;
  for (std::size_t c = 0; c < cols_; ++c) x.set(c + 1, acc[c]);
  return x;
}

Matrix Matrix::masked(Index row_first, Index row_last, const std::vector<bool>& keep_col) const {
  Matrix m(rows_, cols_);
  for (std::size_t r = 1; r <= rows_; ++r) {
    if (r < row_first || r > row_last) continue;
    for (std::size_t c = 1; c <= cols_; ++c)
      if (c <= keep_col.size() && keep_col[c - 1]) m.at(r, c) = at(r, c);
  }
  return m;
}

}  // namespace wuq

namespace wuq {

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 1; r <= rows_; ++r)
    for (std::size_t c = 1; c <= cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorCode::LengthMismatch, "matrix product dimensions");
  Matrix p(rows_, other.cols_);
  for (std::size_t r = 1; r <= rows_; ++r)
    for (std::size_t k = 1; k <= cols_; ++k) {
      const Scalar& a = at(r, k);
      if (a == 0) continue;
      for (std::size_t c = 1; c <= other.cols_; ++c) p.at(r, c) += a * other.at(k, c);
    }
  return p;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::LengthMismatch, "matrix difference dimensions");
  Matrix d = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) d.data_[i] -= other.data_[i];
  return d;
}

std::vector<std::size_t> Matrix::pivot_columns() const {
  Matrix m = *this;
  std::vector<std::size_t> pivots;
  std::size_t row = 1;
  for (std::size_t c = 1; c <= cols_ && row <= rows_; ++c) {
    std::size_t p = row;
    while (p <= rows_ && m.at(p, c) == 0) ++p;
    if (p > rows_) continue;
    for (std::size_t k = 1; k <= cols_; ++k) std::swap(m.at(p, k), m.at(row, k));
    for (std::size_t r = row + 1; r <= rows_; ++r) {
      if (m.at(r, c) == 0) continue;
      const Scalar f = m.at(r, c) / m.at(row, c);
      for (std::size_t k = c; k <= cols_; ++k) m.at(r, k) -= f * m.at(row, k);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::size_t Matrix::rank() const { return pivot_columns().size(); }

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  Matrix a = *this;
  Matrix inv = identity(n);
  for (std::size_t c = 1; c <= n; ++c) {
    std::size_t p = c;
    while (p <= n && a.at(p, c) == 0) ++p;
    if (p > n) return std::nullopt;
    for (std::size_t k = 1; k <= n; ++k) {
      std::swap(a.at(p, k), a.at(c, k));
      std::swap(inv.at(p, k), inv.at(c, k));
    }
    const Scalar pivot = a.at(c, c);
    for (std::size_t k = 1; k <= n; ++k) {
      a.at(c, k) /= pivot;
      inv.at(c, k) /= pivot;
    }
    for (std::size_t r = 1; r <= n; ++r) {
      if (r == c || a.at(r, c) == 0) continue;
      const Scalar f = a.at(r, c);
      for (std::size_t k = 1; k <= n; ++k) {
        a.at(r, k) -= f * a.at(c, k);
        inv.at(r, k) -= f * inv.at(c, k);
      }
    }
  }
  return inv;
}

}  // namespace wuq
