#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lienil/field.hpp"

namespace lienil {

using Vector = std::vector<Scalar>;

inline Vector zero_vector(const Field& f, std::size_t n) {
  return Vector(n, Scalar::zero(f));
}

inline bool is_zero_vector(std::span<const Scalar> v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

/// Dense row-major matrix over a single field.
class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(field),
        rows_(rows),
        cols_(cols),
        data_(rows * cols, Scalar::zero(field)) {}

  static Matrix identity(Field field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
    return m;
  }

  /// Builds a matrix whose rows are the given vectors (all of length cols).
  static Matrix from_rows(Field field, std::size_t cols,
                          std::span<const Vector> rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols)
        throw InputError("row " + std::to_string(r) + " has length " +
                         std::to_string(rows[r].size()) + ", expected " +
                         std::to_string(cols));
      for (std::size_t c = 0; c < cols; ++c) {
        require_same_field(field, rows[r][c].field());
        m(r, c) = rows[r][c];
      }
    }
    return m;
  }

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Scalar& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const Scalar> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vector row_vector(std::size_t r) const {
    auto s = row(r);
    return Vector(s.begin(), s.end());
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_field(a.field_, b.field_);
    if (a.cols_ != b.rows_) throw InputError("matrix product shape mismatch");
    Matrix out(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  /// Row-major flattening of all entries.
  Vector vectorize() const { return data_; }

  static Matrix unvectorize(Field field, std::size_t n,
                            std::span<const Scalar> v) {
    if (v.size() != n * n) throw InputError("vector length is not n*n");
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < v.size(); ++i) m.data_[i] = v[i];
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Matrix form;  ///< zero rows removed
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form. Zero rows are dropped, so form.rows() == rank.
inline RrefResult rref(const Matrix& input) {
  Matrix m = input;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(p, k), m(r, k));
    const Scalar inv = m(r, c).inverse();
    for (std::size_t k = c; k < cols; ++k) m(r, k) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Scalar f = m(i, c);
      for (std::size_t k = c; k < cols; ++k)
        if (!m(r, k).is_zero()) m(i, k) -= f * m(r, k);
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix form(m.field(), r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < cols; ++k) form(i, k) = m(i, k);
  return {std::move(form), r, std::move(pivots)};
}

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<Matrix> inverse(const Matrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InputError("inverse of a non-square matrix");
  if (n == 0) return a;
  Matrix aug(a.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Scalar::one(a.field());
  }
  const auto red = rref(aug);
  if (red.rank < n || red.pivots[n - 1] >= n) return std::nullopt;
  Matrix inv(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = red.form(i, n + j);
  return inv;
}

/// Coefficients c with sum_r c[r] * basis_rows[r] == target, one entry per
/// target; nullopt when the target lies outside the span. basis_rows must be
/// linearly independent.
inline std::vector<std::optional<Vector>> express_in_basis(
    const Field& field, std::size_t ambient, std::span<const Vector> basis_rows,
    std::span<const Vector> targets) {
  const std::size_t k = basis_rows.size(), t = targets.size();
  // Columns: basis vectors, then targets. Rows: ambient coordinates.
  Matrix aug(field, ambient, k + t);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < ambient; ++i) aug(i, j) = basis_rows[j][i];
  for (std::size_t j = 0; j < t; ++j)
    for (std::size_t i = 0; i < ambient; ++i) aug(i, k + j) = targets[j][i];
  const auto red = rref(aug);
  std::size_t basis_rank = 0;
  while (basis_rank < red.pivots.size() && red.pivots[basis_rank] < k)
    ++basis_rank;
  if (basis_rank != k) throw InputError("basis vectors are dependent");
  std::vector<std::optional<Vector>> out;
  out.reserve(t);
  for (std::size_t j = 0; j < t; ++j) {
    bool inside = true;
    for (std::size_t r = k; r < red.rank; ++r)
      if (!red.form(r, k + j).is_zero()) inside = false;
    if (!inside) {
      out.emplace_back(std::nullopt);
      continue;
    }
    Vector coeffs(k, Scalar::zero(field));
    for (std::size_t r = 0; r < k; ++r) coeffs[r] = red.form(r, k + j);
    out.emplace_back(std::move(coeffs));
  }
  return out;
}

}  // namespace lienil
