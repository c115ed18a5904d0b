#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lienil/matrix.hpp"

namespace lienil {

/// Incrementally maintained reduced row-echelon basis. Rows stay sorted by
/// pivot column with zeros above and below every pivot.
class SpanBuilder {
 public:
  SpanBuilder(Field field, std::size_t ambient)
      : field_(field), ambient_(ambient) {}

  const Field& field() const noexcept { return field_; }
  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<Vector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Residual of v after elimination against the current rows.
  Vector reduce(Vector v) const {
    check(v);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Scalar c = v[pivots_[r]];
      if (c.is_zero()) continue;
      const Vector& row = rows_[r];
      for (std::size_t k = pivots_[r]; k < ambient_; ++k)
        if (!row[k].is_zero()) v[k] -= c * row[k];
    }
    return v;
  }

  bool contains(const Vector& v) const { return is_zero_vector(reduce(v)); }

  /// Adds v to the span; returns false if it was already contained.
  bool insert(const Vector& v) {
    Vector res = reduce(v);
    std::size_t piv = 0;
    while (piv < ambient_ && res[piv].is_zero()) ++piv;
    if (piv == ambient_) return false;
    const Scalar inv = res[piv].inverse();
    for (std::size_t k = piv; k < ambient_; ++k)
      if (!res[k].is_zero()) res[k] *= inv;
    for (auto& row : rows_) {
      const Scalar c = row[piv];
      if (c.is_zero()) continue;
      for (std::size_t k = piv; k < ambient_; ++k)
        if (!res[k].is_zero()) row[k] -= c * res[k];
    }
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(pivots_.begin(), pivots_.end(), piv) -
        pivots_.begin());
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), piv);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos),
                 std::move(res));
    return true;
  }

 private:
  void check(const Vector& v) const {
    if (v.size() != ambient_)
      throw InputError("vector of length " + std::to_string(v.size()) +
                       " in ambient dimension " + std::to_string(ambient_));
    if (!v.empty()) require_same_field(field_, v.front().field());
  }

  Field field_;
  std::size_t ambient_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Linear subspace of K^n held in canonical reduced row-echelon form, so two
/// subspaces are equal iff their bases are identical.
class Subspace {
 public:
  Subspace(Field field, std::size_t ambient) : span_(field, ambient) {}
  explicit Subspace(SpanBuilder builder) : span_(std::move(builder)) {}

  static Subspace zero(Field field, std::size_t ambient) {
    return Subspace(field, ambient);
  }
  static Subspace full(Field field, std::size_t ambient) {
    SpanBuilder b(field, ambient);
    for (std::size_t i = 0; i < ambient; ++i) {
      Vector e = zero_vector(field, ambient);
      e[i] = Scalar::one(field);
      b.insert(e);
    }
    return Subspace(std::move(b));
  }
  static Subspace span(Field field, std::size_t ambient,
                       std::span<const Vector> vectors) {
    SpanBuilder b(field, ambient);
    for (const auto& v : vectors) b.insert(v);
    return Subspace(std::move(b));
  }

  const Field& field() const noexcept { return span_.field(); }
  std::size_t ambient_dim() const noexcept { return span_.ambient(); }
  std::size_t dim() const noexcept { return span_.dim(); }
  bool is_zero() const noexcept { return span_.dim() == 0; }
  const std::vector<Vector>& basis() const noexcept { return span_.rows(); }
  const std::vector<std::size_t>& pivot_cols() const noexcept {
    return span_.pivots();
  }
  Matrix basis_matrix() const {
    return Matrix::from_rows(field(), ambient_dim(), basis());
  }
  const SpanBuilder& builder() const noexcept { return span_; }

  bool contains(const Vector& v) const { return span_.contains(v); }

  /// Coordinates of v in the RREF basis; only meaningful if contains(v).
  Vector coordinates(const Vector& v) const {
    Vector c;
    c.reserve(dim());
    for (auto p : pivot_cols()) c.push_back(v[p]);
    return c;
  }

  Vector combination(std::span<const Scalar> coeffs) const {
    Vector v = zero_vector(field(), ambient_dim());
    for (std::size_t r = 0; r < dim(); ++r) {
      if (coeffs[r].is_zero()) continue;
      for (std::size_t k = 0; k < ambient_dim(); ++k)
        if (!basis()[r][k].is_zero()) v[k] += coeffs[r] * basis()[r][k];
    }
    return v;
  }

  bool contains(const Subspace& other) const {
    check(other);
    for (const auto& v : other.basis())
      if (!contains(v)) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field() == b.field() && a.ambient_dim() == b.ambient_dim() &&
           a.pivot_cols() == b.pivot_cols() && a.basis() == b.basis();
  }

  void check(const Subspace& other) const {
    require_same_field(field(), other.field());
    if (ambient_dim() != other.ambient_dim())
      throw InputError("ambient dimension mismatch: " +
                       std::to_string(ambient_dim()) + " vs " +
                       std::to_string(other.ambient_dim()));
  }

 private:
  SpanBuilder span_;
};

inline bool subspace_contains(const Subspace& s, const Vector& v) {
  return s.contains(v);
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  a.check(b);
  SpanBuilder out = a.builder();
  for (const auto& v : b.basis()) out.insert(v);
  return Subspace(std::move(out));
}

inline bool subspace_eq(const Subspace& a, const Subspace& b) {
  a.check(b);
  return a == b;
}

/// {v : m v = 0}; dim = cols - rank(m).
inline Subspace null_space(const Matrix& m) {
  const auto red = rref(m);
  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : red.pivots) is_pivot[p] = true;
  SpanBuilder out(f, m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(f, m.cols());
    v[free] = Scalar::one(f);
    for (std::size_t r = 0; r < red.rank; ++r)
      v[red.pivots[r]] = -red.form(r, free);
    out.insert(v);
  }
  return Subspace(std::move(out));
}

inline Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
  a.check(b);
  const Field& f = a.field();
  const std::size_t n = a.ambient_dim(), ka = a.dim(), kb = b.dim();
  if (ka == 0 || kb == 0) return Subspace::zero(f, n);
  Matrix m(f, n, ka + kb);
  for (std::size_t j = 0; j < ka; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = a.basis()[j][i];
  for (std::size_t j = 0; j < kb; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, ka + j) = -b.basis()[j][i];
  const Subspace sol = null_space(m);
  SpanBuilder out(f, n);
  for (const auto& x : sol.basis())
    out.insert(a.combination(std::span<const Scalar>(x).first(ka)));
  return Subspace(std::move(out));
}

}  // namespace lienil
