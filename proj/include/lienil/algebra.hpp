#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lienil/matrix.hpp"

namespace lienil {

enum class Origin { structure_constants, matrix_span, block_triangular, grassmann };

inline const char* origin_name(Origin o) {
  switch (o) {
    case Origin::structure_constants: return "structure_constants";
    case Origin::matrix_span: return "matrix_span";
    case Origin::block_triangular: return "block_triangular";
    case Origin::grassmann: return "grassmann";
  }
  return "?";
}

/// Sparse coordinates: sorted by basis index, no zero coefficients.
using Terms = std::vector<std::pair<std::uint32_t, Scalar>>;

namespace detail {

struct AlgebraData {
  Field field;
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<Terms> table;  // table[i * dim + j] = b_i * b_j
  std::optional<Terms> unit;
  Origin origin = Origin::structure_constants;
  std::vector<Matrix> matrices;  // optional matrix realization of the basis

  const Terms& product(std::size_t i, std::size_t j) const {
    return table[i * dim + j];
  }
};

inline Terms to_terms(std::span<const Scalar> v) {
  Terms t;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) t.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return t;
}

/// Sorts by index, sums duplicates and drops zeros.
inline Terms normalize(Terms t) {
  std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    return a.first < b.first;
  });
  Terms out;
  out.reserve(t.size());
  for (auto& [idx, c] : t) {
    if (!out.empty() && out.back().first == idx)
      out.back().second += c;
    else
      out.emplace_back(idx, std::move(c));
  }
  std::erase_if(out, [](const auto& p) { return p.second.is_zero(); });
  return out;
}

}  // namespace detail

class Algebra;

/// Algebra element as sparse coordinates over the basis. Holds a non-owning
/// pointer to its algebra's data; the Algebra must outlive its elements.
class Element {
 public:
  Element(const detail::AlgebraData* alg, Terms terms)
      : alg_(alg), terms_(std::move(terms)) {}

  const detail::AlgebraData* algebra_data() const noexcept { return alg_; }
  const Field& field() const noexcept { return alg_->field; }
  std::size_t dim() const noexcept { return alg_->dim; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coeff(std::size_t i) const {
    for (const auto& [idx, c] : terms_)
      if (idx == i) return c;
    return Scalar::zero(field());
  }

  Vector to_vector() const {
    Vector v = zero_vector(field(), dim());
    for (const auto& [idx, c] : terms_) v[idx] = c;
    return v;
  }

  Element operator-() const {
    Terms t = terms_;
    for (auto& p : t) p.second = -p.second;
    return {alg_, std::move(t)};
  }

  friend Element operator+(const Element& a, const Element& b) {
    a.check(b);
    return {a.alg_, merge(a.terms_, b.terms_, false)};
  }
  friend Element operator-(const Element& a, const Element& b) {
    a.check(b);
    return {a.alg_, merge(a.terms_, b.terms_, true)};
  }
  friend Element operator*(const Scalar& s, const Element& a) {
    require_same_field(s.field(), a.field());
    if (s.is_zero()) return {a.alg_, {}};
    Terms t = a.terms_;
    for (auto& p : t) p.second *= s;
    return {a.alg_, std::move(t)};
  }

  /// Bilinear extension of the structure constants.
  friend Element operator*(const Element& a, const Element& b) {
    a.check(b);
    Terms acc;
    for (const auto& [i, x] : a.terms_)
      for (const auto& [j, y] : b.terms_) {
        const Terms& prod = a.alg_->product(i, j);
        if (prod.empty()) continue;
        const Scalar xy = x * y;
        for (const auto& [k, c] : prod) acc.emplace_back(k, xy * c);
      }
    if (acc.size() <= 1) {
      std::erase_if(acc, [](const auto& p) { return p.second.is_zero(); });
      return {a.alg_, std::move(acc)};
    }
    return {a.alg_, detail::normalize(std::move(acc))};
  }

  friend bool operator==(const Element& a, const Element& b) {
    return a.alg_ == b.alg_ && a.terms_ == b.terms_;
  }

  /// Human-readable form over the basis labels, e.g. "4*v1v2v3v4" or
  /// "E13 - 1/2*E24". The zero element prints as "0".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : terms_) {
      std::string s = c.to_string();
      bool negative = field().is_rational() && !s.empty() && s[0] == '-';
      if (negative) s.erase(0, 1);
      if (first)
        os << (negative ? "-" : "");
      else
        os << (negative ? " - " : " + ");
      if (s != "1") os << s << '*';
      os << alg_->labels[idx];
      first = false;
    }
    return os.str();
  }

 private:
  void check(const Element& other) const {
    if (alg_ != other.alg_)
      throw InputError("elements belong to different algebras");
  }

  static Terms merge(const Terms& a, const Terms& b, bool subtract) {
    Terms out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, subtract ? -b[j].second : b[j].second);
        ++j;
      } else {
        Scalar s = subtract ? a[i].second - b[j].second
                            : a[i].second + b[j].second;
        if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
        ++i;
        ++j;
      }
    }
    return out;
  }

  const detail::AlgebraData* alg_;
  Terms terms_;
};

/// Finite-dimensional associative algebra given by structure constants.
/// Immutable; copies share the same underlying data.
class Algebra {
 public:
  const Field& field() const noexcept { return data_->field; }
  std::size_t dim() const noexcept { return data_->dim; }
  Origin origin() const noexcept { return data_->origin; }
  const std::vector<std::string>& labels() const noexcept {
    return data_->labels;
  }
  const std::string& label(std::size_t i) const { return data_->labels.at(i); }
  const detail::AlgebraData* data() const noexcept { return data_.get(); }

  /// Matrix realization of the basis, empty for abstract algebras.
  const std::vector<Matrix>& matrices() const noexcept {
    return data_->matrices;
  }

  Element basis(std::size_t i) const {
    if (i >= dim()) throw InputError("basis index out of range");
    return {data_.get(), {{static_cast<std::uint32_t>(i), Scalar::one(field())}}};
  }
  std::vector<Element> basis_elements() const {
    std::vector<Element> out;
    out.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis(i));
    return out;
  }
  Element zero() const { return {data_.get(), {}}; }
  Element element(std::span<const Scalar> coords) const {
    if (coords.size() != dim())
      throw InputError("coordinate vector has wrong length");
    for (const auto& c : coords) require_same_field(field(), c.field());
    return {data_.get(), detail::to_terms(coords)};
  }
  Element element(const Terms& terms) const {
    return {data_.get(), detail::normalize(terms)};
  }

  bool has_unit() const noexcept { return data_->unit.has_value(); }
  std::optional<Element> unit() const {
    if (!data_->unit) return std::nullopt;
    return Element(data_.get(), *data_->unit);
  }

  const Terms& product_terms(std::size_t i, std::size_t j) const {
    return data_->product(i, j);
  }
  Vector product_vector(std::size_t i, std::size_t j) const {
    return Element(data_.get(), data_->product(i, j)).to_vector();
  }

  /// Matrix of x -> a*x; column j holds the coordinates of a*b_j.
  Matrix left_mult_matrix(const Element& a) const {
    Matrix m(field(), dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      const Element p = a * basis(j);
      for (const auto& [k, c] : p.terms()) m(k, j) = c;
    }
    return m;
  }
  /// Matrix of x -> x*a; column j holds the coordinates of b_j*a.
  Matrix right_mult_matrix(const Element& a) const {
    Matrix m(field(), dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      const Element p = basis(j) * a;
      for (const auto& [k, c] : p.terms()) m(k, j) = c;
    }
    return m;
  }

  /// Equal structure constants, unit and labels.
  bool same_structure(const Algebra& o) const {
    return field() == o.field() && dim() == o.dim() &&
           data_->table == o.data_->table && data_->unit == o.data_->unit &&
           labels() == o.labels();
  }

  friend Algebra make_algebra_checked(detail::AlgebraData data);

 private:
  explicit Algebra(std::shared_ptr<const detail::AlgebraData> d)
      : data_(std::move(d)) {}

  std::shared_ptr<const detail::AlgebraData> data_;
};

/// Validates associativity on every basis triple and the unit laws on every
/// basis element, then freezes the data.
inline Algebra make_algebra_checked(detail::AlgebraData data) {
  const std::size_t d = data.dim;
  if (data.table.size() != d * d)
    throw InputError("structure table must be dim x dim");
  if (data.labels.empty())
    for (std::size_t i = 0; i < d; ++i) data.labels.push_back("b" + std::to_string(i));
  if (data.labels.size() != d)
    throw InputError("expected " + std::to_string(d) + " basis labels, got " +
                     std::to_string(data.labels.size()));
  for (const auto& entry : data.table)
    for (const auto& [k, c] : entry) {
      if (k >= d) throw InputError("structure constant index out of range");
      require_same_field(data.field, c.field());
    }
  auto shared = std::make_shared<detail::AlgebraData>(std::move(data));
  const detail::AlgebraData* raw = shared.get();
  Algebra alg(shared);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Element bij(raw, raw->product(i, j));
      for (std::size_t k = 0; k < d; ++k) {
        const Element bk = alg.basis(k);
        const Element left = bij * bk;
        const Element right = alg.basis(i) * Element(raw, raw->product(j, k));
        if (!(left == right))
          throw InputError("structure constants are not associative on basis triple (" +
                           std::to_string(i) + ", " + std::to_string(j) + ", " +
                           std::to_string(k) + ") [" + raw->labels[i] + ", " +
                           raw->labels[j] + ", " + raw->labels[k] + "]");
      }
    }
  if (raw->unit) {
    const Element u(raw, *raw->unit);
    for (std::size_t i = 0; i < d; ++i) {
      const Element bi = alg.basis(i);
      if (!(u * bi == bi) || !(bi * u == bi))
        throw InputError("unit law fails on basis element " + std::to_string(i) +
                         " [" + raw->labels[i] + "]");
    }
  }
  return alg;
}

/// Builds an algebra from a dense table: table[i][j] is the coordinate vector
/// of b_i * b_j.
inline Algebra make_algebra(Field field,
                            const std::vector<std::vector<Vector>>& table,
                            std::vector<std::string> labels = {},
                            std::optional<Vector> unit = std::nullopt,
                            Origin origin = Origin::structure_constants,
                            std::vector<Matrix> matrices = {}) {
  const std::size_t d = table.size();
  detail::AlgebraData data{field, d, std::move(labels), {}, std::nullopt, origin,
                           std::move(matrices)};
  data.table.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    if (table[i].size() != d)
      throw InputError("table row " + std::to_string(i) + " has " +
                       std::to_string(table[i].size()) + " entries, expected " +
                       std::to_string(d));
    for (std::size_t j = 0; j < d; ++j) {
      if (table[i][j].size() != d)
        throw InputError("table entry (" + std::to_string(i) + ", " +
                         std::to_string(j) + ") has length " +
                         std::to_string(table[i][j].size()) + ", expected " +
                         std::to_string(d));
      for (const auto& c : table[i][j]) require_same_field(field, c.field());
      data.table.push_back(detail::to_terms(table[i][j]));
    }
  }
  if (unit) {
    if (unit->size() != d) throw InputError("unit vector has wrong length");
    for (const auto& c : *unit) require_same_field(field, c.field());
    data.unit = detail::to_terms(*unit);
  }
  return make_algebra_checked(std::move(data));
}

}  // namespace lienil
