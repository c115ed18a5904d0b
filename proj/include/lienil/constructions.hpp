#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "lienil/algebra.hpp"
#include "lienil/subspace.hpp"

namespace lienil {

/// Composition (k_1, ..., k_{n+1}) of m describing the block upper
/// triangular algebra R_m(k_1, ..., k_{n+1}), optionally with K*I_m added.
struct BlockSpec {
  std::size_t m = 0;
  std::vector<std::size_t> ks;
  bool unital = false;
  Field field = Field::rationals();

  void validate() const {
    if (ks.size() < 2) throw InputError("a block composition needs at least two parts");
    std::size_t sum = 0;
    for (auto k : ks) {
      if (k < 1) throw InputError("block sizes must be >= 1");
      sum += k;
    }
    if (sum != m)
      throw InputError("block sizes sum to " + std::to_string(sum) + ", expected m = " +
                       std::to_string(m));
  }
};

struct GrassmannSpec {
  std::size_t m = 0;
  Field field = Field::rationals();
};

inline std::string matrix_unit_label(std::size_t i, std::size_t j, std::size_t m) {
  if (m <= 9) return "E" + std::to_string(i) + std::to_string(j);
  return "E" + std::to_string(i) + "," + std::to_string(j);
}

inline Matrix matrix_unit(const Field& f, std::size_t m, std::size_t i, std::size_t j) {
  Matrix e(f, m, m);
  e(i - 1, j - 1) = Scalar::one(f);
  return e;
}

/// (i, j) satisfies the block condition iff i lies in some block t and j lies
/// strictly after block t. Indices are 1-based.
inline bool star_condition(const BlockSpec& spec, std::size_t i, std::size_t j) {
  spec.validate();
  if (i < 1 || j < 1 || i > spec.m || j > spec.m)
    throw InputError("index pair (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") out of range 1.." + std::to_string(spec.m));
  std::size_t prefix = 0;
  for (std::size_t t = 0; t + 1 < spec.ks.size(); ++t) {
    const std::size_t next = prefix + spec.ks[t];
    if (prefix < i && i <= next && next < j) return true;
    prefix = next;
  }
  return false;
}

/// dim R_m(ks) = (m^2 - sum k_i^2) / 2, plus one for the adjoined unit.
inline std::size_t block_dimension(const BlockSpec& spec) {
  spec.validate();
  std::size_t sq = 0;
  for (auto k : spec.ks) sq += k * k;
  return (spec.m * spec.m - sq) / 2 + (spec.unital ? 1 : 0);
}

/// Basis E_{i,j} over pairs satisfying the block condition, sorted by (i, j),
/// with I_m appended last when unital.
inline Algebra block_triangular_algebra(const BlockSpec& spec) {
  spec.validate();
  const Field& f = spec.field;
  std::vector<std::pair<std::size_t, std::size_t>> units;
  for (std::size_t i = 1; i <= spec.m; ++i)
    for (std::size_t j = 1; j <= spec.m; ++j)
      if (star_condition(spec, i, j)) units.emplace_back(i, j);
  const std::size_t strict = units.size();
  const std::size_t d = strict + (spec.unital ? 1 : 0);

  auto index_of = [&](std::size_t i, std::size_t j) -> std::size_t {
    for (std::size_t k = 0; k < strict; ++k)
      if (units[k] == std::pair{i, j}) return k;
    throw InputError("matrix-unit product left the block algebra");
  };

  detail::AlgebraData data{f, d, {}, std::vector<Terms>(d * d), std::nullopt,
                           Origin::block_triangular, {}};
  for (auto [i, j] : units) {
    data.labels.push_back(matrix_unit_label(i, j, spec.m));
    data.matrices.push_back(matrix_unit(f, spec.m, i, j));
  }
  const Scalar one = Scalar::one(f);
  for (std::size_t a = 0; a < strict; ++a)
    for (std::size_t b = 0; b < strict; ++b)
      if (units[a].second == units[b].first)
        data.table[a * d + b] = {{static_cast<std::uint32_t>(
                                      index_of(units[a].first, units[b].second)),
                                  one}};
  if (spec.unital) {
    const std::size_t u = strict;
    data.labels.push_back("I");
    data.matrices.push_back(Matrix::identity(f, spec.m));
    for (std::size_t a = 0; a < d; ++a) {
      data.table[u * d + a] = {{static_cast<std::uint32_t>(a), one}};
      data.table[a * d + u] = {{static_cast<std::uint32_t>(a), one}};
    }
    data.unit = Terms{{static_cast<std::uint32_t>(u), one}};
  }
  return make_algebra_checked(std::move(data));
}

/// Full matrix algebra M_m(K) with basis E_{i,j} in (i, j) order.
inline Algebra matrix_unit_algebra(std::size_t m, const Field& f) {
  if (m < 1) throw InputError("matrix size must be >= 1");
  const std::size_t d = m * m;
  detail::AlgebraData data{f, d, {}, std::vector<Terms>(d * d), std::nullopt,
                           Origin::matrix_span, {}};
  const Scalar one = Scalar::one(f);
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      data.labels.push_back(matrix_unit_label(i, j, m));
      data.matrices.push_back(matrix_unit(f, m, i, j));
    }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const std::size_t i = a / m, j = a % m, k = b / m, l = b % m;
      if (j == k) data.table[a * d + b] = {{static_cast<std::uint32_t>(i * m + l), one}};
    }
  Terms unit;
  for (std::size_t i = 0; i < m; ++i) unit.emplace_back(static_cast<std::uint32_t>(i * m + i), one);
  data.unit = std::move(unit);
  return make_algebra_checked(std::move(data));
}

inline std::string grassmann_label(std::uint32_t mask, std::size_t m) {
  if (mask == 0) return "1";
  std::string s;
  for (std::size_t g = 0; g < m; ++g)
    if (mask & (1u << g)) {
      if (m > 9 && !s.empty()) s += "_";
      s += "v" + std::to_string(g + 1);
    }
  return s;
}

/// Sign of v_S * v_T for disjoint S, T: (-1)^(#pairs s in S, t in T, s > t).
inline int grassmann_sign(std::uint32_t s, std::uint32_t t) {
  int inversions = 0;
  for (std::uint32_t rest = s; rest; rest &= rest - 1) {
    const int g = std::countr_zero(rest);
    inversions += std::popcount(t & ((1u << g) - 1));
  }
  return (inversions & 1) ? -1 : 1;
}

/// E^(m) on anticommuting generators v_1..v_m with v_i^2 = 0. Basis monomials
/// v_S ordered by degree, then lexicographically; v_{} = 1 is the unit.
inline Algebra grassmann_algebra(const GrassmannSpec& spec) {
  if (spec.m < 1) throw InputError("Grassmann algebra needs m >= 1 generators");
  if (spec.m > 16) throw InputError("Grassmann algebra limited to m <= 16");
  if (spec.field.characteristic() == 2)
    throw FieldPrecondition("Grassmann algebra requires characteristic != 2");
  const Field& f = spec.field;
  const std::size_t m = spec.m, d = std::size_t{1} << m;

  std::vector<std::uint32_t> masks(d);
  std::iota(masks.begin(), masks.end(), 0u);
  auto lex_key = [m](std::uint32_t mask) {
    std::vector<int> gens;
    for (std::size_t g = 0; g < m; ++g)
      if (mask & (1u << g)) gens.push_back(static_cast<int>(g));
    return gens;
  };
  std::stable_sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return lex_key(a) < lex_key(b);
  });
  std::vector<std::uint32_t> position(d);
  for (std::size_t k = 0; k < d; ++k) position[masks[k]] = static_cast<std::uint32_t>(k);

  detail::AlgebraData data{f, d, {}, std::vector<Terms>(d * d), std::nullopt,
                           Origin::grassmann, {}};
  for (auto mask : masks) data.labels.push_back(grassmann_label(mask, m));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const std::uint32_t s = masks[a], t = masks[b];
      if (s & t) continue;
      data.table[a * d + b] = {{position[s | t], Scalar(f, static_cast<long>(grassmann_sign(s, t)))}};
    }
  data.unit = Terms{{position[0], Scalar::one(f)}};
  return make_algebra_checked(std::move(data));
}

/// Index of the monomial v_S (generators 1-based) in grassmann_algebra's basis.
inline std::size_t grassmann_index(const Algebra& e, std::initializer_list<int> gens) {
  std::vector<int> sorted(gens);
  std::sort(sorted.begin(), sorted.end());
  std::size_t m = 0;
  while ((std::size_t{1} << m) < e.dim()) ++m;
  std::uint32_t mask = 0;
  for (int g : sorted) mask |= 1u << (g - 1);
  const std::string label = grassmann_label(mask, m);
  for (std::size_t i = 0; i < e.dim(); ++i)
    if (e.label(i) == label) return i;
  throw InputError("no Grassmann monomial " + label);
}

/// Smallest multiplication-closed subspace of M_n(K) (row-major vectorized)
/// containing the matrices, and I_n when requested.
inline Subspace matrix_closure(const Field& f, std::size_t n, std::span<const Matrix> mats,
                               bool include_identity) {
  SpanBuilder span(f, n * n);
  std::vector<Matrix> spanning;
  std::vector<Matrix> queue;
  auto push = [&](const Matrix& m) {
    if (span.insert(m.vectorize())) queue.push_back(m);
  };
  for (const auto& m : mats) {
    require_same_field(f, m.field());
    if (m.rows() != n || m.cols() != n)
      throw InputError("matrices must all be " + std::to_string(n) + "x" + std::to_string(n));
    push(m);
  }
  if (include_identity) push(Matrix::identity(f, n));
  while (!queue.empty()) {
    Matrix x = std::move(queue.back());
    queue.pop_back();
    spanning.push_back(x);
    for (const auto& y : spanning) {
      push(x * y);
      push(y * x);
    }
  }
  return Subspace(std::move(span));
}

/// Structure constants of the algebra spanned by linearly independent,
/// multiplication-closed matrices, in the given basis order.
inline Algebra algebra_from_matrix_basis(const Field& f, std::vector<Matrix> basis,
                                         std::vector<std::string> labels = {},
                                         Origin origin = Origin::matrix_span) {
  const std::size_t d = basis.size();
  if (d == 0) throw InputError("empty matrix basis");
  const std::size_t n = basis.front().rows();
  std::vector<Vector> rows;
  for (const auto& b : basis) rows.push_back(b.vectorize());
  std::vector<Vector> targets;
  targets.reserve(d * d + 1);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) targets.push_back((basis[i] * basis[j]).vectorize());
  targets.push_back(Matrix::identity(f, n).vectorize());
  const auto coords = express_in_basis(f, n * n, rows, targets);

  detail::AlgebraData data{f, d, std::move(labels), std::vector<Terms>(d * d), std::nullopt,
                           origin, std::move(basis)};
  for (std::size_t k = 0; k < d * d; ++k) {
    if (!coords[k])
      throw InputError("matrix span is not closed under multiplication (product " +
                       std::to_string(k / d) + " * " + std::to_string(k % d) + ")");
    data.table[k] = detail::to_terms(*coords[k]);
  }
  if (coords.back()) data.unit = detail::to_terms(*coords.back());
  if (data.labels.empty())
    for (std::size_t i = 0; i < d; ++i) data.labels.push_back("M" + std::to_string(i + 1));
  return make_algebra_checked(std::move(data));
}

/// Closes the matrices under multiplication (with I when flagged) and returns
/// the algebra on the RREF basis of the closed span.
inline Algebra algebra_from_matrix_span(std::span<const Matrix> mats, bool include_identity) {
  if (mats.empty() && !include_identity) throw InputError("no matrices given");
  if (mats.empty()) throw InputError("matrix size unknown: give at least one matrix");
  const Field f = mats.front().field();
  const std::size_t n = mats.front().rows();
  const Subspace closed = matrix_closure(f, n, mats, include_identity);
  std::vector<Matrix> basis;
  for (const auto& row : closed.basis()) basis.push_back(Matrix::unvectorize(f, n, row));
  return algebra_from_matrix_basis(f, std::move(basis));
}

/// Vectorized span of an algebra's matrix realization.
inline Subspace matrix_span_of(const Algebra& a) {
  if (a.matrices().empty()) throw InputError("algebra has no matrix realization");
  const std::size_t n = a.matrices().front().rows();
  std::vector<Vector> rows;
  for (const auto& m : a.matrices()) rows.push_back(m.vectorize());
  return Subspace::span(a.field(), n * n, rows);
}

}  // namespace lienil
