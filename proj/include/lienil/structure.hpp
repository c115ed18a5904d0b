#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lienil/algebra.hpp"
#include "lienil/lie.hpp"
#include "lienil/subspace.hpp"

namespace lienil {

enum class IdealSide { left, right, two_sided };

inline std::vector<Element> subspace_elements(const Algebra& a, const Subspace& s) {
  std::vector<Element> out;
  out.reserve(s.dim());
  for (const auto& v : s.basis()) out.push_back(a.element(v));
  return out;
}

inline Subspace span_of(const Algebra& a, std::span<const Element> elems) {
  SpanBuilder b(a.field(), a.dim());
  for (const auto& e : elems) b.insert(e.to_vector());
  return Subspace(std::move(b));
}

/// Smallest multiplication-closed subspace containing gens (and the unit when
/// flagged): span <- span + span*span until nothing new appears.
inline Subspace subring_closure(const Algebra& a, std::span<const Element> gens,
                                bool include_unit) {
  SpanBuilder span(a.field(), a.dim());
  std::vector<Element> spanning, queue;
  auto push = [&](const Element& e) {
    if (e.algebra_data() != a.data()) throw InputError("generator from another algebra");
    if (span.insert(e.to_vector())) queue.push_back(e);
  };
  for (const auto& g : gens) push(g);
  if (include_unit) {
    if (!a.has_unit()) throw InputError("subring closure with unit requested on a non-unital algebra");
    push(*a.unit());
  }
  while (!queue.empty()) {
    Element x = std::move(queue.back());
    queue.pop_back();
    spanning.push_back(x);
    for (const auto& y : spanning) {
      push(x * y);
      push(y * x);
    }
  }
  return Subspace(std::move(span));
}

/// Smallest subspace containing gens and closed under multiplication by
/// basis elements on the chosen side(s). For non-unital algebras this still
/// contains the generators themselves.
inline Subspace ideal_closure(const Algebra& a, std::span<const Element> gens, IdealSide side) {
  SpanBuilder span(a.field(), a.dim());
  std::vector<Element> queue;
  auto push = [&](const Element& e) {
    if (e.algebra_data() != a.data()) throw InputError("generator from another algebra");
    if (span.insert(e.to_vector())) queue.push_back(e);
  };
  for (const auto& g : gens) push(g);
  const auto basis = a.basis_elements();
  while (!queue.empty()) {
    Element x = std::move(queue.back());
    queue.pop_back();
    for (const auto& b : basis) {
      if (side != IdealSide::right) push(b * x);
      if (side != IdealSide::left) push(x * b);
    }
  }
  return Subspace(std::move(span));
}

inline Subspace ideal_closure(const Algebra& a, const Subspace& s, IdealSide side) {
  const auto gens = subspace_elements(a, s);
  return ideal_closure(a, gens, side);
}

/// span{x * y : x in lhs, y in rhs}.
inline Subspace subspace_product(const Algebra& a, const Subspace& lhs, const Subspace& rhs) {
  SpanBuilder out(a.field(), a.dim());
  const auto xs = subspace_elements(a, lhs), ys = subspace_elements(a, rhs);
  for (const auto& x : xs)
    for (const auto& y : ys) out.insert((x * y).to_vector());
  return Subspace(std::move(out));
}

inline bool is_multiplicatively_closed(const Algebra& a, const Subspace& s) {
  return s.contains(subspace_product(a, s, s));
}

/// Least k with s^k = 0, where s^1 = s and s^{k+1} = s^k * s. Returns nullopt
/// if the powers stabilize at a nonzero subspace or k would exceed max_k.
inline std::optional<std::size_t> subspace_power_nilpotency(const Algebra& a,
                                                            const Subspace& s,
                                                            std::size_t max_k) {
  Subspace power = s;
  for (std::size_t k = 1; k <= max_k; ++k) {
    if (power.is_zero()) return k;
    Subspace next = subspace_product(a, power, s);
    if (next == power) return std::nullopt;
    power = std::move(next);
  }
  return std::nullopt;
}

inline Element element_power(const Element& x, std::size_t k) {
  if (k == 0) throw InputError("element_power needs k >= 1");
  Element acc = x;
  for (std::size_t i = 1; i < k && !acc.is_zero(); ++i) acc = acc * x;
  return acc;
}

/// x is nilpotent iff x^(d+1) = 0: the nonzero powers of a nilpotent element
/// are linearly independent, so its index is at most d.
inline bool is_nilpotent_element(const Algebra& a, const Element& x) {
  return element_power(x, a.dim() + 1).is_zero();
}

/// Copy of a non-unital algebra with a unit "1" appended as the last basis
/// element.
inline Algebra unital_hull(const Algebra& a) {
  const std::size_t d = a.dim(), h = d + 1;
  const Scalar one = Scalar::one(a.field());
  detail::AlgebraData data{a.field(), h, a.labels(), std::vector<Terms>(h * h), std::nullopt,
                           Origin::structure_constants, {}};
  data.labels.push_back("1");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) data.table[i * h + j] = a.product_terms(i, j);
  for (std::size_t i = 0; i < h; ++i) {
    data.table[d * h + i] = {{static_cast<std::uint32_t>(i), one}};
    data.table[i * h + d] = {{static_cast<std::uint32_t>(i), one}};
  }
  data.unit = Terms{{static_cast<std::uint32_t>(d), one}};
  return make_algebra_checked(std::move(data));
}

struct RadicalResult {
  Subspace subspace;
  std::size_t nilpotency_index;  ///< least k with subspace^k = 0
};

/// Symmetric matrix T[i][j] = Tr(L_{b_i b_j}) of the left-regular trace form.
inline Matrix trace_form(const Algebra& a) {
  const std::size_t d = a.dim();
  const Field& f = a.field();
  Vector tr = zero_vector(f, d);  // tr[i] = Tr(L_{b_i})
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [k, c] : a.product_terms(i, j))
        if (k == j) tr[i] += c;
  Matrix t(f, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [k, c] : a.product_terms(i, j))
        if (!tr[k].is_zero()) t(i, j) += c * tr[k];
  return t;
}

/// Radical of a finite-dimensional algebra by Dickson's trace criterion:
/// rad = {x : Tr(L_{x y}) = 0 for all y}. Valid over Q and over F_p with p
/// larger than the (unital hull) dimension; smaller p is refused. For
/// finite-dimensional algebras this is the Jacobson radical, which equals the
/// prime radical and the largest nilpotent ideal.
inline RadicalResult radical(const Algebra& a) {
  const bool unital = a.has_unit();
  const std::size_t hull_dim = a.dim() + (unital ? 0 : 1);
  if (a.field().is_prime() && a.field().modulus() <= hull_dim)
    throw FieldPrecondition("trace-form radical needs p > " + std::to_string(hull_dim) +
                            " (dimension of the unital algebra), got p = " +
                            std::to_string(a.field().modulus()));
  Subspace rad(a.field(), a.dim());
  if (unital) {
    rad = null_space(trace_form(a).transpose());
  } else {
    const Algebra hull = unital_hull(a);
    const Subspace rh = null_space(trace_form(hull).transpose());
    // rad(hull) lies in the codimension-one ideal a; drop the unit coordinate.
    Matrix unit_coord(a.field(), 1, hull_dim);
    unit_coord(0, a.dim()) = Scalar::one(a.field());
    const Subspace inside = subspace_intersection(rh, null_space(unit_coord));
    SpanBuilder b(a.field(), a.dim());
    for (const auto& v : inside.basis()) b.insert(Vector(v.begin(), v.end() - 1));
    rad = Subspace(std::move(b));
  }
  const auto index = subspace_power_nilpotency(a, rad, a.dim() + 1);
  if (!index) throw InputError("internal: computed radical is not nilpotent");
  return {std::move(rad), *index};
}

/// n-th Lie center Z_n = {r : [r, x_1, ..., x_n]* = 0 for all x_i}. Each basis
/// n-tuple contributes the rows of the linear map r -> [r, b_i1, ..., b_in];
/// Z_n is the null space of all those rows stacked. Rows are reduced into a
/// running echelon basis as they are generated.
inline Subspace lie_center(const Algebra& a, std::size_t n, const SweepOptions& opts = {}) {
  if (n < 1) throw InputError("Lie center index must be >= 1");
  const std::size_t d = a.dim();
  const Field& f = a.field();
  require_budget("Lie center Z_" + std::to_string(n) + " over dimension " + std::to_string(d),
                 power_count(d, n), opts.budget);
  const auto basis = a.basis_elements();
  SpanBuilder constraints(f, d);

  // images[k] = [b_k, b_{i1}, ..., b_{ij}] for the current prefix
  auto add_rows = [&](const std::vector<Element>& images) {
    std::vector<Vector> rows;
    std::vector<std::uint32_t> row_of(d, UINT32_MAX);
    for (std::size_t k = 0; k < d; ++k)
      for (const auto& [c, coef] : images[k].terms()) {
        if (row_of[c] == UINT32_MAX) {
          row_of[c] = static_cast<std::uint32_t>(rows.size());
          rows.push_back(zero_vector(f, d));
        }
        rows[row_of[c]][k] = coef;
      }
    for (const auto& r : rows) {
      constraints.insert(r);
      if (constraints.dim() == d) return;
    }
  };

  auto sweep = [&](auto&& self, const std::vector<Element>& images, std::size_t depth) -> void {
    for (std::size_t i = 0; i < d && constraints.dim() < d; ++i) {
      std::vector<Element> next;
      next.reserve(d);
      bool all_zero = true;
      for (std::size_t k = 0; k < d; ++k) {
        next.push_back(commutator(images[k], basis[i]));
        if (!next.back().is_zero()) all_zero = false;
      }
      if (all_zero) continue;
      if (depth + 1 == n)
        add_rows(next);
      else
        self(self, next, depth + 1);
    }
  };
  if (d > 0) sweep(sweep, basis, 0);
  return null_space(Matrix::from_rows(f, d, constraints.rows()));
}

/// Structure-constant algebra on the RREF basis of a multiplication-closed
/// subspace. Labels are the basis vectors written over the parent's labels.
inline Algebra subalgebra(const Algebra& a, const Subspace& s) {
  const std::size_t k = s.dim();
  if (k == 0) throw InputError("subalgebra of the zero subspace");
  const auto elems = subspace_elements(a, s);
  detail::AlgebraData data{a.field(), k, {}, std::vector<Terms>(k * k), std::nullopt,
                           Origin::structure_constants, {}};
  for (const auto& e : elems) data.labels.push_back(e.to_string());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const Vector p = (elems[i] * elems[j]).to_vector();
      if (!s.contains(p))
        throw InputError("subspace is not closed under multiplication");
      data.table[i * k + j] = detail::to_terms(s.coordinates(p));
    }
  if (a.has_unit()) {
    const Vector u = a.unit()->to_vector();
    if (s.contains(u)) data.unit = detail::to_terms(s.coordinates(u));
  }
  if (!a.matrices().empty()) {
    const auto& mats = a.matrices();
    const std::size_t m = mats.front().rows();
    for (const auto& v : s.basis()) {
      Matrix acc(a.field(), m, m);
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t c = 0; c < m; ++c)
            if (!mats[i](r, c).is_zero()) acc(r, c) += v[i] * mats[i](r, c);
      }
      data.matrices.push_back(std::move(acc));
    }
  }
  return make_algebra_checked(std::move(data));
}

}  // namespace lienil
