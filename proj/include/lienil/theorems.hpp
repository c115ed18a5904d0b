#pragma once

// Executable verifiers for the Lie-nilpotency statements. Each returns a
// Report; hypotheses are always machine-checked and a failed hypothesis
// yields Status::not_applicable rather than a pass.
//
// Identities that are linear in every free slot are swept over basis tuples,
// which certifies them for all elements. Statements quantified over pairs
// with ab = 0 are not linear in (a, b); those pairs are drawn by annihilator
// sampling (b from the kernel of x -> a x) and the remaining free slots are
// swept exhaustively when the budget allows.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lienil/constructions.hpp"
#include "lienil/lie.hpp"
#include "lienil/random.hpp"
#include "lienil/report.hpp"
#include "lienil/structure.hpp"

namespace lienil {

struct VerifyOptions {
  std::uint64_t seed = 42;
  SweepOptions sweep{};
  std::size_t max_lie_index = 6;
  std::size_t zero_product_pairs = 24;  ///< pairs (a, b) with ab = 0
  std::size_t chain_depth = 3;          ///< longest a_0 a_1 ... a_k = 0 chain
  std::uint64_t trials = 200;           ///< seeded samples per property
  std::size_t left_ideals = 32;
};

namespace detail {

inline std::string join_labels(const Algebra& a, const std::vector<std::size_t>& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += a.label(idx[i]);
  }
  return s + ")";
}

inline std::uint64_t saturating_pow(std::size_t base, std::size_t exp) {
  const double v = power_count(base, exp);
  return v >= 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(v);
}

}  // namespace detail

inline std::string describe_subspace(const Algebra& alg, const Subspace& s) {
  std::string out;
  for (const auto& e : subspace_elements(alg, s)) out += (out.empty() ? "" : ", ") + e.to_string();
  return "{" + out + "}";
}

struct ZeroProductPair {
  Element a;
  Element b;
};

struct PairSample {
  std::vector<ZeroProductPair> pairs;
  std::uint64_t candidates = 0;          ///< values of a tried
  std::uint64_t trivial_annihilator = 0;  ///< a with ker L_a = 0
};

/// Draws pairs with a*b = 0: a runs over the basis elements and then sparse
/// random elements; b is a random nonzero vector of ker(x -> a x).
inline PairSample sample_zero_product_pairs(const Algebra& alg, Rng& rng, std::size_t count) {
  PairSample out;
  const std::size_t attempts = alg.dim() + 16 * count;
  for (std::size_t t = 0; t < attempts && out.pairs.size() < count; ++t) {
    Element a = t < alg.dim() ? alg.basis(t) : random_element(alg, rng, 1, 2);
    if (a.is_zero()) continue;
    ++out.candidates;
    const Subspace ker = null_space(alg.left_mult_matrix(a));
    if (ker.is_zero()) {
      ++out.trivial_annihilator;
      continue;
    }
    Element b = alg.zero();
    for (int tries = 0; tries < 8 && b.is_zero(); ++tries) b = random_in_subspace(alg, ker, rng);
    if (b.is_zero()) b = alg.element(ker.basis().front());
    out.pairs.push_back({std::move(a), std::move(b)});
  }
  return out;
}

/// Records an L_n check as the hypothesis of a verifier; false means the
/// report has been marked not applicable.
inline bool require_ln(Report& r, const Algebra& alg, std::size_t n, const SweepOptions& opts) {
  const auto ln = satisfies_ln(alg, n, opts);
  if (!ln.holds) {
    r.not_applicable("hypothesis L_" + std::to_string(n) + " fails: " +
                     describe_witness(alg, *ln.witness));
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// L_n classification

/// Lie index up to opts.max_lie_index. A negative control is expected not to
/// be Lie nilpotent in that range and reports expected_failure with the
/// witness at the largest n tried.
inline Report verify_ln_classification(const Algebra& alg, const std::string& instance,
                                       const VerifyOptions& opts,
                                       std::optional<std::size_t> expected_index,
                                       bool negative_control = false) {
  Report r{"ln_identity", instance, alg.field().name(), Mode::exhaustive()};
  std::optional<std::size_t> index;
  std::optional<LnWitness> last_witness;
  std::size_t last_n = 0;
  for (std::size_t n = 1; n <= opts.max_lie_index; ++n) {
    const auto res = satisfies_ln(alg, n, opts.sweep);
    r.details["L_" + std::to_string(n)] =
        res.holds ? "yes" : "no; witness " + describe_witness(alg, *res.witness);
    if (res.holds) {
      index = n;
      break;
    }
    last_witness = res.witness;
    last_n = n;
  }
  r.counts["max_n"] = index.value_or(opts.max_lie_index);
  if (index) r.details["lie_index"] = std::to_string(*index);
  if (negative_control) {
    if (index) {
      r.fail({"negative control"}, "L_" + std::to_string(*index) + " holds");
    } else {
      r.status = Status::expected_failure;
      r.counterexample = Counterexample{{"L_" + std::to_string(last_n)},
                                        describe_witness(alg, *last_witness)};
    }
    return r;
  }
  if (expected_index && index != expected_index) {
    r.fail({"expected lie index " + std::to_string(*expected_index)},
           index ? "lie index " + std::to_string(*index) : "not Lie nilpotent in range");
    return r;
  }
  if (!index) r.not_applicable("no L_n for n <= " + std::to_string(opts.max_lie_index));
  return r;
}

// ---------------------------------------------------------------------------
// Rings with L_2: [a,b][a,c] = 0, ab = 0 => bxbya = 0, and chains
// a_0 a_1 ... a_k = 0 => a_1 x_1 a_1 y_1 ... a_k x_k a_k y_k a_0 = 0.

inline Report verify_l2_products(const Algebra& alg, const std::string& instance,
                                 const VerifyOptions& opts) {
  Report r{"l2_products", instance, alg.field().name(), Mode::seeded(opts.seed, opts.trials)};
  if (!require_ln(r, alg, 2, opts.sweep)) return r;
  const std::size_t d = alg.dim();
  const auto basis = alg.basis_elements();
  Rng rng(opts.seed);

  // [a,b][a,c] is quadratic in a, so it vanishes for all a iff the diagonal
  // terms and the symmetrized cross terms vanish on basis elements.
  require_budget("[a,b][a,c] polarized sweep", power_count(d, 4) / 2, opts.sweep.budget);
  std::vector<Element> comm;
  comm.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) comm.push_back(commutator(basis[i], basis[j]));
  std::uint64_t part1 = 0;
  for (std::size_t i = 0; i < d && !r.counterexample; ++i)
    for (std::size_t k = i; k < d && !r.counterexample; ++k)
      for (std::size_t b = 0; b < d && !r.counterexample; ++b) {
        const Element& ib = comm[i * d + b];
        const Element& kb = comm[k * d + b];
        if (ib.is_zero() && kb.is_zero()) {
          part1 += d;
          continue;
        }
        for (std::size_t c = 0; c < d; ++c) {
          ++part1;
          Element v = ib * comm[k * d + c];
          if (i != k) v = v + kb * comm[i * d + c];
          if (!v.is_zero()) {
            r.fail({"a=" + alg.label(i), "a'=" + alg.label(k), "b=" + alg.label(b),
                    "c=" + alg.label(c)},
                   v.to_string());
            break;
          }
        }
      }
  r.counts["commutator_square_cases"] = part1;

  // ab = 0 => b x b y a = 0, swept over basis x, y.
  const auto sample = sample_zero_product_pairs(alg, rng, opts.zero_product_pairs);
  std::uint64_t part2 = 0;
  for (const auto& [a, b] : sample.pairs) {
    if (r.counterexample) break;
    for (std::size_t x = 0; x < d && !r.counterexample; ++x) {
      const Element bxb = b * basis[x] * b;
      if (bxb.is_zero()) {
        part2 += d;
        continue;
      }
      for (std::size_t y = 0; y < d; ++y) {
        ++part2;
        const Element v = bxb * basis[y] * a;
        if (!v.is_zero()) {
          r.fail({"a=" + a.to_string(), "b=" + b.to_string(), "x=" + alg.label(x),
                  "y=" + alg.label(y)},
                 v.to_string());
          break;
        }
      }
    }
  }
  r.counts["zero_product_pairs"] = sample.pairs.size();
  r.counts["trivial_annihilators"] = sample.trivial_annihilator;
  r.counts["bxbya_cases"] = part2;
  if (sample.pairs.empty()) r.notes.push_back("vacuously passed, 0 pairs with ab = 0");

  // Chains of length k + 1 <= chain_depth + 1 with seeded basis choices.
  std::uint64_t chains = 0, part3 = 0;
  for (std::size_t k = 1; k <= opts.chain_depth && !r.counterexample; ++k) {
    for (std::size_t s = 0; s < 4 && !r.counterexample; ++s) {
      std::vector<Element> as;
      as.push_back(alg.zero());
      Element prod = alg.zero();
      for (std::size_t i = 1; i <= k; ++i) {
        as.push_back(random_element(alg, rng, 1, 2));
        prod = i == 1 ? as.back() : prod * as.back();
      }
      const Subspace left_ann = null_space(alg.right_mult_matrix(prod));
      if (left_ann.is_zero()) continue;
      as[0] = random_in_subspace(alg, left_ann, rng);
      if (as[0].is_zero()) as[0] = alg.element(left_ann.basis().front());
      ++chains;
      const std::uint64_t samples = std::max<std::uint64_t>(1, opts.trials / 4);
      for (std::uint64_t t = 0; t < samples; ++t) {
        ++part3;
        Element v = as[1];
        std::vector<std::string> inputs;
        for (std::size_t i = 1; i <= k; ++i) {
          const std::size_t x = rng.below(d), y = rng.below(d);
          inputs.push_back("x" + std::to_string(i) + "=" + alg.label(x));
          inputs.push_back("y" + std::to_string(i) + "=" + alg.label(y));
          if (i > 1) v = v * as[i];
          v = v * basis[x] * as[i] * basis[y];
        }
        v = v * as[0];
        if (!v.is_zero()) {
          for (std::size_t i = 0; i <= k; ++i)
            inputs.push_back("a" + std::to_string(i) + "=" + as[i].to_string());
          r.fail(std::move(inputs), v.to_string());
          break;
        }
      }
    }
  }
  r.counts["chains"] = chains;
  r.counts["chain_cases"] = part3;
  return r;
}

// ---------------------------------------------------------------------------
// Products of n-fold commutators (n >= 3) and the ideal N they generate.

struct CommutatorProductWitness {
  std::vector<std::size_t> x, y;
  Element value;
};

/// Nonzero left-normed n-fold commutators of basis tuples, in lexicographic
/// tuple order (prefixes with zero commutator are pruned).
inline std::vector<std::pair<std::vector<std::size_t>, Element>> nonzero_basis_commutators(
    const Algebra& alg, std::size_t n, const SweepOptions& opts) {
  require_budget("n-fold commutator enumeration", power_count(alg.dim(), n), opts.budget);
  std::vector<std::pair<std::vector<std::size_t>, Element>> out;
  const auto basis = alg.basis_elements();
  std::vector<std::size_t> tuple(n);
  auto rec = [&](auto&& self, const Element& prefix, std::size_t depth) -> void {
    if (depth == n) {
      out.emplace_back(tuple, prefix);
      return;
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
      Element next = commutator(prefix, basis[i]);
      if (next.is_zero()) continue;
      tuple[depth] = i;
      self(self, next, depth + 1);
    }
  };
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].is_zero()) continue;
    tuple[0] = i;
    rec(rec, basis[i], 1);
  }
  return out;
}

/// First basis-tuple pair with [x]_n* [y]_n* != 0, in lexicographic order.
inline std::optional<CommutatorProductWitness> find_commutator_product_witness(
    const Algebra& alg, std::size_t n, const SweepOptions& opts) {
  const auto comms = nonzero_basis_commutators(alg, n, opts);
  for (const auto& [x, cx] : comms)
    for (const auto& [y, cy] : comms) {
      Element v = cx * cy;
      if (!v.is_zero()) return CommutatorProductWitness{x, y, std::move(v)};
    }
  return std::nullopt;
}

/// Two-sided ideal generated by all n-fold commutators of basis elements.
inline Subspace commutator_ideal(const Algebra& alg, std::size_t n, const SweepOptions& opts) {
  std::vector<Element> gens;
  for (auto& [t, c] : nonzero_basis_commutators(alg, n, opts)) gens.push_back(std::move(c));
  return ideal_closure(alg, gens, IdealSide::two_sided);
}

inline Report verify_n_fold_products(const Algebra& alg, const std::string& instance,
                                     std::size_t n, const VerifyOptions& opts) {
  Report r{"n_fold_commutator_products", instance, alg.field().name(), Mode::exhaustive()};
  if (n < 3) {
    r.not_applicable("requires n >= 3, got n = " + std::to_string(n));
    return r;
  }
  if (!require_ln(r, alg, n, opts.sweep)) return r;
  const std::size_t d = alg.dim();
  if (power_count(d, n) <= static_cast<double>(opts.sweep.budget)) {
    // Bilinearity: all products of n-fold commutators vanish iff the span C
    // of basis commutators satisfies C * C = 0.
    const auto comms = nonzero_basis_commutators(alg, n, opts.sweep);
    SpanBuilder span(alg.field(), d);
    for (const auto& [t, c] : comms) span.insert(c.to_vector());
    const Subspace c_span(std::move(span));
    r.counts["tuple_pairs"] = detail::saturating_pow(d, 2 * n);
    r.counts["commutator_span_dim"] = c_span.dim();
    if (!subspace_product(alg, c_span, c_span).is_zero()) {
      const auto w = find_commutator_product_witness(alg, n, opts.sweep);
      r.fail({"x=" + detail::join_labels(alg, w->x), "y=" + detail::join_labels(alg, w->y)},
             w->value.to_string());
      return r;
    }
    std::vector<Element> gens;
    for (const auto& [t, c] : comms) gens.push_back(c);
    const Subspace ideal = ideal_closure(alg, gens, IdealSide::two_sided);
    const auto index = subspace_power_nilpotency(alg, ideal, 3);
    r.counts["N_dim"] = ideal.dim();
    r.details["N_basis"] = describe_subspace(alg, ideal);
    r.details["N_nilpotency_index"] = index ? std::to_string(*index) : "none";
    if (!index || *index > 2) r.fail({"N"}, "N^2 != 0");
    return r;
  }
  // Seeded fallback on random basis tuples.
  r.mode = Mode::seeded(opts.seed, opts.trials);
  r.notes.push_back("d^n exceeds the budget; sampled basis tuples");
  Rng rng(opts.seed);
  const auto basis = alg.basis_elements();
  for (std::uint64_t t = 0; t < opts.trials; ++t) {
    std::vector<Element> xs, ys;
    std::vector<std::size_t> xi, yi;
    for (std::size_t k = 0; k < n; ++k) {
      xi.push_back(rng.below(d));
      yi.push_back(rng.below(d));
      xs.push_back(basis[xi.back()]);
      ys.push_back(basis[yi.back()]);
    }
    const Element v = left_normed_commutator(xs) * left_normed_commutator(ys);
    if (!v.is_zero()) {
      r.fail({"x=" + detail::join_labels(alg, xi), "y=" + detail::join_labels(alg, yi)},
             v.to_string());
      break;
    }
  }
  r.counts["tuple_pairs"] = opts.trials;
  return r;
}

// ---------------------------------------------------------------------------
// Grassmann boundary: L_2 holds but [v1,v2][v3,v4] = 4 v1v2v3v4 != 0.

inline Report verify_grassmann_boundary(const Algebra& alg, const std::string& instance,
                                        const VerifyOptions& opts) {
  Report r{"grassmann_l2_boundary", instance, alg.field().name(), Mode::exhaustive()};
  if (alg.origin() != Origin::grassmann || alg.dim() < 16) {
    r.not_applicable("needs a Grassmann algebra on at least 4 generators");
    return r;
  }
  const Element v1 = alg.basis(grassmann_index(alg, {1})), v2 = alg.basis(grassmann_index(alg, {2})),
                v3 = alg.basis(grassmann_index(alg, {3})), v4 = alg.basis(grassmann_index(alg, {4}));
  const Element top = alg.basis(grassmann_index(alg, {1, 2, 3, 4}));
  const Element product = commutator(v1, v2) * commutator(v3, v4);
  const Element expected = Scalar(alg.field(), 4L) * top;
  r.details["[v1,v2][v3,v4]"] = product.to_string();
  if (!(product == expected)) r.fail({"v1", "v2", "v3", "v4"}, product.to_string());
  if (product.is_zero()) r.fail({"v1", "v2", "v3", "v4"}, "0");
  const auto l2 = satisfies_ln(alg, 2, opts.sweep);
  r.details["L_2"] = l2.holds ? "yes" : "no";
  if (!l2.holds) r.fail({"L_2"}, describe_witness(alg, *l2.witness));
  const auto w = find_commutator_product_witness(alg, 2, opts.sweep);
  r.details["n=2 product check"] =
      w ? "fails: " + detail::join_labels(alg, w->x) + " * " + detail::join_labels(alg, w->y) +
              " -> " + w->value.to_string()
        : "passes";
  if (!w) r.fail({"n=2 product check"}, "no nonzero product of commutators");
  return r;
}

// ---------------------------------------------------------------------------
// Commutator ideals I(2) = R[R,R]R (nil) and I(3) = R[[R,R],R]R (nilpotent
// of index at most 2^(n-2)).

inline Report verify_commutator_ideals(const Algebra& alg, const std::string& instance,
                                       std::size_t n, const VerifyOptions& opts) {
  Report r{"commutator_ideals_nilpotent", instance, alg.field().name(), Mode::exhaustive()};
  if (n < 2) {
    r.not_applicable("requires n >= 2");
    return r;
  }
  if (!require_ln(r, alg, n, opts.sweep)) return r;
  const std::size_t d = alg.dim();
  const Subspace i2 = commutator_ideal(alg, 2, opts.sweep);
  const Subspace i3 = commutator_ideal(alg, 3, opts.sweep);
  const auto i2_index = subspace_power_nilpotency(alg, i2, d + 1);
  const auto i3_index = subspace_power_nilpotency(alg, i3, d + 1);
  const std::size_t bound = std::size_t{1} << (n - 2);
  r.counts["I2_dim"] = i2.dim();
  r.counts["I3_dim"] = i3.dim();
  r.counts["I3_index_bound"] = bound;
  r.details["I2_nilpotency_index"] = i2_index ? std::to_string(*i2_index) : "none";
  r.details["I3_nilpotency_index"] = i3_index ? std::to_string(*i3_index) : "none";
  r.details["I2_basis"] = describe_subspace(alg, i2);
  r.details["I3_basis"] = describe_subspace(alg, i3);
  if (!i2_index) r.fail({"I(2)"}, "not nilpotent");
  if (!i3_index || *i3_index > bound)
    r.fail({"I(3)"}, "nilpotency index " + (i3_index ? std::to_string(*i3_index) : std::string("none")) +
                         " exceeds " + std::to_string(bound));
  if (!i2.contains(i3)) r.fail({"I(3) in I(2)"}, "containment fails");
  if (n >= 3) {
    const Subspace big_n = commutator_ideal(alg, n, opts.sweep);
    r.counts["N_dim"] = big_n.dim();
    if (!i3.contains(big_n)) r.fail({"N in I(3)"}, "containment fails");
  }
  // The radical needs Q or a large enough prime; otherwise the nil check
  // stands on the nilpotency of I(2) alone.
  try {
    const auto rad = radical(alg);
    r.counts["rad_dim"] = rad.subspace.dim();
    if (!rad.subspace.contains(i2)) r.fail({"I(2) in rad"}, "containment fails");
  } catch (const FieldPrecondition& e) {
    r.notes.push_back(std::string("radical skipped: ") + e.what());
  }
  return r;
}

// ---------------------------------------------------------------------------
// ab = 0 => b x_1 b y_1 a z_1 ... z_{q-1} b x_q b y_q a = 0, q = 2^(n-2).

namespace detail {

/// Factor list for the chain: fixed factors are elements, free slots are
/// nullopt (filled with basis elements).
inline std::vector<std::optional<Element>> zero_product_chain(const Element& a, const Element& b,
                                                              std::size_t q) {
  std::vector<std::optional<Element>> f;
  for (std::size_t i = 1; i <= q; ++i) {
    f.emplace_back(b);
    f.emplace_back(std::nullopt);  // x_i
    f.emplace_back(b);
    f.emplace_back(std::nullopt);  // y_i
    f.emplace_back(a);
    if (i < q) f.emplace_back(std::nullopt);  // z_i
  }
  return f;
}

/// Exhaustive sweep of the free slots with zero-prefix pruning. Returns the
/// first nonzero chain (slot indices) if any; `covered` counts assignments,
/// pruned subtrees included.
inline std::optional<std::pair<std::vector<std::size_t>, Element>> sweep_chain(
    const Algebra& alg, const std::vector<std::optional<Element>>& factors, std::uint64_t& covered) {
  const std::size_t d = alg.dim();
  const auto basis = alg.basis_elements();
  std::size_t total_slots = 0;
  for (const auto& f : factors)
    if (!f) ++total_slots;
  std::vector<std::size_t> slots;
  std::optional<std::pair<std::vector<std::size_t>, Element>> found;
  auto rec = [&](auto&& self, const Element& prefix, std::size_t pos, std::size_t used) -> bool {
    if (prefix.is_zero()) {
      covered += saturating_pow(d, total_slots - used);
      return false;
    }
    if (pos == factors.size()) {
      ++covered;
      found.emplace(slots, prefix);
      return true;
    }
    if (factors[pos]) return self(self, prefix * *factors[pos], pos + 1, used);
    for (std::size_t i = 0; i < d; ++i) {
      slots.push_back(i);
      if (self(self, prefix * basis[i], pos + 1, used + 1)) return true;
      slots.pop_back();
    }
    return false;
  };
  rec(rec, *factors.front(), 1, 0);
  return found;
}

}  // namespace detail

/// Chain check for one pair; exhaustive over the 3q - 1 free slots when
/// d^(3q-1) fits the budget, otherwise `trials` seeded basis assignments.
/// Returns the number of assignments covered.
inline std::uint64_t check_zero_product_chain(Report& r, const Algebra& alg, const Element& a,
                                              const Element& b, std::size_t n,
                                              const VerifyOptions& opts, Rng& rng,
                                              bool& exhaustive) {
  const std::size_t q = std::size_t{1} << (n - 2);
  const auto factors = detail::zero_product_chain(a, b, q);
  const std::size_t slots = 3 * q - 1;
  const std::size_t d = alg.dim();
  auto fail_with = [&](const std::vector<std::size_t>& idx, const Element& v) {
    std::vector<std::string> inputs{"a=" + a.to_string(), "b=" + b.to_string()};
    for (std::size_t i = 0; i < idx.size(); ++i) inputs.push_back("slot" + std::to_string(i) + "=" + alg.label(idx[i]));
    r.fail(std::move(inputs), v.to_string());
  };
  if (power_count(d, slots) <= static_cast<double>(opts.sweep.budget)) {
    std::uint64_t covered = 0;
    if (auto w = detail::sweep_chain(alg, factors, covered)) fail_with(w->first, w->second);
    return covered;
  }
  exhaustive = false;
  const auto basis = alg.basis_elements();
  for (std::uint64_t t = 0; t < opts.trials; ++t) {
    std::vector<std::size_t> idx;
    Element v = *factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) {
      if (factors[k]) {
        v = v * *factors[k];
      } else {
        idx.push_back(rng.below(d));
        v = v * basis[idx.back()];
      }
    }
    if (!v.is_zero()) {
      fail_with(idx, v);
      break;
    }
  }
  return opts.trials;
}

inline Report verify_zero_product_chains(const Algebra& alg, const std::string& instance,
                                         std::size_t n, const VerifyOptions& opts,
                                         const std::vector<ZeroProductPair>& extra_pairs = {}) {
  Report r{"zero_product_chains", instance, alg.field().name(), Mode::exhaustive()};
  if (n < 2) {
    r.not_applicable("requires n >= 2");
    return r;
  }
  if (!require_ln(r, alg, n, opts.sweep)) return r;
  Rng rng(opts.seed);
  auto sample = sample_zero_product_pairs(alg, rng, opts.zero_product_pairs);
  std::vector<ZeroProductPair> pairs = extra_pairs;
  for (auto& p : sample.pairs) pairs.push_back(std::move(p));
  bool exhaustive = true;
  std::uint64_t cases = 0;
  for (const auto& [a, b] : pairs) {
    if (!(a * b).is_zero()) throw InputError("supplied pair does not satisfy ab = 0");
    cases += check_zero_product_chain(r, alg, a, b, n, opts, rng, exhaustive);
    if (r.counterexample) break;
  }
  if (!exhaustive) r.mode = Mode::seeded(opts.seed, opts.trials);
  r.counts["q"] = std::size_t{1} << (n - 2);
  r.counts["pairs"] = pairs.size();
  r.counts["trivial_annihilators"] = sample.trivial_annihilator;
  r.counts["chain_cases"] = cases;
  if (pairs.empty()) r.notes.push_back("vacuously passed, 0 pairs with ab = 0");
  return r;
}

// ---------------------------------------------------------------------------
// Radical of a Lie nilpotent algebra: it is the set of nilpotent elements,
// R/rad is commutative, and L + rad is two-sided for every left ideal L.

inline Report verify_radical_structure(const Algebra& alg, const std::string& instance,
                                       const VerifyOptions& opts) {
  Report r{"radical_structure", instance, alg.field().name(), Mode::seeded(opts.seed, opts.trials)};
  const auto index = lie_index(alg, opts.max_lie_index, opts.sweep);
  if (!index) {
    r.not_applicable("not Lie nilpotent for n <= " + std::to_string(opts.max_lie_index));
    return r;
  }
  std::optional<RadicalResult> rad_result;
  try {
    rad_result = radical(alg);
  } catch (const FieldPrecondition& e) {
    r.not_applicable(e.what());
    return r;
  }
  const Subspace& rad = rad_result->subspace;
  const std::size_t d = alg.dim();
  r.counts["rad_dim"] = rad.dim();
  r.counts["rad_nilpotency_index"] = rad_result->nilpotency_index;
  r.counts["quotient_dim"] = d - rad.dim();
  Rng rng(opts.seed);

  // (i) radical elements are nilpotent; sampled nilpotent elements lie in rad.
  for (const auto& e : subspace_elements(alg, rad))
    if (!is_nilpotent_element(alg, e)) r.fail({"radical basis element " + e.to_string()}, "not nilpotent");
  for (std::uint64_t t = 0; t < opts.trials && !r.counterexample; ++t) {
    const Element x = random_in_subspace(alg, rad, rng);
    if (!is_nilpotent_element(alg, x)) r.fail({"radical element " + x.to_string()}, "not nilpotent");
  }
  std::uint64_t nilpotent_found = 0, drawn = 0;
  for (; drawn < 50 * opts.trials && nilpotent_found < opts.trials && !r.counterexample; ++drawn) {
    const Element x = random_element(alg, rng, 1, 2);
    if (!is_nilpotent_element(alg, x)) continue;
    ++nilpotent_found;
    if (!rad.contains(x.to_vector())) r.fail({"nilpotent element " + x.to_string()}, "outside the radical");
  }
  r.counts["nilpotent_samples"] = nilpotent_found;
  r.counts["nilpotent_draws"] = drawn;

  // (ii) R/rad is commutative: every basis commutator lies in rad.
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < d && !r.counterexample; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      ++pairs;
      const Element c = commutator(alg.basis(i), alg.basis(j));
      if (!rad.contains(c.to_vector())) {
        r.fail({alg.label(i), alg.label(j)}, "commutator " + c.to_string() + " outside the radical");
        break;
      }
    }
  r.counts["commutator_pairs"] = pairs;

  // (iii) random left ideals L: L + rad is closed under multiplication by the
  // basis on both sides.
  const auto basis = alg.basis_elements();
  for (std::size_t t = 0; t < opts.left_ideals && !r.counterexample; ++t) {
    const std::size_t ngens = 1 + rng.below(3);
    std::vector<Element> gens;
    for (std::size_t g = 0; g < ngens; ++g) gens.push_back(random_element(alg, rng, 1, 2));
    const Subspace left = ideal_closure(alg, gens, IdealSide::left);
    const Subspace sum = subspace_sum(left, rad);
    for (const auto& v : subspace_elements(alg, sum)) {
      for (const auto& b : basis)
        if (!sum.contains((v * b).to_vector()) || !sum.contains((b * v).to_vector())) {
          std::vector<std::string> in;
          for (const auto& g : gens) in.push_back("generator " + g.to_string());
          r.fail(std::move(in), "L + rad not two-sided at " + v.to_string());
          break;
        }
      if (r.counterexample) break;
    }
  }
  r.counts["left_ideals"] = opts.left_ideals;
  return r;
}

// ---------------------------------------------------------------------------
// Finite rings: every prime ideal is completely prime.

namespace detail {

/// Calls fn(subspace) for every subspace of F_p^d via RREF patterns.
template <class Fn>
void for_each_subspace(const Field& f, std::size_t d, Fn&& fn) {
  const std::uint64_t p = f.modulus();
  for (std::size_t r = 0; r <= d; ++r) {
    std::vector<std::size_t> piv(r);
    for (std::size_t i = 0; i < r; ++i) piv[i] = i;
    for (;;) {
      // free positions: row i, column c > piv[i], c not a pivot
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = piv[i] + 1; c < d; ++c)
          if (!std::binary_search(piv.begin(), piv.end(), c)) free.emplace_back(i, c);
      std::vector<std::uint64_t> digits(free.size(), 0);
      for (;;) {
        SpanBuilder b(f, d);
        for (std::size_t i = 0; i < r; ++i) {
          Vector row = zero_vector(f, d);
          row[piv[i]] = Scalar::one(f);
          for (std::size_t k = 0; k < free.size(); ++k)
            if (free[k].first == i) row[free[k].second] = Scalar(f, static_cast<long>(digits[k]));
          b.insert(row);
        }
        fn(Subspace(std::move(b)));
        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
        if (k == digits.size()) break;
      }
      // next pivot combination
      std::size_t i = r;
      while (i > 0 && piv[i - 1] == d - r + i - 1) --i;
      if (i == 0) break;
      ++piv[i - 1];
      for (std::size_t j = i; j < r; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
}

/// Number of subspaces of F_p^d (sum of Gaussian binomials).
inline double subspace_count(std::uint64_t p, std::size_t d) {
  double total = 0;
  for (std::size_t k = 0; k <= d; ++k) {
    double g = 1;
    for (std::size_t i = 0; i < k; ++i)
      g *= (std::pow(double(p), double(d - i)) - 1) / (std::pow(double(p), double(i + 1)) - 1);
    total += g;
  }
  return total;
}

/// Nonzero coset representatives of F_p^d / P: vectors supported on the
/// non-pivot columns of P's RREF basis.
inline std::vector<Vector> coset_representatives(const Subspace& ideal) {
  const Field& f = ideal.field();
  const std::size_t d = ideal.ambient_dim();
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < d; ++c)
    if (!std::binary_search(ideal.pivot_cols().begin(), ideal.pivot_cols().end(), c)) cols.push_back(c);
  std::vector<Vector> out;
  std::vector<std::uint64_t> digits(cols.size(), 0);
  for (;;) {
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == f.modulus()) digits[k++] = 0;
    if (k == digits.size()) break;
    Vector v = zero_vector(f, d);
    for (std::size_t i = 0; i < cols.size(); ++i) v[cols[i]] = Scalar(f, static_cast<long>(digits[i]));
    out.push_back(std::move(v));
  }
  return out;
}

inline bool is_two_sided_ideal(const Algebra& alg, const Subspace& s) {
  const auto basis = alg.basis_elements();
  for (const auto& v : subspace_elements(alg, s))
    for (const auto& b : basis)
      if (!s.contains((b * v).to_vector()) || !s.contains((v * b).to_vector())) return false;
  return true;
}

}  // namespace detail

struct IdealCensus {
  std::uint64_t subspaces = 0;
  std::vector<Subspace> ideals;
  std::vector<Subspace> primes;
  std::vector<Subspace> prime_not_completely_prime;
};

inline constexpr double kMaxSubspaceEnumeration = 1 << 22;

/// Enumerates every subspace of a finite algebra, keeps the two-sided ideals
/// and classifies the prime and completely prime ones.
inline IdealCensus enumerate_prime_ideals(const Algebra& alg) {
  const Field& f = alg.field();
  if (!f.is_prime()) throw FieldPrecondition("ideal enumeration needs a finite field");
  const std::size_t d = alg.dim();
  require_budget("ring of p^dim elements", power_count(f.modulus(), d), 1u << 16);
  require_budget("subspace enumeration", detail::subspace_count(f.modulus(), d),
                 static_cast<std::uint64_t>(kMaxSubspaceEnumeration));
  IdealCensus census;
  detail::for_each_subspace(f, d, [&](Subspace s) {
    ++census.subspaces;
    if (detail::is_two_sided_ideal(alg, s)) census.ideals.push_back(std::move(s));
  });
  const auto basis = alg.basis_elements();
  for (const auto& p : census.ideals) {
    if (p.dim() == d) continue;  // primes are proper
    const auto reps = detail::coset_representatives(p);
    std::vector<Element> elems;
    for (const auto& v : reps) elems.push_back(alg.element(v));
    bool prime = true, completely = true;
    for (const auto& a : elems) {
      for (const auto& b : elems) {
        if (completely && p.contains((a * b).to_vector())) completely = false;
        bool all_in = true;
        for (const auto& bk : basis)
          if (!p.contains((a * bk * b).to_vector())) {
            all_in = false;
            break;
          }
        if (all_in) prime = false;
        if (!prime) break;
      }
      if (!prime) break;
    }
    if (!prime) continue;
    census.primes.push_back(p);
    if (!completely) census.prime_not_completely_prime.push_back(p);
  }
  return census;
}

inline Report verify_complete_primeness(const Algebra& alg, const std::string& instance,
                                        const VerifyOptions& opts) {
  Report r{"prime_ideals_completely_prime", instance, alg.field().name(), Mode::exhaustive()};
  if (!alg.field().is_prime()) {
    r.not_applicable("exhaustive ideal enumeration needs a finite field");
    return r;
  }
  const auto index = lie_index(alg, opts.max_lie_index, opts.sweep);
  const bool applicable = index.has_value() && alg.has_unit();
  const IdealCensus census = enumerate_prime_ideals(alg);
  r.counts["subspaces"] = census.subspaces;
  r.counts["ideals"] = census.ideals.size();
  r.counts["prime_ideals"] = census.primes.size();
  r.counts["prime_not_completely_prime"] = census.prime_not_completely_prime.size();
  std::string primes;
  for (const auto& p : census.primes) primes += (primes.empty() ? "" : "; ") + describe_subspace(alg, p);
  r.details["prime_ideals"] = primes;
  if (!applicable) {
    r.not_applicable(index ? "algebra is not unital" : "not Lie nilpotent");
    for (const auto& p : census.prime_not_completely_prime)
      r.notes.push_back("informational: prime ideal " + describe_subspace(alg, p) +
                        " is not completely prime");
    return r;
  }
  if (!census.prime_not_completely_prime.empty())
    r.fail({"prime ideal " + describe_subspace(alg, census.prime_not_completely_prime.front())},
           "not completely prime");
  return r;
}

// ---------------------------------------------------------------------------
// The n-th Lie center.

inline Report verify_lie_center_structure(const Algebra& alg, const std::string& instance,
                                          std::size_t n_max, const VerifyOptions& opts) {
  Report r{"lie_center_structure", instance, alg.field().name(), Mode::seeded(opts.seed, opts.trials)};
  if (!alg.has_unit()) {
    r.not_applicable("the n-th Lie center is defined for unital algebras");
    return r;
  }
  const std::size_t d = alg.dim();
  Rng rng(opts.seed);
  const auto basis = alg.basis_elements();
  const Vector unit = alg.unit()->to_vector();
  std::optional<Subspace> prev;
  for (std::size_t n = 1; n <= n_max && !r.counterexample; ++n) {
    const Subspace z = lie_center(alg, n, opts.sweep);
    const std::string tag = "Z_" + std::to_string(n);
    r.counts[tag + "_dim"] = z.dim();
    if (prev && !z.contains(*prev)) r.fail({tag}, "Z_" + std::to_string(n - 1) + " not contained");
    if (!z.contains(unit)) r.fail({tag}, "does not contain the unit");
    if (!is_multiplicatively_closed(alg, z)) r.fail({tag}, "not closed under multiplication");
    const auto zb = subspace_elements(alg, z);
    for (const auto& e : zb)
      for (const auto& b : basis)
        if (!z.contains(commutator(e, b).to_vector())) {
          r.fail({tag, e.to_string(), b.to_string()}, "not a Lie ideal");
          break;
        }
    if (!satisfies_ln(subalgebra(alg, z), n, opts.sweep).holds) r.fail({tag}, "fails L_" + std::to_string(n));
    // r in Z_n may sit in any slot of an (n+1)-fold commutator.
    for (std::uint64_t t = 0; t < opts.trials / 4 && !r.counterexample && !z.is_zero(); ++t) {
      const Element x = random_in_subspace(alg, z, rng);
      const std::size_t slot = rng.below(n + 1);
      std::vector<Element> tuple;
      for (std::size_t k = 0; k <= n; ++k) tuple.push_back(k == slot ? x : basis[rng.below(d)]);
      const Element v = left_normed_commutator(tuple);
      if (!v.is_zero()) {
        std::vector<std::string> in;
        for (const auto& e : tuple) in.push_back(e.to_string());
        r.fail(std::move(in), v.to_string());
      }
    }
    prev = z;
  }
  const auto index = lie_index(alg, n_max, opts.sweep);
  if (index && !r.counterexample) {
    const Subspace z = lie_center(alg, *index, opts.sweep);
    r.details["lie_index"] = std::to_string(*index);
    if (z.dim() != d) r.fail({"Z_" + std::to_string(*index)}, "not the whole algebra despite L_n");
  }
  return r;
}

/// In K I_4 + R_4(1,1,1,1), r = E23 kills every [[x1,x2], r] but
/// [[r,E34],E12] = -E14, so r is not in Z_2.
inline Report verify_lie_center_converse(const Algebra& alg, const std::string& instance,
                                         const VerifyOptions& opts) {
  Report r{"lie_center_converse_counterexample", instance, alg.field().name(), Mode::exhaustive()};
  auto find = [&](const std::string& label) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < alg.dim(); ++i)
      if (alg.label(i) == label) return i;
    return std::nullopt;
  };
  const auto e23 = find("E23"), e34 = find("E34"), e12 = find("E12"), e14 = find("E14");
  if (!e23 || !e34 || !e12 || !e14 || !alg.has_unit()) {
    r.not_applicable("needs a unital algebra containing E12, E14, E23, E34");
    return r;
  }
  const std::size_t d = alg.dim();
  const Element rr = alg.basis(*e23);
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      ++pairs;
      const Element v = commutator(commutator(alg.basis(i), alg.basis(j)), rr);
      if (!v.is_zero()) r.fail({"[[x1,x2],r] with x1=" + alg.label(i) + ", x2=" + alg.label(j)}, v.to_string());
    }
  r.counts["pairs"] = pairs;
  const Element v = commutator(commutator(rr, alg.basis(*e34)), alg.basis(*e12));
  r.details["[[E23,E34],E12]"] = v.to_string();
  if (!(v == -alg.basis(*e14))) r.fail({"[[E23,E34],E12]"}, v.to_string());
  const Subspace z2 = lie_center(alg, 2, opts.sweep);
  r.counts["Z_2_dim"] = z2.dim();
  r.details["Z_2"] = describe_subspace(alg, z2);
  if (z2.contains(rr.to_vector())) r.fail({"E23 in Z_2"}, "unexpectedly contained");
  return r;
}

/// S = <Z_n(R) u C> for the commutative monoid C generated by monoid_gens
/// satisfies L_n. Non-commuting generators are rejected.
inline Report verify_lie_center_monoid(const Algebra& alg, const std::string& instance, std::size_t n,
                                       const std::vector<Element>& monoid_gens, const VerifyOptions& opts) {
  Report r{"lie_center_monoid_extension", instance, alg.field().name(), Mode::exhaustive()};
  for (std::size_t i = 0; i < monoid_gens.size(); ++i)
    for (std::size_t j = i + 1; j < monoid_gens.size(); ++j) {
      const Element& x = monoid_gens[i];
      const Element& y = monoid_gens[j];
      if (!commutator(x, y).is_zero())
        throw InputError("monoid generators " + std::to_string(i) + " and " + std::to_string(j) +
                         " do not commute: (" + x.to_string() + ")*(" + y.to_string() + ") = " +
                         (x * y).to_string() + " but (" + y.to_string() + ")*(" + x.to_string() +
                         ") = " + (y * x).to_string());
    }
  if (!alg.has_unit()) {
    r.not_applicable("requires a unital algebra");
    return r;
  }
  const Subspace z = lie_center(alg, n, opts.sweep);
  std::vector<Element> gens = subspace_elements(alg, z);
  for (const auto& g : monoid_gens) gens.push_back(g);
  const Subspace s = subring_closure(alg, gens, true);
  const Algebra sub = subalgebra(alg, s);
  r.counts["n"] = n;
  r.counts["Z_n_dim"] = z.dim();
  r.counts["S_dim"] = s.dim();
  r.details["S_basis"] = describe_subspace(alg, s);
  std::string g;
  for (const auto& e : monoid_gens) g += (g.empty() ? "" : ", ") + e.to_string();
  r.details["monoid_generators"] = "{" + g + "}";
  const auto ln = satisfies_ln(sub, n, opts.sweep);
  if (!ln.holds) r.fail({"S", describe_witness(sub, *ln.witness)}, ln.witness->value.to_string());
  return r;
}

}  // namespace lienil
