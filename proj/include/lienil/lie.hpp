#pragma once

// Commutator calculus and the exhaustive L_n identity test.
//
// The left-normed commutator [x_1, ..., x_{n+1}]* is linear in every slot, so
// over a field it vanishes identically iff it vanishes on all tuples of basis
// elements. satisfies_ln relies on this: it sweeps basis tuples depth-first,
// extending prefixes in index order and pruning any prefix whose commutator
// is already zero. The first nonzero tuple met is the lexicographically
// smallest witness.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "lienil/algebra.hpp"
#include "lienil/random.hpp"
#include "lienil/report.hpp"

namespace lienil {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Tuple budget for exhaustive sweeps: LIENIL_BUDGET if set, else 10^8.
inline std::uint64_t default_budget() {
  if (const char* env = std::getenv("LIENIL_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

struct SweepOptions {
  std::uint64_t budget = default_budget();
  unsigned jobs = 1;
};

inline double power_count(std::size_t base, std::size_t exp) {
  return std::pow(static_cast<double>(base), static_cast<double>(exp));
}

inline void require_budget(const std::string& what, double required,
                           std::uint64_t budget) {
  if (required > static_cast<double>(budget))
    throw BudgetExceeded(what, required, budget);
}

inline Element commutator(const Element& x, const Element& y) {
  return x * y - y * x;
}

/// [x_1]* = x_1, [x_1, ..., x_{k+1}]* = [[x_1, ..., x_k]*, x_{k+1}].
inline Element left_normed_commutator(std::span<const Element> xs) {
  if (xs.empty()) throw InputError("left-normed commutator of an empty list");
  Element acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = commutator(acc, xs[i]);
  return acc;
}

struct LnWitness {
  std::vector<std::size_t> indices;  ///< n+1 basis indices
  Element value;                     ///< nonzero left-normed commutator
};

struct LnResult {
  bool holds = true;
  std::optional<LnWitness> witness;
  std::uint64_t prefixes_visited = 0;
};

inline std::string describe_witness(const Algebra& a, const LnWitness& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.indices.size(); ++i) {
    if (i) s += ",";
    s += a.label(w.indices[i]);
  }
  return s + ") -> " + w.value.to_string();
}

namespace detail {

struct LnSearch {
  const Algebra& alg;
  std::size_t length;  // n + 1
  std::vector<Element> basis;
  std::vector<std::size_t> tuple;
  std::uint64_t visited = 0;
  std::optional<LnWitness> found;

  bool extend(const Element& prefix, std::size_t depth) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      ++visited;
      Element next = commutator(prefix, basis[i]);
      if (next.is_zero()) continue;
      tuple[depth] = i;
      if (depth + 1 == length) {
        found = LnWitness{tuple, std::move(next)};
        return true;
      }
      if (extend(next, depth + 1)) return true;
    }
    return false;
  }

  bool run_from(std::size_t first) {
    tuple.assign(length, 0);
    tuple[0] = first;
    if (length == 1) {
      // [x]_1* = x itself
      if (basis[first].is_zero()) return false;
      found = LnWitness{tuple, basis[first]};
      return true;
    }
    return extend(basis[first], 1);
  }
};

}  // namespace detail

/// Decides whether [x_1, ..., x_{n+1}]* = 0 is an identity of the algebra by
/// an exhaustive sweep over basis tuples. The witness, when present, is the
/// lexicographically first failing tuple regardless of opts.jobs.
inline LnResult satisfies_ln(const Algebra& alg, std::size_t n,
                             const SweepOptions& opts = {}) {
  if (n < 1) throw InputError("L_n requires n >= 1");
  const std::size_t d = alg.dim();
  require_budget("L_" + std::to_string(n) + " sweep over dimension " +
                     std::to_string(d),
                 power_count(d, n + 1), opts.budget);
  LnResult result;
  if (d == 0) return result;
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(d)));
  const auto basis = alg.basis_elements();

  std::vector<detail::LnSearch> searches;
  for (unsigned w = 0; w < jobs; ++w)
    searches.push_back(detail::LnSearch{alg, n + 1, basis, {}, 0, std::nullopt});
  std::atomic<std::size_t> best_first{d};

  auto worker = [&](unsigned w) {
    auto& s = searches[w];
    for (std::size_t first = w; first < d; first += jobs) {
      if (first >= best_first.load()) return;
      if (s.run_from(first)) {
        std::size_t cur = best_first.load();
        while (first < cur && !best_first.compare_exchange_weak(cur, first)) {
        }
        return;
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto& t : threads) t.join();
  }
  for (auto& s : searches) {
    result.prefixes_visited += s.visited;
    if (s.found && (!result.witness || s.found->indices < result.witness->indices))
      result.witness = std::move(s.found);
  }
  result.holds = !result.witness.has_value();
  return result;
}

/// Smallest n <= n_max with L_n, if any.
inline std::optional<std::size_t> lie_index(const Algebra& alg,
                                            std::size_t n_max,
                                            const SweepOptions& opts = {}) {
  for (std::size_t n = 1; n <= n_max; ++n)
    if (satisfies_ln(alg, n, opts).holds) return n;
  return std::nullopt;
}

inline Element jacobi_sum(const Element& x, const Element& y, const Element& z) {
  return commutator(commutator(x, y), z) + commutator(commutator(y, z), x) +
         commutator(commutator(z, x), y);
}

/// Jacobi identity on `trials` seeded random triples.
inline Report jacobi_check(const Algebra& alg, std::uint64_t seed,
                           std::uint64_t trials, const std::string& instance = "") {
  Report r{"jacobi_identity", instance, alg.field().name(), Mode::seeded(seed, trials)};
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Element x = random_element(alg, rng), y = random_element(alg, rng),
                  z = random_element(alg, rng);
    const Element j = jacobi_sum(x, y, z);
    if (!j.is_zero()) {
      r.fail({x.to_string(), y.to_string(), z.to_string()}, j.to_string());
      break;
    }
  }
  r.counts["triples"] = trials;
  return r;
}

/// Jacobi identity on every basis triple.
inline Report jacobi_check_exhaustive(const Algebra& alg,
                                      const std::string& instance = "") {
  Report r{"jacobi_identity", instance, alg.field().name(), Mode::exhaustive()};
  const auto b = alg.basis_elements();
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < b.size() && !r.counterexample; ++i)
    for (std::size_t j = 0; j < b.size() && !r.counterexample; ++j)
      for (std::size_t k = 0; k < b.size(); ++k) {
        ++count;
        const Element s = jacobi_sum(b[i], b[j], b[k]);
        if (!s.is_zero()) {
          r.fail({alg.label(i), alg.label(j), alg.label(k)}, s.to_string());
          break;
        }
      }
  r.counts["triples"] = count;
  return r;
}

}  // namespace lienil
