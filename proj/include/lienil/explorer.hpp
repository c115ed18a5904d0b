#pragma once

// Search for large unital L_n subalgebras of M_m(F_p) and the block-algebra
// dimension bound they are compared against.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "lienil/constructions.hpp"
#include "lienil/lie.hpp"
#include "lienil/random.hpp"

namespace lienil {

struct ConjectureBound {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<std::size_t> best_ks;
  std::size_t value = 0;  ///< 1 + (m^2 - sum k_i^2) / 2

  friend bool operator==(const ConjectureBound&, const ConjectureBound&) = default;
};

/// Compositions of m into exactly `parts` positive parts, lexicographic order.
inline std::vector<std::vector<std::size_t>> compositions(std::size_t m, std::size_t parts) {
  std::vector<std::vector<std::size_t>> out;
  if (parts == 0 || parts > m) return out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t remaining, std::size_t left) -> void {
    if (left == 1) {
      cur.push_back(remaining);
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    for (std::size_t k = 1; k + (left - 1) <= remaining; ++k) {
      cur.push_back(k);
      self(self, remaining - k, left - 1);
      cur.pop_back();
    }
  };
  rec(rec, m, parts);
  return out;
}

inline ConjectureBound conjecture_bound(std::size_t m, std::size_t n) {
  if (n < 1) throw InputError("n must be >= 1");
  if (n + 1 > m)
    throw InputError("need n + 1 <= m, got m = " + std::to_string(m) + ", n = " + std::to_string(n));
  ConjectureBound b{m, n, {}, 0};
  for (auto& ks : compositions(m, n + 1)) {
    std::size_t sq = 0;
    for (auto k : ks) sq += k * k;
    const std::size_t value = 1 + (m * m - sq) / 2;
    if (value > b.value) {
      b.value = value;
      b.best_ks = ks;
    }
  }
  return b;
}

struct SearchRecord {
  std::size_t m = 0, n = 0;
  std::uint64_t p = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::size_t best_dim = 0;
  std::vector<Matrix> best_basis;
  std::string best_source;  ///< "block_floor" or "trial <k> (<kind>)"
  ConjectureBound bound;
  bool violation = false;
  std::map<std::string, std::uint64_t> counts;
  std::vector<std::string> notes;
};

namespace detail {

inline const char* kCandidateKinds[] = {"random_matrices", "block_pattern", "conjugated_block"};

inline Matrix random_matrix(const Field& f, std::size_t m, Rng& rng, std::uint64_t num, std::uint64_t den) {
  Matrix a(f, m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (rng.chance(num, den)) a(i, j) = random_scalar(f, rng);
  return a;
}

inline std::vector<std::size_t> random_composition(std::size_t m, std::size_t parts, Rng& rng) {
  const auto all = compositions(m, parts);
  return all[rng.below(all.size())];
}

/// Generators for one trial. Kinds: 1-3 random matrices; 1-3 random elements
/// of a random R_m(ks) pattern, one of them sometimes perturbed off-pattern;
/// a block algebra conjugated by a random invertible matrix.
inline std::vector<Matrix> candidate_generators(const Field& f, std::size_t m, std::size_t n,
                                                std::size_t kind, Rng& rng) {
  std::vector<Matrix> gens;
  if (kind == 0) {
    const std::size_t count = 1 + rng.below(3);
    for (std::size_t i = 0; i < count; ++i) gens.push_back(random_matrix(f, m, rng, 1, 2));
    return gens;
  }
  const BlockSpec spec{m, random_composition(m, n + 1, rng), false, f};
  if (kind == 1) {
    const std::size_t count = 1 + rng.below(3);
    for (std::size_t c = 0; c < count; ++c) {
      Matrix a(f, m, m);
      for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t j = 1; j <= m; ++j)
          if (star_condition(spec, i, j) && rng.chance(2, 3)) a(i - 1, j - 1) = random_scalar(f, rng);
      gens.push_back(std::move(a));
    }
    if (rng.chance(1, 3)) {
      const std::size_t i = rng.below(m), j = rng.below(m);
      gens.front()(i, j) += random_nonzero_scalar(f, rng);
    }
    return gens;
  }
  Matrix p(f, m, m);
  std::optional<Matrix> p_inv;
  while (!p_inv) {
    p = random_matrix(f, m, rng, 1, 1);
    p_inv = inverse(p);
  }
  const Algebra block = block_triangular_algebra(spec);
  for (const auto& e : block.matrices()) gens.push_back(p * e * *p_inv);
  return gens;
}

struct TrialOutcome {
  std::size_t dim = 0;
  bool tested = false;
  bool holds = false;
  bool budget_skipped = false;
  std::vector<Matrix> basis;
};

inline TrialOutcome run_trial(const Field& f, std::size_t m, std::size_t n, std::size_t floor_dim,
                              std::uint64_t seed, std::uint64_t trial, const SweepOptions& opts) {
  Rng rng = Rng::derive(seed, trial);
  const std::size_t kind = trial % 3;
  const auto gens = candidate_generators(f, m, n, kind, rng);
  const Subspace closed = matrix_closure(f, m, gens, true);
  TrialOutcome out;
  out.dim = closed.dim();
  // Candidates below the block floor can never become the best record.
  if (out.dim < floor_dim) return out;
  std::vector<Matrix> basis;
  for (const auto& row : closed.basis()) basis.push_back(Matrix::unvectorize(f, m, row));
  const Algebra alg = algebra_from_matrix_basis(f, basis);
  out.tested = true;
  try {
    out.holds = satisfies_ln(alg, n, SweepOptions{opts.budget, 1}).holds;
  } catch (const BudgetExceeded&) {
    out.budget_skipped = true;
    return out;
  }
  if (out.holds) out.basis = std::move(basis);
  return out;
}

}  // namespace detail

/// Randomized search for unital L_n subalgebras of M_m(F_p). The block
/// algebra K*I + R_m(best_ks) is always evaluated as the floor. Trials are
/// seeded independently and merged by dimension, ties going to the floor and
/// then to the smallest trial index, so the record does not depend on jobs.
inline SearchRecord random_ln_subalgebra_search(std::size_t m, std::size_t n, std::uint64_t p,
                                                std::uint64_t trials, std::uint64_t seed,
                                                unsigned jobs = 1, SweepOptions opts = {}) {
  const Field f = Field::prime(p);
  SearchRecord rec;
  rec.m = m;
  rec.n = n;
  rec.p = p;
  rec.seed = seed;
  rec.trials = trials;
  rec.bound = conjecture_bound(m, n);
  rec.notes.push_back("search restricted to unital subalgebras");

  const Algebra floor = block_triangular_algebra(BlockSpec{m, rec.bound.best_ks, true, f});
  if (!satisfies_ln(floor, n, opts).holds) throw InputError("internal: block floor fails L_n");
  rec.best_dim = floor.dim();
  rec.best_basis = floor.matrices();
  rec.best_source = "block_floor";

  std::vector<detail::TrialOutcome> outcomes(trials);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t t = next++; t < trials; t = next++)
      outcomes[t] = detail::run_trial(f, m, n, rec.best_dim, seed, t, opts);
  };
  const unsigned workers = std::max(1u, jobs);
  if (workers == 1 || trials < 2) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  std::uint64_t tested = 0, passed = 0, skipped = 0, above = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto& o = outcomes[t];
    tested += o.tested;
    passed += o.holds;
    skipped += o.budget_skipped;
    if (o.dim > rec.bound.value) ++above;
    if (o.holds && o.dim > rec.best_dim) {
      rec.best_dim = o.dim;
      rec.best_basis = std::move(o.basis);
      rec.best_source = "trial " + std::to_string(t) + " (" + detail::kCandidateKinds[t % 3] + ")";
    }
  }
  rec.counts["ln_tested"] = tested;
  rec.counts["ln_passed"] = passed;
  rec.counts["budget_skipped"] = skipped;
  rec.counts["closures_above_bound"] = above;
  rec.violation = rec.best_dim > rec.bound.value;
  if (rec.violation) rec.notes.push_back("best_dim exceeds the conjectured bound");
  return rec;
}

/// Re-derives everything a record claims from its stored basis: the span is
/// closed, unital, of dimension best_dim, satisfies L_n, and the bound and
/// violation flag match. Returns the first problem found.
inline std::optional<std::string> check_search_record(const SearchRecord& rec,
                                                      const SweepOptions& opts = {}) {
  if (rec.best_basis.empty()) return "empty best_basis";
  const Field f = Field::prime(rec.p);
  for (const auto& b : rec.best_basis)
    if (b.field() != f || b.rows() != rec.m || b.cols() != rec.m) return "basis matrix has the wrong shape or field";
  std::vector<Vector> rows;
  for (const auto& b : rec.best_basis) rows.push_back(b.vectorize());
  const Subspace span = Subspace::span(f, rec.m * rec.m, rows);
  if (span.dim() != rec.best_basis.size()) return "best_basis is linearly dependent";
  if (span.dim() != rec.best_dim) return "best_dim does not match the basis";
  if (!span.contains(Matrix::identity(f, rec.m).vectorize())) return "span does not contain the identity";
  if (matrix_closure(f, rec.m, rec.best_basis, true).dim() != span.dim())
    return "span is not closed under multiplication";
  if (!satisfies_ln(algebra_from_matrix_basis(f, rec.best_basis), rec.n, opts).holds)
    return "best_basis fails L_" + std::to_string(rec.n);
  if (!(conjecture_bound(rec.m, rec.n) == rec.bound)) return "stored bound does not match";
  if (rec.violation != (rec.best_dim > rec.bound.value)) return "violation flag does not match";
  return std::nullopt;
}

inline nlohmann::json matrix_to_json(const Matrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a(i, j).residue());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json to_json(const SearchRecord& r) {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& b : r.best_basis) basis.push_back(matrix_to_json(b));
  return {{"m", r.m},
          {"n", r.n},
          {"p", r.p},
          {"seed", r.seed},
          {"trials", r.trials},
          {"best_dim", r.best_dim},
          {"best_basis", basis},
          {"best_source", r.best_source},
          {"bound", {{"m", r.bound.m}, {"n", r.bound.n}, {"best_ks", r.bound.best_ks}, {"value", r.bound.value}}},
          {"violation", r.violation},
          {"counts", r.counts},
          {"notes", r.notes}};
}

/// Parses a record and re-verifies it; malformed or inconsistent records
/// throw InputError.
inline SearchRecord search_record_from_json(const nlohmann::json& j, const SweepOptions& opts = {}) {
  SearchRecord r;
  try {
    r.m = j.at("m").get<std::size_t>();
    r.n = j.at("n").get<std::size_t>();
    r.p = j.at("p").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.trials = j.at("trials").get<std::uint64_t>();
    r.best_dim = j.at("best_dim").get<std::size_t>();
    r.best_source = j.at("best_source").get<std::string>();
    const auto& b = j.at("bound");
    r.bound = {b.at("m").get<std::size_t>(), b.at("n").get<std::size_t>(),
               b.at("best_ks").get<std::vector<std::size_t>>(), b.at("value").get<std::size_t>()};
    r.violation = j.at("violation").get<bool>();
    r.counts = j.at("counts").get<std::map<std::string, std::uint64_t>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    const Field f = Field::prime(r.p);
    for (const auto& mat : j.at("best_basis")) {
      Matrix a(f, r.m, r.m);
      if (mat.size() != r.m) throw InputError("basis matrix has the wrong number of rows");
      for (std::size_t i = 0; i < r.m; ++i) {
        if (mat.at(i).size() != r.m) throw InputError("basis matrix has the wrong number of columns");
        for (std::size_t k = 0; k < r.m; ++k)
          a(i, k) = Scalar(f, static_cast<long>(mat.at(i).at(k).get<std::uint64_t>() % r.p));
      }
      r.best_basis.push_back(std::move(a));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed search record: ") + e.what());
  }
  if (auto problem = check_search_record(r, opts)) throw InputError("search record fails re-verification: " + *problem);
  return r;
}

}  // namespace lienil
