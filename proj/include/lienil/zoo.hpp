#pragma once

// Built-in instance set and the full verification run over it.

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lienil/constructions.hpp"
#include "lienil/theorems.hpp"

namespace lienil {

struct ZooEntry {
  std::string name;
  std::function<Algebra()> build;
  std::optional<std::size_t> expected_index;  ///< known Lie index, if any
  bool negative_control = false;
  /// Generators of the commutative monoid for the Lie-center extension
  /// check and the center index to use; default is one random element at
  /// the Lie index.
  std::function<std::vector<Element>(const Algebra&)> monoid_gens{};
  std::size_t monoid_n = 0;
};

inline Algebra dual_numbers(const Field& f) {
  // basis 1, x with x^2 = 0
  const Scalar one = Scalar::one(f);
  return make_algebra(f,
                      {{{one, Scalar::zero(f)}, {Scalar::zero(f), one}},
                       {{Scalar::zero(f), one}, {Scalar::zero(f), Scalar::zero(f)}}},
                      {"1", "x"}, Vector{one, Scalar::zero(f)});
}

inline std::vector<ZooEntry> default_zoo() {
  const Field q = Field::rationals();
  auto block = [](std::string name, std::size_t m, std::vector<std::size_t> ks, bool unital,
                  Field f, std::optional<std::size_t> index) {
    return ZooEntry{std::move(name),
                    [=] { return block_triangular_algebra(BlockSpec{m, ks, unital, f}); }, index};
  };
  auto grassmann = [](std::string name, std::size_t m, Field f) {
    return ZooEntry{std::move(name), [=] { return grassmann_algebra(GrassmannSpec{m, f}); }, 2};
  };
  auto control = [](std::string name, Field f) {
    return ZooEntry{std::move(name), [=] { return matrix_unit_algebra(2, f); }, std::nullopt, true};
  };
  ZooEntry ki4 = block("KI4+R4(1,1,1,1)", 4, {1, 1, 1, 1}, true, q, 3);
  ki4.monoid_n = 2;
  ki4.monoid_gens = [](const Algebra& a) {
    // I + E12, I + E34
    return std::vector<Element>{*a.unit() + a.basis(0), *a.unit() + a.basis(5)};
  };
  return {
      block("KI3+R3(1,1,1)", 3, {1, 1, 1}, true, q, 2),
      ki4,
      block("KI4+R4(2,2)", 4, {2, 2}, true, q, 1),
      block("KI4+R4(1,3)", 4, {1, 3}, true, q, 1),
      block("KI4+R4(2,1,1)", 4, {2, 1, 1}, true, q, 2),
      block("R4(1,1,1,1)", 4, {1, 1, 1, 1}, false, q, 3),
      block("KI5+R5(1,1,1,1,1)", 5, {1, 1, 1, 1, 1}, true, q, 4),
      block("KI5+R5(2,2,1)", 5, {2, 2, 1}, true, q, 2),
      grassmann("E(3)", 3, q),
      grassmann("E(4)", 4, q),
      grassmann("E(5)", 5, q),
      ZooEntry{"Q[x]/(x^2)", [=] { return dual_numbers(q); }, 1},
      ZooEntry{"F2[x]/(x^2)", [] { return dual_numbers(Field::prime(2)); }, 1},
      block("KI3+R3(1,1,1) over F2", 3, {1, 1, 1}, true, Field::prime(2), 2),
      block("KI4+R4(1,1,1,1) over F2", 4, {1, 1, 1, 1}, true, Field::prime(2), 3),
      block("KI3+R3(1,1,1) over F3", 3, {1, 1, 1}, true, Field::prime(3), 2),
      block("KI3+R3(1,1,1) over F5", 3, {1, 1, 1}, true, Field::prime(5), 2),
      control("M2(F2)", Field::prime(2)),
      control("M2(F3)", Field::prime(3)),
      control("M2(F5)", Field::prime(5)),
  };
}

/// Per-(instance, statement) seed so that a report does not depend on what
/// ran before it or on which worker ran it.
inline std::uint64_t derive_seed(std::uint64_t seed, const std::string& instance,
                                 const std::string& statement) {
  return Rng::splitmix(seed ^ fnv1a64(instance + "/" + statement));
}

struct SuiteConfig {
  std::uint64_t seed = 42;
  unsigned jobs = 1;
  VerifyOptions verify{};
  std::vector<ZooEntry> zoo = default_zoo();
};

namespace detail {

template <class Fn>
Report guarded(const std::string& statement, const std::string& instance, const Algebra& alg,
               Fn&& fn) {
  try {
    return fn();
  } catch (const FieldPrecondition& e) {
    Report r{statement, instance, alg.field().name(), Mode::exhaustive()};
    r.not_applicable(e.what());
    return r;
  } catch (const Error& e) {
    Report r{statement, instance, alg.field().name(), Mode::exhaustive()};
    r.fail({"error"}, e.what());
    return r;
  }
}

}  // namespace detail

/// Every applicable verifier for one instance, in a fixed order.
inline std::vector<Report> verify_instance(const ZooEntry& entry, const SuiteConfig& cfg) {
  const Algebra alg = entry.build();
  const std::string& name = entry.name;
  auto opts_for = [&](const std::string& statement) {
    VerifyOptions o = cfg.verify;
    o.seed = derive_seed(cfg.seed, name, statement);
    o.sweep.jobs = 1;
    return o;
  };
  std::vector<Report> out;
  auto run = [&](const std::string& statement, auto&& fn) {
    const VerifyOptions o = opts_for(statement);
    out.push_back(detail::guarded(statement, name, alg, [&] { return fn(o); }));
  };

  if (!entry.negative_control) {
    run("jacobi_identity", [&](const VerifyOptions& o) {
      return power_count(alg.dim(), 3) <= 1e5 ? jacobi_check_exhaustive(alg, name)
                                              : jacobi_check(alg, o.seed, o.trials, name);
    });
  }
  run("ln_identity", [&](const VerifyOptions& o) {
    return verify_ln_classification(alg, name, o, entry.expected_index, entry.negative_control);
  });
  const auto index = entry.negative_control
                         ? std::nullopt
                         : lie_index(alg, cfg.verify.max_lie_index, cfg.verify.sweep);
  const std::size_t n = index.value_or(2);
  run("l2_products", [&](const VerifyOptions& o) { return verify_l2_products(alg, name, o); });
  run("n_fold_commutator_products",
      [&](const VerifyOptions& o) { return verify_n_fold_products(alg, name, std::max<std::size_t>(n, 3), o); });
  run("commutator_ideals_nilpotent", [&](const VerifyOptions& o) {
    return verify_commutator_ideals(alg, name, std::max<std::size_t>(n, 2), o);
  });
  run("zero_product_chains", [&](const VerifyOptions& o) {
    return verify_zero_product_chains(alg, name, std::max<std::size_t>(n, 2), o);
  });
  run("radical_structure", [&](const VerifyOptions& o) { return verify_radical_structure(alg, name, o); });
  if (alg.field().is_prime())
    run("prime_ideals_completely_prime",
        [&](const VerifyOptions& o) { return verify_complete_primeness(alg, name, o); });
  if (entry.negative_control) return out;

  if (alg.has_unit()) {
    if (alg.origin() == Origin::grassmann)
      run("grassmann_l2_boundary",
          [&](const VerifyOptions& o) { return verify_grassmann_boundary(alg, name, o); });
    run("lie_center_structure",
        [&](const VerifyOptions& o) { return verify_lie_center_structure(alg, name, 3, o); });
    if (entry.monoid_gens)
      run("lie_center_converse_counterexample",
          [&](const VerifyOptions& o) { return verify_lie_center_converse(alg, name, o); });
    run("lie_center_monoid_extension", [&](const VerifyOptions& o) {
      if (entry.monoid_gens)
        return verify_lie_center_monoid(alg, name, entry.monoid_n, entry.monoid_gens(alg), o);
      Rng rng(o.seed);
      return verify_lie_center_monoid(alg, name, n, {random_element(alg, rng, 1, 2)}, o);
    });
  }
  return out;
}

/// Runs verify_instance over the zoo with up to cfg.jobs instances in
/// flight. The result is in zoo order and independent of cfg.jobs.
inline std::vector<Report> run_full_suite(const SuiteConfig& cfg) {
  std::vector<std::vector<Report>> per_entry(cfg.zoo.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.zoo.size(); i = next++) per_entry[i] = verify_instance(cfg.zoo[i], cfg);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(cfg.zoo.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  std::vector<Report> out;
  for (auto& v : per_entry)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

/// True iff no report failed; not_applicable and expected_failure are fine.
inline bool suite_ok(const std::vector<Report>& reports) {
  for (const auto& r : reports)
    if (r.status == Status::failed) return false;
  return true;
}

}  // namespace lienil
