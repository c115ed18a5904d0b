// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "lienil/lienil.hpp"

using namespace lienil;

namespace {

const Field Q = Field::rationals();

// Collects the reasons a criterion fails; empty means PASS.
struct Check {
  std::vector<std::string> problems;
  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

std::size_t find_label(const Algebra& a, const std::string& l) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.label(i) == l) return i;
  throw InputError("no basis element " + l);
}

Subspace labelled(const Algebra& a, const std::vector<std::string>& names) {
  std::vector<Element> es;
  for (const auto& n : names) es.push_back(a.basis(find_label(a, n)));
  return span_of(a, es);
}

Algebra unital_block(std::size_t m, std::vector<std::size_t> ks, Field f = Q) {
  return block_triangular_algebra(BlockSpec{m, std::move(ks), true, f});
}

std::string join(const std::vector<std::size_t>& ks) {
  std::string s;
  for (auto k : ks) s += (s.empty() ? "" : ",") + std::to_string(k);
  return "(" + s + ")";
}

// 1. [v1,v2][v3,v4] = 4 v1v2v3v4 in E(4) while L_2 holds.
void grassmann_boundary(Check& c) {
  const Algebra e = grassmann_algebra(GrassmannSpec{4, Q});
  auto v = [&](int g) { return e.basis(grassmann_index(e, {g})); };
  const Element product = commutator(v(1), v(2)) * commutator(v(3), v(4));
  const std::size_t top = grassmann_index(e, {1, 2, 3, 4});
  c.expect(product.terms().size() == 1, "product is not a single monomial: " + product.to_string());
  c.expect(product.coeff(top) == Scalar(Q, 4L), "coefficient of v1v2v3v4 is not 4: " + product.to_string());
  c.expect(satisfies_ln(e, 2).holds, "E(4) fails L_2");
  c.expect(find_commutator_product_witness(e, 2, {}).has_value(), "n = 2 product check does not fail");
  c.expect(verify_grassmann_boundary(e, "E(4)", VerifyOptions{}).passed(), "boundary verifier failed");
}

// 2. dim = (m^2 - sum k_i^2)/2 (+1) for every composition of m <= 6.
void dimension_formula(Check& c) {
  for (std::size_t m = 2; m <= 6; ++m)
    for (std::size_t parts = 2; parts <= m; ++parts)
      for (const auto& ks : compositions(m, parts)) {
        std::size_t sq = 0;
        for (auto k : ks) sq += k * k;
        const std::size_t expect = (m * m - sq) / 2;
        for (bool unital : {false, true}) {
          const std::size_t got = block_triangular_algebra(BlockSpec{m, ks, unital, Q}).dim();
          c.expect(got == expect + (unital ? 1 : 0), "m=" + std::to_string(m) + " ks=" + join(ks) +
                                                         (unital ? " unital" : "") + " dim " + std::to_string(got));
        }
      }
}

// 3. n+1 blocks give L_n; (1,...,1) fails L_{n-1} with value E_{1,m}; M2(F3)
// fails L_1..L_4.
void ln_classification(Check& c) {
  for (std::size_t m = 2; m <= 5; ++m)
    for (std::size_t parts = 2; parts <= m; ++parts)
      for (const auto& ks : compositions(m, parts)) {
        const Algebra a = unital_block(m, ks);
        c.expect(satisfies_ln(a, parts - 1).holds, "m=" + std::to_string(m) + " ks=" + join(ks) + " fails L_n");
      }
  for (std::size_t m = 3; m <= 6; ++m) {
    const Algebra a = unital_block(m, std::vector<std::size_t>(m, 1));
    const std::size_t n = m - 1;
    c.expect(satisfies_ln(a, n).holds, "K I_" + std::to_string(m) + " + R_" + std::to_string(m) + " fails L_n");
    const auto below = satisfies_ln(a, n - 1);
    const Element e1m = a.basis(find_label(a, matrix_unit_label(1, m, m)));
    c.expect(!below.holds && below.witness->value == e1m,
             "m=" + std::to_string(m) + ": L_{n-1} witness is not E_1m" +
                 (below.holds ? std::string() : ": " + describe_witness(a, *below.witness)));
  }
  const Algebra m2 = matrix_unit_algebra(2, Field::prime(3));
  for (std::size_t n = 1; n <= 4; ++n)
    c.expect(!satisfies_ln(m2, n).holds, "M2(F3) satisfies L_" + std::to_string(n));
}

// 4. N, I(2), I(3) on K I_4 + R_4(1,1,1,1) and I(3) one size up.
void commutator_ideals(Check& c) {
  const Algebra a = unital_block(4, {1, 1, 1, 1});
  const Subspace rad = radical(a).subspace;
  const Subspace n3 = commutator_ideal(a, 3, {});
  c.expect(n3 == labelled(a, {"E14"}), "N != span{E14}");
  c.expect(subspace_product(a, n3, n3).is_zero(), "N^2 != 0");
  const Subspace i2 = commutator_ideal(a, 2, {});
  c.expect(i2 == labelled(a, {"E13", "E24", "E14"}), "I(2) != span{E13,E24,E14}");
  c.expect(rad.contains(i2), "I(2) not inside rad");
  c.expect(subspace_power_nilpotency(a, i2, a.dim() + 1).has_value(), "I(2) not nilpotent");
  const Subspace i3 = commutator_ideal(a, 3, {});
  c.expect(i3 == labelled(a, {"E14"}), "I(3) != span{E14}");
  const auto idx3 = subspace_power_nilpotency(a, i3, a.dim() + 1);
  c.expect(idx3 && *idx3 <= 2, "I(3) nilpotency index exceeds 2");
  c.expect(verify_n_fold_products(a, "ki4", 3, VerifyOptions{}).passed(), "n-fold product verifier failed");
  c.expect(verify_commutator_ideals(a, "ki4", 3, VerifyOptions{}).passed(), "commutator ideal verifier failed");

  const Algebra b = unital_block(5, {1, 1, 1, 1, 1});
  const auto idx5 = subspace_power_nilpotency(b, commutator_ideal(b, 3, {}), b.dim() + 1);
  c.expect(idx5 && *idx5 <= 4, "m = 5: I(3) nilpotency index exceeds 4");
  c.expect(verify_commutator_ideals(b, "ki5", 4, VerifyOptions{}).passed(), "m = 5 verifier failed");
}

// 5. q = 2 chains vanish for >= 20 sampled pairs, exhaustively over 7^5.
void zero_product_chains(Check& c) {
  const Algebra a = unital_block(4, {1, 1, 1, 1});
  VerifyOptions opts;
  opts.seed = 42;
  opts.zero_product_pairs = 20;
  const Report r = verify_zero_product_chains(a, "ki4", 3, opts);
  c.expect(r.passed(), "chain counterexample: " + (r.counterexample ? r.counterexample->value : std::string()));
  c.expect(r.mode.kind == Mode::Kind::exhaustive, "sweep was not exhaustive");
  const auto pairs = r.counts.at("pairs");
  c.expect(pairs >= 20, "only " + std::to_string(pairs) + " pairs");
  c.expect(r.counts.at("q") == 2, "q != 2");
  c.expect(r.counts.at("chain_cases") == pairs * 16807, "chain cases != pairs * 7^5");
  Rng rng(42);
  for (const auto& [x, y] : sample_zero_product_pairs(a, rng, 20).pairs)
    c.expect((x * y).is_zero(), "sampled pair with ab != 0");
}

// 6. Radical structure over Q, complete primeness over F2.
void radical_structure(Check& c) {
  VerifyOptions opts;
  opts.seed = 42;
  opts.trials = 200;
  opts.left_ideals = 32;
  std::size_t over_q = 0, over_f2 = 0;
  for (const auto& entry : default_zoo()) {
    if (entry.negative_control) continue;
    const Algebra a = entry.build();
    if (!lie_index(a, opts.max_lie_index)) continue;
    if (a.field().is_rational()) {
      ++over_q;
      const Report r = verify_radical_structure(a, entry.name, opts);
      c.expect(r.passed(), entry.name + ": radical_structure " + status_name(r.status));
      c.expect(r.counts.count("nilpotent_samples") && r.counts.at("nilpotent_samples") == 200,
               entry.name + ": fewer than 200 nilpotent samples");
    } else if (a.field().modulus() == 2 && a.dim() <= 16) {
      ++over_f2;
      const Report r = verify_complete_primeness(a, entry.name, opts);
      const bool ok = r.passed() || (r.status == Status::not_applicable && !a.has_unit());
      c.expect(ok, entry.name + ": primeness " + status_name(r.status));
    }
  }
  c.expect(over_q >= 8, "too few Q instances: " + std::to_string(over_q));
  c.expect(over_f2 >= 2, "too few F2 instances: " + std::to_string(over_f2));
}

// 7. r = E23 kills all [[x1,x2],r] but not [[r,E34],E12].
void converse_counterexample(Check& c) {
  const Algebra a = unital_block(4, {1, 1, 1, 1});
  const std::size_t d = a.dim();
  const Element r = a.basis(find_label(a, "E23"));
  std::size_t zero_pairs = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      zero_pairs += commutator(commutator(a.basis(i), a.basis(j)), r).is_zero();
  c.expect(zero_pairs == 49, std::to_string(zero_pairs) + " of 49 pairs vanish");
  const Element v = commutator(commutator(r, a.basis(find_label(a, "E34"))), a.basis(find_label(a, "E12")));
  c.expect(v == -a.basis(find_label(a, "E14")), "[[E23,E34],E12] = " + v.to_string());
  const Subspace z2 = lie_center(a, 2);
  c.expect(!z2.contains(r.to_vector()), "E23 in Z_2");
  // oracle: basis elements b with [[b,x1],x2] = 0 for all basis pairs
  std::vector<std::string> passing;
  for (std::size_t k = 0; k < d; ++k) {
    bool all = true;
    for (std::size_t i = 0; i < d && all; ++i)
      for (std::size_t j = 0; j < d && all; ++j)
        all = commutator(commutator(a.basis(k), a.basis(i)), a.basis(j)).is_zero();
    if (all) passing.push_back(a.label(k));
  }
  c.expect(labelled(a, passing) == labelled(a, {"I", "E13", "E24", "E14"}), "oracle Z_2 basis differs");
  c.expect(z2 == labelled(a, {"I", "E13", "E24", "E14"}) && z2.dim() == 4, "Z_2 != span{I,E13,E24,E14}");
  c.expect(verify_lie_center_converse(a, "ki4", VerifyOptions{}).passed(), "converse verifier failed");
}

// 8. Lie center chains on the zoo.
void lie_center_structure(Check& c) {
  for (const auto& entry : default_zoo()) {
    const Algebra a = entry.build();
    if (!a.has_unit()) continue;
    const Report r = verify_lie_center_structure(a, entry.name, 3, VerifyOptions{});
    c.expect(r.passed(), entry.name + ": " + status_name(r.status) +
                             (r.counterexample ? " " + r.counterexample->value : std::string()));
  }
  const Algebra a = unital_block(4, {1, 1, 1, 1});
  c.expect(lie_center(a, 3).dim() == a.dim(), "Z_3 is not the whole algebra");
}

// 9. S = <Z_2 u C> with C generated by I + E12, I + E34.
void monoid_extension(Check& c) {
  const Algebra a = unital_block(4, {1, 1, 1, 1});
  const Element u = *a.unit();
  const Element g1 = u + a.basis(find_label(a, "E12")), g2 = u + a.basis(find_label(a, "E34"));
  const Report r = verify_lie_center_monoid(a, "ki4", 2, {g1, g2}, VerifyOptions{});
  c.expect(r.passed(), "monoid extension verifier failed");
  c.expect(r.counts.at("S_dim") == 6, "dim S = " + std::to_string(r.counts.at("S_dim")));
  std::vector<Element> gens = subspace_elements(a, lie_center(a, 2));
  gens.push_back(g1);
  gens.push_back(g2);
  const Subspace s = subring_closure(a, gens, true);
  c.expect(s.dim() == 6 && satisfies_ln(subalgebra(a, s), 2).holds, "S fails L_2 or has dim != 6");
  try {
    verify_lie_center_monoid(a, "ki4", 2, {a.basis(find_label(a, "E12")), a.basis(find_label(a, "E23"))},
                             VerifyOptions{});
    c.expect(false, "non-commuting generators accepted");
  } catch (const InputError& e) {
    const std::string msg = e.what();
    c.expect(msg.find("E12") != std::string::npos && msg.find("E23") != std::string::npos,
             "rejection does not name the pair: " + msg);
  }
}

// 10. Bounds, searches and record reload.
void explorer(Check& c) {
  const auto b41 = conjecture_bound(4, 1), b43 = conjecture_bound(4, 3);
  c.expect(b41.value == 5 && b41.best_ks == std::vector<std::size_t>{2, 2}, "bound(4,1)");
  c.expect(b43.value == 7 && b43.best_ks == std::vector<std::size_t>{1, 1, 1, 1}, "bound(4,3)");
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{3, 1}, {4, 3}}) {
    const auto rec = random_ln_subalgebra_search(m, n, 5, 1000, 42);
    const std::string tag = "(" + std::to_string(m) + "," + std::to_string(n) + ",5)";
    c.expect(rec.best_dim == rec.bound.value, tag + " best_dim " + std::to_string(rec.best_dim));
    c.expect(!rec.violation, tag + " violation");
    try {
      const auto back = search_record_from_json(nlohmann::json::parse(to_json(rec).dump()));
      c.expect(back.best_dim == rec.best_dim, tag + " reload changed best_dim");
    } catch (const InputError& e) {
      c.expect(false, tag + " reload: " + e.what());
    }
  }
}

std::string run_cli(const std::string& args, int& code) {
  const std::string cmd = std::string("\"") + LIENIL_CLI_PATH + "\" " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    code = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string without_timing(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  j.erase("timing");
  return j.dump();
}

// 11. verify --zoo --seed 42: identical across runs and worker counts.
void determinism(Check& c) {
  int c1 = 0, c2 = 0, c4 = 0;
  const std::string a = run_cli("verify --zoo --seed 42 --json", c1);
  const std::string b = run_cli("verify --zoo --seed 42 --json", c2);
  const std::string w = run_cli("verify --zoo --seed 42 --json --jobs 4", c4);
  c.expect(c1 == 0 && c2 == 0 && c4 == 0, "verify exit codes " + std::to_string(c1) + "/" +
                                              std::to_string(c2) + "/" + std::to_string(c4));
  try {
    const std::string sa = without_timing(a), sb = without_timing(b), sw = without_timing(w);
    c.expect(sa == sb, "two runs differ");
    c.expect(sa == sw, "1 vs 4 workers differ");
  } catch (const nlohmann::json::exception& e) {
    c.expect(false, std::string("unparseable report: ") + e.what());
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"grassmann boundary", grassmann_boundary},
      {"dimension formula", dimension_formula},
      {"L_n classification", ln_classification},
      {"commutator ideals", commutator_ideals},
      {"zero-product chains", zero_product_chains},
      {"radical structure and primeness", radical_structure},
      {"Lie center converse counterexample", converse_counterexample},
      {"Lie center structure", lie_center_structure},
      {"monoid extension", monoid_extension},
      {"conjecture explorer", explorer},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.problems.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line << (c.problems.empty() ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first;
    line.precision(2);
    line << std::fixed << " (" << secs << " s)";
    for (const auto& p : c.problems) line << "\n    " << p;
    std::cout << line.str() << std::endl;
    failures += !c.problems.empty();
  }
  return failures ? 1 : 0;
}
