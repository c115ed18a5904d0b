// lienil: command-line front end.
//
//   lienil check SPEC [--n N]      L_n verdict with witness, or the Lie index
//   lienil center SPEC --n N       basis of the n-th Lie center
//   lienil radical SPEC            radical and its nilpotency index
//   lienil verify SPEC | --zoo     theorem verifiers
//   lienil explore --m M --n N     search for large L_n subalgebras of M_m(F_p)
//   lienil recheck RECORD          re-verify a stored search record
//   lienil export SPEC             rewrite any spec as structure constants
//
// Exit codes: 0 ok, 2 input error, 3 budget exceeded, 4 field precondition,
// 5 verification failure.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lienil/lienil.hpp"

namespace {

using namespace lienil;
using nlohmann::json;

constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitField = 4;
constexpr int kExitVerification = 5;

struct Common {
  std::string out;
  bool json_stdout = false;
  unsigned jobs = 1;
  std::uint64_t budget = 0;  // 0: LIENIL_BUDGET or the default

  SweepOptions sweep() const {
    SweepOptions o;
    if (budget) o.budget = budget;
    o.jobs = jobs;
    return o;
  }
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + what + ": " + e.what());
  }
}

struct LoadedSpec {
  json doc;
  AlgebraSpec spec;
};

LoadedSpec load_spec(const std::string& path) {
  json doc = parse_json(read_input(path), path);
  AlgebraSpec spec = algebra_from_spec(doc);
  if (spec.name.empty()) spec.name = path == "-" ? "stdin" : path;
  return {std::move(doc), std::move(spec)};
}

void emit(const Common& c, const json& j, const std::string& human) {
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) throw InputError("cannot write " + c.out);
    f << j.dump(2) << "\n";
  }
  if (c.json_stdout)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human;
}

std::vector<std::string> element_strings(const Algebra& a, const Subspace& s) {
  std::vector<std::string> out;
  for (const auto& e : subspace_elements(a, s)) out.push_back(e.to_string());
  return out;
}

std::string brace_list(const std::vector<std::string>& items) {
  std::string s = "{";
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + items[i];
  return s + "}";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_check(const Common& c, const std::string& path, std::optional<std::size_t> n, std::size_t max_n) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto l = load_spec(path);
  const Algebra& a = l.spec.algebra;
  json verdicts = json::array();
  std::string human;
  std::optional<std::size_t> index;
  auto one = [&](std::size_t k) {
    const auto r = satisfies_ln(a, k, c.sweep());
    json v{{"n", k}, {"holds", r.holds}, {"witness", nullptr}};
    human += "L_" + std::to_string(k) + ": ";
    if (r.holds) {
      human += "yes\n";
    } else {
      std::vector<std::string> tuple;
      for (auto i : r.witness->indices) tuple.push_back(a.label(i));
      v["witness"] = {{"tuple", tuple}, {"value", r.witness->value.to_string()}};
      human += "no; witness " + describe_witness(a, *r.witness) + "\n";
    }
    verdicts.push_back(v);
    return r.holds;
  };
  if (n) {
    if (*n < 1) throw InputError("--n must be >= 1");
    one(*n);
  } else {
    for (std::size_t k = 1; k <= max_n && !index; ++k)
      if (one(k)) index = k;
    human += index ? "lie index: " + std::to_string(*index) + "\n"
                   : "not Lie nilpotent for n <= " + std::to_string(max_n) + "\n";
  }
  ReportFile rf{"check", input_digest(l.doc), std::nullopt, {}, nullptr, 0};
  rf.result = {{"instance", l.spec.name}, {"field", a.field().name()}, {"dim", a.dim()}, {"verdicts", verdicts}};
  if (!n) rf.result["lie_index"] = index ? json(*index) : json();
  rf.wall_seconds = seconds_since(t0);
  emit(c, to_json(rf), human);
  return 0;
}

int cmd_center(const Common& c, const std::string& path, std::size_t n) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto l = load_spec(path);
  const Algebra& a = l.spec.algebra;
  if (!a.has_unit()) throw InputError("the Lie center is computed for unital algebras");
  const Subspace z = lie_center(a, n, c.sweep());
  const auto basis = element_strings(a, z);
  ReportFile rf{"center", input_digest(l.doc), std::nullopt, {}, nullptr, 0};
  rf.result = {{"instance", l.spec.name}, {"n", n}, {"dim", z.dim()}, {"basis", basis}};
  rf.wall_seconds = seconds_since(t0);
  emit(c, to_json(rf), "Z_" + std::to_string(n) + " (dim " + std::to_string(z.dim()) + "): " + brace_list(basis) + "\n");
  return 0;
}

int cmd_radical(const Common& c, const std::string& path) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto l = load_spec(path);
  const Algebra& a = l.spec.algebra;
  const auto rad = radical(a);
  const auto basis = element_strings(a, rad.subspace);
  ReportFile rf{"radical", input_digest(l.doc), std::nullopt, {}, nullptr, 0};
  rf.result = {{"instance", l.spec.name},
               {"dim", rad.subspace.dim()},
               {"basis", basis},
               {"nilpotency_index", rad.nilpotency_index}};
  rf.wall_seconds = seconds_since(t0);
  emit(c, to_json(rf),
       "rad (dim " + std::to_string(rad.subspace.dim()) + ", nilpotency index " +
           std::to_string(rad.nilpotency_index) + "): " + brace_list(basis) + "\n");
  return 0;
}

int cmd_verify(const Common& c, const std::string& path, bool zoo, std::uint64_t seed,
               const std::vector<std::string>& instances) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteConfig cfg;
  cfg.seed = seed;
  cfg.jobs = c.jobs;
  cfg.verify.sweep = c.sweep();
  ReportFile rf{"verify", std::nullopt, seed, {}, nullptr, 0};
  if (zoo) {
    if (!path.empty()) throw InputError("give either a spec or --zoo, not both");
    if (!instances.empty()) {
      std::vector<ZooEntry> picked;
      for (const auto& name : instances) {
        auto it = std::find_if(cfg.zoo.begin(), cfg.zoo.end(), [&](const ZooEntry& e) { return e.name == name; });
        if (it == cfg.zoo.end()) throw InputError("no zoo instance named " + name);
        picked.push_back(*it);
      }
      cfg.zoo = std::move(picked);
    }
    rf.command = "verify --zoo";
  } else {
    if (path.empty()) throw InputError("verify needs a spec file or --zoo");
    const auto l = load_spec(path);
    rf.input_digest = input_digest(l.doc);
    const Algebra alg = l.spec.algebra;
    cfg.zoo = {ZooEntry{l.spec.name, [alg] { return alg; }, std::nullopt}};
  }
  rf.reports = run_full_suite(cfg);
  rf.wall_seconds = seconds_since(t0);

  std::map<std::string, std::size_t> tally;
  std::string human;
  for (const auto& r : rf.reports) {
    ++tally[status_name(r.status)];
    human += std::string("[") + status_name(r.status) + "] " + r.instance + " " + r.statement_id;
    if (r.counterexample) human += ": " + r.counterexample->value;
    if (r.status == Status::not_applicable && !r.notes.empty()) human += " (" + r.notes.front() + ")";
    human += "\n";
  }
  human += std::to_string(rf.reports.size()) + " reports:";
  for (const auto& [k, v] : tally) human += " " + std::to_string(v) + " " + k;
  human += "\n";
  emit(c, to_json(rf), human);
  return suite_ok(rf.reports) ? 0 : kExitVerification;
}

int cmd_explore(const Common& c, std::size_t m, std::size_t n, std::uint64_t p, std::uint64_t trials,
                std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rec = random_ln_subalgebra_search(m, n, p, trials, seed, c.jobs, c.sweep());
  ReportFile rf{"explore", std::nullopt, seed, {}, to_json(rec), 0};
  rf.wall_seconds = seconds_since(t0);
  std::string ks;
  for (auto k : rec.bound.best_ks) ks += (ks.empty() ? "" : ",") + std::to_string(k);
  emit(c, to_json(rf),
       "bound " + std::to_string(rec.bound.value) + " at ks (" + ks + "); best_dim " +
           std::to_string(rec.best_dim) + " from " + rec.best_source + "; violation: " +
           (rec.violation ? "YES" : "no") + "\n");
  return 0;
}

int cmd_recheck(const Common& c, const std::string& path) {
  json j = parse_json(read_input(path), path);
  // Accept a bare record or the report file written by explore.
  if (j.is_object() && j.contains("result") && j.contains("tool")) j = j.at("result");
  const auto rec = search_record_from_json(j, c.sweep());
  std::cout << "record ok: m=" << rec.m << " n=" << rec.n << " p=" << rec.p << " best_dim " << rec.best_dim
            << (rec.violation ? " (exceeds the bound)" : "") << "\n";
  return 0;
}

int cmd_export(const Common& c, const std::string& path) {
  const auto l = load_spec(path);
  const json j = algebra_to_spec(l.spec.algebra, l.doc.value("name", std::string()));
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) throw InputError("cannot write " + c.out);
    f << j.dump(2) << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie nilpotency toolkit for finite-dimensional associative algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Also write the JSON report to this file");
    sub->add_flag("--json", common.json_stdout, "Print JSON instead of the summary");
    sub->add_option("--jobs", common.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--budget", common.budget, "Tuple budget for exhaustive sweeps");
  };

  std::string spec_path;
  std::optional<std::size_t> n_opt;
  std::size_t n = 2, max_n = 6, m = 0;
  std::uint64_t seed = 42, p = 5, trials = 1000;
  bool zoo = false;
  std::vector<std::string> instances;

  auto* check = app.add_subcommand("check", "Decide L_n, or find the Lie index");
  check->add_option("spec", spec_path, "Algebra spec (JSON file, - for stdin)")->required();
  check->add_option("--n", n_opt, "Index n (default: search n = 1..--max-n)");
  check->add_option("--max-n", max_n, "Largest n tried when --n is absent");
  add_common(check);

  auto* center = app.add_subcommand("center", "n-th Lie center");
  center->add_option("spec", spec_path, "Algebra spec")->required();
  center->add_option("--n", n, "Index n")->required()->check(CLI::PositiveNumber);
  add_common(center);

  auto* rad = app.add_subcommand("radical", "Radical and its nilpotency index");
  rad->add_option("spec", spec_path, "Algebra spec")->required();
  add_common(rad);

  auto* verify = app.add_subcommand("verify", "Run the theorem verifiers");
  verify->add_option("spec", spec_path, "Algebra spec");
  verify->add_flag("--zoo", zoo, "Use the built-in instance set");
  verify->add_option("--instance", instances, "Restrict --zoo to these instances");
  verify->add_option("--seed", seed, "Seed for sampled checks");
  add_common(verify);

  auto* explore = app.add_subcommand("explore", "Search for large L_n subalgebras of M_m(F_p)");
  explore->add_option("--m", m, "Matrix size")->required();
  explore->add_option("--n", n, "Index n")->required();
  explore->add_option("--p", p, "Prime");
  explore->add_option("--trials", trials, "Random trials");
  explore->add_option("--seed", seed, "Seed");
  add_common(explore);

  auto* recheck = app.add_subcommand("recheck", "Re-verify a stored search record");
  recheck->add_option("record", spec_path, "Record or explore report (JSON)")->required();
  add_common(recheck);

  auto* exp = app.add_subcommand("export", "Rewrite a spec as structure constants");
  exp->add_option("spec", spec_path, "Algebra spec")->required();
  add_common(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*check) return cmd_check(common, spec_path, n_opt, max_n);
    if (*center) return cmd_center(common, spec_path, n);
    if (*rad) return cmd_radical(common, spec_path);
    if (*verify) return cmd_verify(common, spec_path, zoo, seed, instances);
    if (*explore) return cmd_explore(common, m, n, p, trials, seed);
    if (*recheck) return cmd_recheck(common, spec_path);
    if (*exp) return cmd_export(common, spec_path);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const FieldPrecondition& e) {
    std::cerr << "field precondition: " << e.what() << "\n";
    return kExitField;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
