#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace lienil {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Outcome of a verifier. not_applicable means a machine-checked hypothesis
/// failed; expected_failure marks a negative control that produced the
/// counterexample it is supposed to produce.
enum class Status { passed, failed, not_applicable, expected_failure };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::passed: return "passed";
    case Status::failed: return "failed";
    case Status::not_applicable: return "not_applicable";
    case Status::expected_failure: return "expected_failure";
  }
  return "?";
}

struct Mode {
  enum class Kind { exhaustive, seeded };
  Kind kind = Kind::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;

  static Mode exhaustive() { return {}; }
  static Mode seeded(std::uint64_t seed, std::uint64_t trials) {
    return {Kind::seeded, seed, trials};
  }
};

struct Counterexample {
  std::vector<std::string> inputs;
  std::string value;
};

struct Report {
  std::string statement_id;
  std::string instance;
  std::string field;
  Mode mode;
  Status status = Status::passed;
  std::optional<Counterexample> counterexample;
  std::map<std::string, std::uint64_t> counts;
  std::map<std::string, std::string> details;
  std::vector<std::string> notes;

  Report() = default;
  Report(std::string id, std::string inst, std::string fld, Mode m)
      : statement_id(std::move(id)), instance(std::move(inst)), field(std::move(fld)), mode(m) {}

  bool passed() const { return status == Status::passed; }

  /// Records the first counterexample and marks the report failed; later
  /// calls keep the first one.
  void fail(std::vector<std::string> inputs, std::string value) {
    if (!counterexample) counterexample = Counterexample{std::move(inputs), std::move(value)};
    status = Status::failed;
  }

  void not_applicable(std::string why) {
    status = Status::not_applicable;
    notes.push_back(std::move(why));
  }
};

inline nlohmann::json to_json(const Mode& m) {
  if (m.kind == Mode::Kind::exhaustive) return {{"kind", "exhaustive"}};
  return {{"kind", "seeded"}, {"seed", m.seed}, {"trials", m.trials}};
}

inline nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["statement_id"] = r.statement_id;
  j["instance"] = r.instance;
  j["field"] = r.field;
  j["mode"] = to_json(r.mode);
  j["status"] = status_name(r.status);
  j["passed"] = r.passed();
  if (r.counterexample)
    j["counterexample"] = {{"inputs", r.counterexample->inputs},
                           {"value", r.counterexample->value}};
  else
    j["counterexample"] = nullptr;
  j["counts"] = r.counts;
  j["details"] = r.details;
  j["notes"] = r.notes;
  return j;
}

}  // namespace lienil
