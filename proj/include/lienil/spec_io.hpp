#pragma once

// Algebra spec files (JSON) and the report file wrapper.
//
// Spec kinds: structure_constants, block_triangular, grassmann, matrix_span.
// Validation mirrors schemas/algebra-spec.schema.json and reports errors as
// JSON-pointer paths. Unknown fields are rejected.

#include <cstdint>
#include <cstdio>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "lienil/constructions.hpp"
#include "lienil/report.hpp"

namespace lienil {

inline constexpr const char* kToolName = "lienil";
inline constexpr const char* kToolVersion = "0.1.0";

struct AlgebraSpec {
  std::string name;  ///< optional display name
  Algebra algebra;
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void spec_error(const std::string& path, const std::string& msg) {
  throw InputError("spec" + (path.empty() ? std::string("") : " at " + path) + ": " + msg);
}

inline void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) spec_error(path + "/" + k, "unknown field");
}

inline const json& need(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) spec_error(path, std::string("missing required field '") + key + "'");
  return j.at(key);
}

inline std::uint64_t need_count(const json& j, const std::string& path, std::uint64_t lo, std::uint64_t hi) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    spec_error(path, "expected a non-negative integer");
  const auto v = j.get<std::uint64_t>();
  if (v < lo || v > hi)
    spec_error(path, "expected a value in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                         std::to_string(v));
  return v;
}

inline bool need_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) spec_error(path, "expected true or false");
  return j.get<bool>();
}

inline mpz_class json_integer(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      spec_error(path, "expected an integer string, got '" + s + "'");
    return mpz_class(s);
  }
  spec_error(path, "expected an integer");
}

/// Q: integer or [num, den] (either part may be a decimal string). F_p: an
/// integer, reduced mod p.
inline Scalar parse_scalar(const Field& f, const json& j, const std::string& path) {
  if (j.is_array()) {
    if (!f.is_rational()) spec_error(path, "entries over F_p are integers");
    if (j.size() != 2) spec_error(path, "expected [numerator, denominator]");
    const mpz_class num = json_integer(j[0], path + "/0");
    const mpz_class den = json_integer(j[1], path + "/1");
    if (den == 0) spec_error(path + "/1", "zero denominator");
    return Scalar(f, num, den);
  }
  if (j.is_string() && f.is_rational()) spec_error(path, "rationals are integers or [num, den]");
  return Scalar(f, json_integer(j, path), 1);
}

inline Field parse_field(const json& j, const std::string& path) {
  if (!j.is_object()) spec_error(path, "expected an object");
  const auto& type = need(j, path, "type");
  if (!type.is_string()) spec_error(path + "/type", "expected \"Q\" or \"Fp\"");
  const auto t = type.get<std::string>();
  if (t == "Q") {
    only_keys(j, path, {"type"});
    return Field::rationals();
  }
  if (t != "Fp") spec_error(path + "/type", "expected \"Q\" or \"Fp\", got \"" + t + "\"");
  only_keys(j, path, {"type", "p"});
  const auto p = need_count(need(j, path, "p"), path + "/p", 2, (1ULL << 32) - 1);
  if (!Field::is_prime(p)) spec_error(path + "/p", std::to_string(p) + " is not prime");
  return Field::prime(p);
}

inline Matrix parse_matrix(const Field& f, std::size_t n, const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != n) spec_error(path, "expected " + std::to_string(n) + " rows");
  Matrix m(f, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != n) spec_error(rp, "expected " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = parse_scalar(f, j[r][c], rp + "/" + std::to_string(c));
  }
  return m;
}

inline std::vector<std::string> parse_labels(const json& j, std::size_t d, const std::string& path) {
  if (!j.is_array() || j.size() != d) spec_error(path, "expected " + std::to_string(d) + " labels");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < d; ++i) {
    if (!j[i].is_string() || j[i].get<std::string>().empty())
      spec_error(path + "/" + std::to_string(i), "expected a non-empty string");
    out.push_back(j[i].get<std::string>());
    if (!seen.insert(out.back()).second) spec_error(path + "/" + std::to_string(i), "duplicate label");
  }
  return out;
}

}  // namespace detail

inline constexpr std::size_t kMaxSpecDim = 4096;

/// Builds the algebra described by a spec document.
inline AlgebraSpec algebra_from_spec(const nlohmann::json& j) {
  using detail::need;
  using detail::need_count;
  using detail::spec_error;
  if (!j.is_object()) spec_error("", "expected a JSON object");
  const auto& kind_j = need(j, "", "kind");
  if (!kind_j.is_string()) spec_error("/kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  const Field f = detail::parse_field(need(j, "", "field"), "/field");
  std::string name;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) spec_error("/name", "expected a string");
    name = j.at("name").get<std::string>();
  }

  if (kind == "structure_constants") {
    detail::only_keys(j, "", {"kind", "field", "name", "dim", "labels", "table", "unit"});
    const std::size_t d = need_count(need(j, "", "dim"), "/dim", 1, kMaxSpecDim);
    const auto& tj = need(j, "", "table");
    if (!tj.is_array() || tj.size() != d) spec_error("/table", "expected " + std::to_string(d) + " rows");
    std::vector<std::vector<Vector>> table(d);
    for (std::size_t a = 0; a < d; ++a) {
      const std::string ra = "/table/" + std::to_string(a);
      if (!tj[a].is_array() || tj[a].size() != d) spec_error(ra, "expected " + std::to_string(d) + " products");
      for (std::size_t b = 0; b < d; ++b) {
        const std::string rb = ra + "/" + std::to_string(b);
        const auto& v = tj[a][b];
        if (!v.is_array() || v.size() != d) spec_error(rb, "expected " + std::to_string(d) + " coordinates");
        Vector vec;
        for (std::size_t c = 0; c < d; ++c) vec.push_back(detail::parse_scalar(f, v[c], rb + "/" + std::to_string(c)));
        table[a].push_back(std::move(vec));
      }
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = detail::parse_labels(j.at("labels"), d, "/labels");
    std::optional<Vector> unit;
    if (j.contains("unit") && !j.at("unit").is_null()) {
      const auto& u = j.at("unit");
      if (!u.is_array() || u.size() != d) spec_error("/unit", "expected " + std::to_string(d) + " coordinates");
      Vector vec;
      for (std::size_t c = 0; c < d; ++c) vec.push_back(detail::parse_scalar(f, u[c], "/unit/" + std::to_string(c)));
      unit = std::move(vec);
    }
    return {name, make_algebra(f, table, std::move(labels), std::move(unit))};
  }
  if (kind == "block_triangular") {
    detail::only_keys(j, "", {"kind", "field", "name", "m", "ks", "unital"});
    BlockSpec spec;
    spec.field = f;
    spec.m = need_count(need(j, "", "m"), "/m", 2, 64);
    const auto& ks = need(j, "", "ks");
    if (!ks.is_array()) spec_error("/ks", "expected an array of block sizes");
    for (std::size_t i = 0; i < ks.size(); ++i) spec.ks.push_back(need_count(ks[i], "/ks/" + std::to_string(i), 1, 64));
    spec.unital = j.contains("unital") ? detail::need_bool(j.at("unital"), "/unital") : false;
    try {
      spec.validate();
    } catch (const InputError& e) {
      spec_error("/ks", e.what());
    }
    return {name, block_triangular_algebra(spec)};
  }
  if (kind == "grassmann") {
    detail::only_keys(j, "", {"kind", "field", "name", "m"});
    const std::size_t m = need_count(need(j, "", "m"), "/m", 1, 16);
    return {name, grassmann_algebra(GrassmannSpec{m, f})};
  }
  if (kind == "matrix_span") {
    detail::only_keys(j, "", {"kind", "field", "name", "size", "matrices", "include_identity"});
    const std::size_t n = need_count(need(j, "", "size"), "/size", 1, 64);
    const auto& mj = need(j, "", "matrices");
    if (!mj.is_array() || mj.empty()) spec_error("/matrices", "expected a non-empty array of matrices");
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < mj.size(); ++i)
      mats.push_back(detail::parse_matrix(f, n, mj[i], "/matrices/" + std::to_string(i)));
    const bool with_identity =
        j.contains("include_identity") ? detail::need_bool(j.at("include_identity"), "/include_identity") : true;
    return {name, algebra_from_matrix_span(mats, with_identity)};
  }
  spec_error("/kind", "unknown kind \"" + kind + "\"");
}

inline AlgebraSpec algebra_from_spec_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return algebra_from_spec(j);
}

/// Q entries are integers when integral and within 64 bits, else
/// [num, den] with parts written as strings when they exceed 64 bits.
inline nlohmann::json scalar_to_json(const Scalar& s) {
  if (s.field().is_prime()) return s.residue();
  const mpq_class& q = s.rational();
  auto part = [](const mpz_class& z) -> nlohmann::json {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
  };
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return nlohmann::json::array({part(q.get_num()), part(q.get_den())});
}

inline nlohmann::json field_to_json(const Field& f) {
  if (f.is_rational()) return {{"type", "Q"}};
  return {{"type", "Fp"}, {"p", f.modulus()}};
}

/// Exports any algebra as a structure_constants spec.
inline nlohmann::json algebra_to_spec(const Algebra& a, const std::string& name = "") {
  nlohmann::json table = nlohmann::json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < a.dim(); ++j) {
      nlohmann::json v = nlohmann::json::array();
      for (const auto& s : a.product_vector(i, j)) v.push_back(scalar_to_json(s));
      row.push_back(std::move(v));
    }
    table.push_back(std::move(row));
  }
  nlohmann::json j{{"kind", "structure_constants"},
                   {"field", field_to_json(a.field())},
                   {"dim", a.dim()},
                   {"labels", a.labels()},
                   {"table", std::move(table)}};
  if (!name.empty()) j["name"] = name;
  if (a.has_unit()) {
    nlohmann::json u = nlohmann::json::array();
    for (const auto& s : a.unit()->to_vector()) u.push_back(scalar_to_json(s));
    j["unit"] = std::move(u);
  }
  return j;
}

/// "fnv1a64:<16 hex digits>" over the canonical (sorted-key, compact) dump.
inline std::string input_digest(const nlohmann::json& j) {
  const std::uint64_t h = fnv1a64(j.dump());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

struct ReportFile {
  std::string command;
  std::optional<std::string> input_digest;
  std::optional<std::uint64_t> seed;
  std::vector<Report> reports;
  nlohmann::json result;  ///< command-specific payload, null if none
  double wall_seconds = 0;
};

/// Everything but "timing" is deterministic for fixed input and seed.
inline nlohmann::json to_json(const ReportFile& f) {
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : f.reports) reports.push_back(to_json(r));
  nlohmann::json j{{"tool", kToolName},
                   {"version", kToolVersion},
                   {"command", f.command},
                   {"input_digest", f.input_digest ? nlohmann::json(*f.input_digest) : nlohmann::json()},
                   {"seed", f.seed ? nlohmann::json(*f.seed) : nlohmann::json()},
                   {"reports", std::move(reports)},
                   {"result", f.result},
                   {"timing", {{"wall_seconds", f.wall_seconds}}}};
  return j;
}

}  // namespace lienil
