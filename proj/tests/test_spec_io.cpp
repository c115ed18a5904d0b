#include <gtest/gtest.h>

#include "lienil/spec_io.hpp"
#include "lienil/zoo.hpp"

using namespace lienil;
using nlohmann::json;

namespace {

std::string error_of(const json& j) {
  try {
    algebra_from_spec(j);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

json dual_spec() {
  return json::parse(R"({"kind": "structure_constants", "field": {"type": "Q"}, "dim": 2,
                         "labels": ["1", "x"], "table": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
                         "unit": [1, 0]})");
}

}  // namespace

TEST(SpecIo, EachKind) {
  const auto sc = algebra_from_spec(dual_spec());
  EXPECT_EQ(sc.algebra.dim(), 2u);
  EXPECT_TRUE(sc.algebra.has_unit());
  EXPECT_EQ(sc.algebra.label(1), "x");

  const auto bt = algebra_from_spec(json::parse(
      R"({"kind": "block_triangular", "name": "k", "field": {"type": "Fp", "p": 7}, "m": 4, "ks": [1,1,1,1], "unital": true})"));
  EXPECT_EQ(bt.name, "k");
  EXPECT_EQ(bt.algebra.dim(), 7u);
  EXPECT_EQ(bt.algebra.field().name(), "F7");

  const auto gr = algebra_from_spec(json::parse(R"({"kind": "grassmann", "field": {"type": "Q"}, "m": 3})"));
  EXPECT_EQ(gr.algebra.dim(), 8u);

  const auto ms = algebra_from_spec(json::parse(
      R"({"kind": "matrix_span", "field": {"type": "Fp", "p": 5}, "size": 2,
          "matrices": [[[0, 1], [0, 0]], [[0, 0], [1, 0]]]})"));
  EXPECT_EQ(ms.algebra.dim(), 4u);
  EXPECT_TRUE(ms.algebra.has_unit());
}

TEST(SpecIo, RationalEntries) {
  auto j = dual_spec();
  j["table"][1][1] = json::array({json::array({"-6", "24"}), 0});  // x^2 = -1/4
  const auto a = algebra_from_spec(j);
  EXPECT_EQ((a.algebra.basis(1) * a.algebra.basis(1)).to_string(), "-1/4*1");
  j = dual_spec();
  j["table"][0][1] = json::array({0, json::array({2, 2})});
  EXPECT_EQ(error_of(j), "");
  j["table"][0][1] = json::array({0, json::array({1, 0})});
  EXPECT_NE(error_of(j).find("/table/0/1/1/1"), std::string::npos);
  j["table"][0][1] = json::array({0, "3"});
  EXPECT_NE(error_of(j).find("/table/0/1/1"), std::string::npos);
}

TEST(SpecIo, BigRationalsRoundTrip) {
  const Field q = Field::rationals();
  const mpz_class big("123456789012345678901234567890");
  const Scalar s(q, big, mpz_class(11));
  const json out = scalar_to_json(s);
  ASSERT_TRUE(out.is_array());
  EXPECT_EQ(out[0], "123456789012345678901234567890");
  EXPECT_EQ(out[1], 11);
  EXPECT_EQ(detail::parse_scalar(q, out, "/x"), s);
  EXPECT_EQ(scalar_to_json(Scalar(q, -5L)), -5);
  EXPECT_EQ(scalar_to_json(Scalar(Field::prime(7), -1L)), 6);
}

TEST(SpecIo, ErrorPaths) {
  EXPECT_NE(error_of(json::array()).find("expected a JSON object"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"field": {"type": "Q"}})")).find("'kind'"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"kind": "nope", "field": {"type": "Q"}})")).find("/kind"),
            std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"kind": "grassmann", "field": {"type": "Fp", "p": 9}, "m": 2})"))
                .find("/field/p: 9 is not prime"),
            std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"kind": "grassmann", "field": {"type": "R"}, "m": 2})")).find("/field/type"),
            std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"kind": "grassmann", "field": {"type": "Q"}, "m": 2, "extra": 1})"))
                .find("/extra: unknown field"),
            std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"kind": "grassmann", "field": {"type": "Q"}, "m": 17})")).find("/m"),
            std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"kind": "block_triangular", "field": {"type": "Q"}, "m": 4, "ks": [1, 2]})"))
                .find("/ks"),
            std::string::npos);
  auto j = dual_spec();
  j["labels"] = json::array({"x", "x"});
  EXPECT_NE(error_of(j).find("/labels/1: duplicate label"), std::string::npos);
  j = dual_spec();
  j["table"][1].erase(1);
  EXPECT_NE(error_of(j).find("/table/1"), std::string::npos);
  j = dual_spec();
  j["unit"] = json::array({0, 1});
  EXPECT_NE(error_of(j).find("unit law"), std::string::npos);
  EXPECT_THROW(algebra_from_spec_text("{not json"), InputError);
  EXPECT_THROW(algebra_from_spec(json::parse(R"({"kind": "grassmann", "field": {"type": "Fp", "p": 2}, "m": 2})")),
               FieldPrecondition);
}

TEST(SpecIo, ExportImportRoundTripOnZoo) {
  for (const auto& entry : default_zoo()) {
    const Algebra a = entry.build();
    const json spec = algebra_to_spec(a, entry.name);
    const auto back = algebra_from_spec(json::parse(spec.dump()));
    EXPECT_EQ(back.name, entry.name);
    EXPECT_TRUE(back.algebra.same_structure(a)) << entry.name;
    EXPECT_EQ(back.algebra.labels(), a.labels());
    EXPECT_EQ(algebra_to_spec(back.algebra, entry.name), spec);
  }
}

TEST(SpecIo, DigestIsStableAndSensitive) {
  const json a = dual_spec();
  const json b = json::parse(a.dump(2));
  EXPECT_EQ(input_digest(a), input_digest(b));
  EXPECT_EQ(input_digest(a).rfind("fnv1a64:", 0), 0u);
  EXPECT_EQ(input_digest(a).size(), 8u + 16u);
  json c = a;
  c["unit"] = json::array({1, 1});
  EXPECT_NE(input_digest(a), input_digest(c));
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(SpecIo, ReportFileShape) {
  ReportFile f;
  f.command = "verify";
  f.seed = 42;
  f.reports.push_back(Report{"s", "i", "Q", Mode::seeded(1, 2)});
  const json j = to_json(f);
  EXPECT_EQ(j.at("tool"), "lienil");
  EXPECT_TRUE(j.at("input_digest").is_null());
  EXPECT_EQ(j.at("seed"), 42);
  EXPECT_EQ(j.at("reports")[0].at("mode").at("kind"), "seeded");
  EXPECT_TRUE(j.at("result").is_null());
  EXPECT_TRUE(j.at("timing").contains("wall_seconds"));
}
