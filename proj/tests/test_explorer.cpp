#include <gtest/gtest.h>

#include "lienil/explorer.hpp"

using namespace lienil;

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Bound, KnownValues) {
  const auto b41 = conjecture_bound(4, 1);
  EXPECT_EQ(b41.value, 5u);
  EXPECT_EQ(b41.best_ks, (std::vector<std::size_t>{2, 2}));
  const auto b43 = conjecture_bound(4, 3);
  EXPECT_EQ(b43.value, 7u);
  EXPECT_EQ(b43.best_ks, (std::vector<std::size_t>{1, 1, 1, 1}));
  EXPECT_EQ(conjecture_bound(3, 1).value, 3u);
  EXPECT_EQ(conjecture_bound(5, 1).value, 7u);
  EXPECT_THROW(conjecture_bound(3, 3), InputError);
  EXPECT_THROW(conjecture_bound(3, 0), InputError);
}

TEST(Bound, TwoPartsGivesSchurBound) {
  for (std::size_t m = 2; m <= 12; ++m) EXPECT_EQ(conjecture_bound(m, 1).value, 1 + m * m / 4) << m;
}

TEST(Bound, FirstMaximizerInLexOrder) {
  // (1,2) and (2,1) tie for m = 3, n = 1
  EXPECT_EQ(conjecture_bound(3, 1).best_ks, (std::vector<std::size_t>{1, 2}));
}

TEST(Compositions, CountsAndOrder) {
  for (std::size_t m = 1; m <= 8; ++m)
    for (std::size_t parts = 1; parts <= m; ++parts) {
      const auto cs = compositions(m, parts);
      EXPECT_EQ(cs.size(), binomial(m - 1, parts - 1));
      EXPECT_TRUE(std::is_sorted(cs.begin(), cs.end()));
      for (const auto& c : cs) {
        std::size_t s = 0;
        for (auto k : c) s += k;
        EXPECT_EQ(s, m);
      }
    }
  EXPECT_TRUE(compositions(3, 4).empty());
  EXPECT_TRUE(compositions(3, 0).empty());
}

TEST(Search, ReachesBoundWithoutViolation) {
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{3, 1}, {4, 3}}) {
    const auto rec = random_ln_subalgebra_search(m, n, 5, 200, 42);
    EXPECT_EQ(rec.best_dim, rec.bound.value);
    EXPECT_FALSE(rec.violation);
    EXPECT_FALSE(check_search_record(rec).has_value());
    EXPECT_GT(rec.counts.at("ln_tested"), 0u);
  }
}

TEST(Search, ZeroTrialsKeepsBlockFloor) {
  const auto rec = random_ln_subalgebra_search(4, 1, 3, 0, 1);
  EXPECT_EQ(rec.best_source, "block_floor");
  EXPECT_EQ(rec.best_dim, 5u);
  EXPECT_FALSE(check_search_record(rec).has_value());
}

TEST(Search, IndependentOfJobs) {
  const auto a = random_ln_subalgebra_search(4, 2, 5, 150, 9, 1);
  const auto b = random_ln_subalgebra_search(4, 2, 5, 150, 9, 4);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Record, RoundTripAndTamperRejection) {
  const auto rec = random_ln_subalgebra_search(3, 1, 5, 50, 42);
  const auto j = to_json(rec);
  const auto back = search_record_from_json(j);
  EXPECT_EQ(to_json(back).dump(), j.dump());

  auto bad_dim = j;
  bad_dim["best_dim"] = rec.best_dim + 1;
  EXPECT_THROW(search_record_from_json(bad_dim), InputError);

  auto bad_flag = j;
  bad_flag["violation"] = true;
  EXPECT_THROW(search_record_from_json(bad_flag), InputError);

  auto bad_basis = j;
  bad_basis["best_basis"][0][0][1] = 1;  // break closure or independence
  bad_basis["best_basis"][0][1][0] = 1;
  EXPECT_THROW(search_record_from_json(bad_basis), InputError);

  auto missing = j;
  missing.erase("bound");
  EXPECT_THROW(search_record_from_json(missing), InputError);
}

TEST(Record, RejectsNonLnBasis) {
  // full M2(F5) is unital and closed but not Lie nilpotent
  SearchRecord rec;
  rec.m = 2;
  rec.n = 1;
  rec.p = 5;
  rec.bound = conjecture_bound(2, 1);
  const Field f = Field::prime(5);
  for (std::size_t i = 1; i <= 2; ++i)
    for (std::size_t j = 1; j <= 2; ++j) rec.best_basis.push_back(matrix_unit(f, 2, i, j));
  rec.best_dim = 4;
  rec.violation = true;
  const auto problem = check_search_record(rec);
  ASSERT_TRUE(problem.has_value());
  EXPECT_NE(problem->find("fails L_1"), std::string::npos);
}
