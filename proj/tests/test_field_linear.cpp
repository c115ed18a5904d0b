#include <gtest/gtest.h>

#include <set>

#include "lienil/matrix.hpp"
#include "lienil/random.hpp"
#include "lienil/subspace.hpp"

using namespace lienil;

namespace {

const Field Q = Field::rationals();

Scalar q(long n, long d = 1) { return Scalar(Q, mpz_class(n), mpz_class(d)); }

Matrix mat(const Field& f, std::vector<std::vector<long>> rows) {
  Matrix m(f, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = Scalar(f, rows[i][j]);
  return m;
}

Vector vec(const Field& f, std::vector<long> xs) {
  Vector v;
  for (long x : xs) v.push_back(Scalar(f, x));
  return v;
}

// Every vector of F_p^n, for brute-force oracles.
std::vector<Vector> all_vectors(const Field& f, std::size_t n) {
  std::vector<Vector> out;
  std::vector<std::uint64_t> digits(n, 0);
  for (;;) {
    Vector v;
    for (auto d : digits) v.push_back(Scalar(f, static_cast<long>(d)));
    out.push_back(v);
    std::size_t k = 0;
    while (k < n && ++digits[k] == f.modulus()) digits[k++] = 0;
    if (k == n) break;
  }
  return out;
}

Vector apply(const Matrix& m, const Vector& v) {
  Vector out = zero_vector(m.field(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng.chance(1, 2)) m(i, j) = random_scalar(f, rng);
  return m;
}

}  // namespace

TEST(Field, PrimeValidation) {
  EXPECT_NO_THROW(Field::prime(2));
  EXPECT_NO_THROW(Field::prime(4294967291ULL));
  EXPECT_THROW(Field::prime(1), InputError);
  EXPECT_THROW(Field::prime(9), InputError);
  EXPECT_THROW(Field::prime(4294967311ULL), InputError);  // prime but >= 2^32
  EXPECT_EQ(Field::prime(5).name(), "F5");
  EXPECT_EQ(Q.name(), "Q");
  EXPECT_EQ(Field::prime(7).characteristic(), 7u);
  EXPECT_EQ(Q.characteristic(), 0u);
}

TEST(Scalar, RationalArithmeticIsExact) {
  EXPECT_EQ(q(1, 2) + q(1, 3), q(5, 6));
  EXPECT_EQ(q(-4, 6), q(-2, 3));
  EXPECT_EQ(q(3, -9), q(-1, 3));
  EXPECT_EQ(q(2, 3) * q(3, 2), Scalar::one(Q));
  EXPECT_EQ(q(1, 3) / q(2, 9), q(3, 2));
  EXPECT_EQ(Scalar::parse(Q, "-4/6"), q(-2, 3));
  EXPECT_EQ(q(-2, 3).to_string(), "-2/3");
  EXPECT_EQ(q(7).to_string(), "7");
  EXPECT_THROW(Scalar::zero(Q).inverse(), InputError);
  EXPECT_THROW(Scalar::parse(Q, "x/2"), InputError);
  EXPECT_THROW(q(1, 0), InputError);
}

TEST(Scalar, ResidueArithmetic) {
  const Field f7 = Field::prime(7);
  EXPECT_EQ(Scalar(f7, 3L).inverse(), Scalar(f7, 5L));
  EXPECT_EQ(Scalar(f7, -1L), Scalar(f7, 6L));
  EXPECT_EQ(Scalar(f7, mpz_class(1), mpz_class(2)), Scalar(f7, 4L));
  EXPECT_THROW(Scalar(f7, mpz_class(1), mpz_class(14)), InputError);
  const Field big = Field::prime(4294967291ULL);
  const Scalar m1(big, -1L);
  EXPECT_EQ(m1 * m1, Scalar::one(big));  // no 64-bit overflow
}

TEST(Scalar, MixedFieldsRejected) {
  EXPECT_THROW(q(1) + Scalar(Field::prime(3), 1L), InputError);
  EXPECT_THROW(Scalar(Field::prime(5), 1L) * Scalar(Field::prime(3), 1L), InputError);
}

TEST(Scalar, FieldAxiomsSeeded) {
  for (const Field& f : {Q, Field::prime(2), Field::prime(7), Field::prime(4294967291ULL)}) {
    Rng rng(1234);
    for (int t = 0; t < 300; ++t) {
      const Scalar a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_scalar(f, rng);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a + (-a), Scalar::zero(f));
      EXPECT_EQ(a - b, a + (-b));
      if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), Scalar::one(f));
    }
  }
}

TEST(Rref, KnownExample) {
  const auto r = rref(mat(Q, {{2, 4, 2}, {1, 2, 3}, {3, 6, 5}}));
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(r.form, mat(Q, {{1, 2, 0}, {0, 0, 1}}));
}

TEST(NullSpace, F3OracleEnumeration) {
  const Field f3 = Field::prime(3);
  const Subspace ns = null_space(mat(f3, {{1, 1}}));
  EXPECT_EQ(ns.dim(), 1u);
  std::set<std::string> expected, got;
  for (const auto& v : all_vectors(f3, 2)) {
    if ((v[0] + v[1]).is_zero()) expected.insert(v[0].to_string() + "," + v[1].to_string());
    if (ns.contains(v)) got.insert(v[0].to_string() + "," + v[1].to_string());
  }
  EXPECT_EQ(expected, (std::set<std::string>{"0,0", "1,2", "2,1"}));
  EXPECT_EQ(got, expected);
}

TEST(NullSpace, RankNullityAndKernelSeeded) {
  for (const Field& f : {Q, Field::prime(5)}) {
    Rng rng(77);
    for (int t = 0; t < 60; ++t) {
      const std::size_t r = 1 + rng.below(5), c = 1 + rng.below(6);
      const Matrix m = random_matrix(f, r, c, rng);
      const Subspace ns = null_space(m);
      EXPECT_EQ(rref(m).rank + ns.dim(), c);
      for (const auto& v : ns.basis()) EXPECT_TRUE(is_zero_vector(apply(m, v)));
    }
  }
}

TEST(NullSpace, MatchesBruteForceOverF2) {
  const Field f2 = Field::prime(2);
  Rng rng(5);
  for (int t = 0; t < 40; ++t) {
    const Matrix m = random_matrix(f2, 3, 5, rng);
    const Subspace ns = null_space(m);
    std::size_t count = 0;
    for (const auto& v : all_vectors(f2, 5)) {
      const bool in_kernel = is_zero_vector(apply(m, v));
      count += in_kernel;
      EXPECT_EQ(ns.contains(v), in_kernel);
    }
    EXPECT_EQ(count, std::size_t{1} << ns.dim());
  }
}

TEST(Subspace, CanonicalBasisAndEquality) {
  const Subspace a = Subspace::span(Q, 3, std::vector<Vector>{vec(Q, {1, 1, 0}), vec(Q, {2, 2, 0}), vec(Q, {0, 1, 1})});
  const Subspace b = Subspace::span(Q, 3, std::vector<Vector>{vec(Q, {1, 0, -1}), vec(Q, {1, 2, 1})});
  EXPECT_EQ(a.dim(), 2u);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.basis(), b.basis());
  EXPECT_TRUE(a.contains(vec(Q, {3, 4, 1})));
  EXPECT_FALSE(a.contains(vec(Q, {0, 0, 1})));
  const Vector x = vec(Q, {3, 4, 1});
  EXPECT_EQ(a.combination(a.coordinates(x)), x);
}

TEST(Subspace, SumAndIntersectionMatchBruteForce) {
  const Field f3 = Field::prime(3);
  Rng rng(11);
  const auto everything = all_vectors(f3, 4);
  for (int t = 0; t < 30; ++t) {
    std::vector<Vector> ga, gb;
    for (std::size_t i = 0, k = 1 + rng.below(3); i < k; ++i) ga.push_back(random_vector(f3, 4, rng));
    for (std::size_t i = 0, k = 1 + rng.below(3); i < k; ++i) gb.push_back(random_vector(f3, 4, rng));
    const Subspace a = Subspace::span(f3, 4, ga), b = Subspace::span(f3, 4, gb);
    const Subspace cap = subspace_intersection(a, b);
    const Subspace sum = subspace_sum(a, b);
    std::size_t both = 0;
    for (const auto& v : everything) {
      const bool in = a.contains(v) && b.contains(v);
      both += in;
      EXPECT_EQ(cap.contains(v), in);
    }
    std::size_t expect = 1;
    for (std::size_t i = 0; i < cap.dim(); ++i) expect *= 3;
    EXPECT_EQ(both, expect);
    EXPECT_EQ(sum.dim() + cap.dim(), a.dim() + b.dim());
  }
}

TEST(Subspace, AmbientMismatchRejected) {
  EXPECT_THROW(subspace_sum(Subspace::zero(Q, 2), Subspace::zero(Q, 3)), InputError);
  EXPECT_THROW(Subspace::zero(Q, 2).contains(vec(Q, {1, 2, 3})), InputError);
}

TEST(Matrix, ExpressInBasis) {
  const std::vector<Vector> basis{vec(Q, {1, 0, 1}), vec(Q, {0, 1, 1})};
  const std::vector<Vector> targets{vec(Q, {2, 3, 5}), vec(Q, {0, 0, 1})};
  const auto c = express_in_basis(Q, 3, basis, targets);
  ASSERT_TRUE(c[0].has_value());
  EXPECT_EQ(*c[0], vec(Q, {2, 3}));
  EXPECT_FALSE(c[1].has_value());
  EXPECT_THROW(express_in_basis(Q, 3, std::vector<Vector>{basis[0], basis[0]}, targets), InputError);
}

TEST(Matrix, InverseSeeded) {
  Rng rng(3);
  int invertible = 0;
  for (int t = 0; t < 50; ++t) {
    const Matrix m = random_matrix(Field::prime(7), 4, 4, rng);
    const auto inv = inverse(m);
    if (rref(m).rank < 4) {
      EXPECT_FALSE(inv.has_value());
      continue;
    }
    ++invertible;
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(m * *inv, Matrix::identity(Field::prime(7), 4));
    EXPECT_EQ(*inv * m, Matrix::identity(Field::prime(7), 4));
  }
  EXPECT_GT(invertible, 0);
}

TEST(Matrix, VectorizeRoundTrip) {
  const Matrix m = mat(Q, {{1, 2}, {3, 4}});
  EXPECT_EQ(m.vectorize(), vec(Q, {1, 2, 3, 4}));
  EXPECT_EQ(Matrix::unvectorize(Q, 2, m.vectorize()), m);
  EXPECT_EQ(m.transpose(), mat(Q, {{1, 3}, {2, 4}}));
  EXPECT_THROW(mat(Q, {{1, 2}}) * mat(Q, {{1, 2}}), InputError);
}
