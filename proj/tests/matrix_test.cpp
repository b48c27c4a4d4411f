#include "common.hpp"

#include <ainf/matrix.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace ainf;

namespace {

Matrix from_ints(Field f, std::vector<std::vector<long>> rows) {
  Matrix m(f, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = Scalar(f, rows[i][j]);
  return m;
}

Scalar leibniz_det(const Matrix& m, const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) {
  const Field f = m.field();
  std::vector<std::size_t> perm(r.size());
  std::iota(perm.begin(), perm.end(), 0);
  Scalar det = Scalar::zero(f);
  do {
    long inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    Scalar term = sign_scalar(f, inversions);
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m(r[i], c[perm[i]]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Largest k with a nonzero k x k minor.
std::size_t minor_rank(const Matrix& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    for (const auto& r : rs)
      for (const auto& c : cs)
        if (!leibniz_det(m, r, c).is_zero()) return k;
  }
  return 0;
}

Matrix random_matrix(Field f, std::size_t r, std::size_t c, std::mt19937& rng, int zero_bias) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (std::uniform_int_distribution<int>(0, 9)(rng) >= zero_bias) m(i, j) = small_scalar(f, rng, 6);
  return m;
}

}  // namespace

TEST(Rref, Examples) {
  Field q = Field::rationals();
  auto id = rref(Matrix::identity(q, 2));
  EXPECT_EQ(id.reduced, Matrix::identity(q, 2));
  EXPECT_EQ(id.pivots, (std::vector<std::size_t>{0, 1}));

  auto r = rref(from_ints(q, {{1, 2}, {2, 4}}));
  EXPECT_EQ(r.reduced, from_ints(q, {{1, 2}, {0, 0}}));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
}

TEST(Rref, RankMatchesMinorOracleOverF7) {
  Field f = Field::prime(7);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix m = random_matrix(f, 5, 7, rng, trial % 8);
    EXPECT_EQ(rank(m), minor_rank(m)) << m.to_string();
  }
}

TEST(Rref, IdempotentAndRankNullity) {
  std::mt19937 rng(3);
  for (Field f : {Field::rationals(), Field::prime(5)}) {
    for (int trial = 0; trial < 30; ++trial) {
      Matrix m = random_matrix(f, 1 + trial % 5, 1 + trial % 7, rng, 4);
      auto r = rref(m);
      EXPECT_EQ(rref(r.reduced).reduced, r.reduced);
      EXPECT_TRUE(std::is_sorted(r.pivots.begin(), r.pivots.end()));
      auto ker = kernel_basis(m);
      EXPECT_EQ(r.pivots.size() + ker.size(), m.cols());
      for (const auto& v : ker) EXPECT_TRUE(is_zero(m * v));
      EXPECT_EQ(rank(Matrix::from_columns(f, ker, m.cols())), ker.size());
    }
  }
}

TEST(Kernel, Examples) {
  Field q = Field::rationals();
  EXPECT_TRUE(kernel_basis(Matrix::identity(q, 3)).empty());
  auto z = kernel_basis(Matrix(q, 3, 3));
  ASSERT_EQ(z.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(z[i], unit_vec(q, 3, i));
  auto k = kernel_basis(from_ints(q, {{1, 2}, {2, 4}}));
  ASSERT_EQ(k.size(), 1u);
  EXPECT_FALSE(is_zero(k[0]));
  EXPECT_TRUE(is_zero(from_ints(q, {{1, 2}, {2, 4}}) * k[0]));
}

TEST(Solve, ExamplesAndSubstitution) {
  Field q = Field::rationals();
  Vec b{Scalar(q, 3L), Scalar(q, -1L)};
  EXPECT_EQ(*solve(Matrix::identity(q, 2), b), b);
  auto x = solve(from_ints(q, {{1, 1}}), Vec{Scalar(q, 2L)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0] + (*x)[1], Scalar(q, 2L));
  EXPECT_FALSE(solve(from_ints(q, {{1}, {1}}), Vec{Scalar(q, 0L), Scalar(q, 1L)}));
  EXPECT_THROW(solve(Matrix::identity(q, 2), Vec{Scalar(q, 1L)}), std::invalid_argument);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix m = random_matrix(q, 4, 3, rng, 5);
    Vec rhs(4, Scalar::zero(q));
    for (auto& s : rhs) s = small_scalar(q, rng);
    auto sol = solve(m, rhs);
    Matrix aug(q, 4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 3; ++j) aug(i, j) = m(i, j);
      aug(i, 3) = rhs[i];
    }
    if (sol) {
      EXPECT_EQ(m * *sol, rhs);
    } else {
      EXPECT_GT(rank(aug), rank(m));
    }
  }
}

TEST(Subspace, SumIntersectionContainment) {
  Field q = Field::rationals();
  auto e = [&](std::size_t i) { return unit_vec(q, 4, i); };
  Subspace a = Subspace::span(q, 4, {e(0), e(1) + e(2)});
  Subspace b = Subspace::span(q, 4, {e(1), e(2), e(3)});
  EXPECT_EQ((a + b).dim(), 4u);
  Subspace meet = a.intersect(b);
  EXPECT_EQ(meet.dim(), 1u);
  EXPECT_TRUE(meet.contains(e(1) + e(2)));
  EXPECT_TRUE(a.contains(meet));
  EXPECT_FALSE(a.contains(b));
  EXPECT_EQ(a, Subspace::span(q, 4, {e(0) + e(1) + e(2), e(0)}));

  GeneratorSpan g(q, 4);
  EXPECT_TRUE(g.add(e(0)));
  EXPECT_FALSE(g.add(scaled(Scalar(q, 2L), e(0))));
  EXPECT_TRUE(g.add(e(0) + e(3)));
  EXPECT_EQ(g.generators().size(), 2u);

  CoordinateSystem cs(q, {e(0) + e(1), e(1)}, 4);
  auto c = cs.coordinates(scaled(Scalar(q, 3L), e(0)) + e(1));
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)[0], Scalar(q, 3L));
  EXPECT_EQ((*c)[1], Scalar(q, -2L));
  EXPECT_FALSE(cs.coordinates(e(2)));
}
