#include "common.hpp"

#include <ainf/ainf.hpp>
#include <ainf/trees.hpp>

#include <gtest/gtest.h>

#include <map>

using namespace ainf;

namespace {

// Little Schroeder numbers via their three-term recurrence.
std::vector<mpz_class> schroeder(std::size_t upto) {
  std::vector<mpz_class> s(upto + 1, 0);
  s[1] = 1;
  if (upto >= 2) s[2] = 1;
  for (std::size_t n = 3; n <= upto; ++n) {
    mpz_class num = mpz_class(6 * static_cast<long>(n) - 9) * s[n - 1] - mpz_class(static_cast<long>(n) - 3) * s[n - 2];
    s[n] = num / static_cast<long>(n);
  }
  return s;
}

mpz_class catalan(std::size_t k) {
  mpz_class c = 1;
  for (std::size_t i = 0; i < k; ++i) c = c * 2 * (2 * static_cast<long>(i) + 1) / (static_cast<long>(i) + 2);
  return c;
}

std::size_t stream_count(std::size_t n, std::size_t r) {
  std::size_t k = 0;
  for_each_code(n, r, [&](const std::vector<std::uint8_t>&) {
    ++k;
    return true;
  });
  return k;
}

}  // namespace

TEST(PlanarTree, CodesAndRendering) {
  auto t = PlanarTree::node({PlanarTree::leaf(), PlanarTree::corolla(2), PlanarTree::leaf()});
  EXPECT_EQ(t.to_string(), "m3(-,m2(-,-),-)");
  EXPECT_EQ(t.leaves(), 4u);
  EXPECT_EQ(PlanarTree::leaf().to_string(), "id");
  EXPECT_EQ(t.children().size(), 3u);
  EXPECT_EQ(t.children()[1], PlanarTree::corolla(2));
  EXPECT_THROW(PlanarTree(std::vector<std::uint8_t>{2, 0}), std::invalid_argument);
  EXPECT_THROW(PlanarTree(std::vector<std::uint8_t>{1, 0}), std::invalid_argument);
  EXPECT_THROW(PlanarTree(std::vector<std::uint8_t>{0, 0}), std::invalid_argument);
}

TEST(PlanarTree, PsiFourHasElevenTreesWithKnownStatistics) {
  auto psi = enumerate_psi(4, 4);
  ASSERT_EQ(psi.size(), 11u);
  std::map<std::pair<std::size_t, std::size_t>, int> hist;
  for (const auto& t : psi) {
    auto s = tree_stats(t);
    ++hist[{s.v, s.abs_degree}];
  }
  std::map<std::pair<std::size_t, std::size_t>, int> expect{{{1, 2}, 1}, {{2, 1}, 5}, {{3, 0}, 5}};
  EXPECT_EQ(hist, expect);
}

TEST(PlanarTree, SmallSetsInOrder) {
  auto psi3 = enumerate_psi(3, 3);
  ASSERT_EQ(psi3.size(), 3u);
  EXPECT_EQ(psi3[0].to_string(), "m2(-,m2(-,-))");
  EXPECT_EQ(psi3[1].to_string(), "m2(m2(-,-),-)");
  EXPECT_EQ(psi3[2].to_string(), "m3(-,-,-)");
  EXPECT_EQ(enumerate_psi(1, 5).size(), 1u);
  EXPECT_EQ(enumerate_psi(2, 5).size(), 1u);
  for (std::size_t n = 2; n <= 7; ++n) {
    auto psi = enumerate_psi(n, n);
    for (std::size_t i = 1; i < psi.size(); ++i) {
      ASSERT_TRUE(psi[i - 1] < psi[i]);
      ASSERT_LE(psi[i - 1].root_arity(), psi[i].root_arity());
    }
  }
}

TEST(PlanarTree, CountsMatchSchroederAndCatalan) {
  auto s = schroeder(30);
  for (std::size_t n = 1; n <= 30; ++n) EXPECT_EQ(count_trees(n, n), s[n]) << n;
  EXPECT_EQ(count_trees(14, 14), mpz_class(71039373));
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_EQ(count_trees(n, 2), catalan(n - 1)) << n;
  for (std::size_t n = 1; n <= 9; ++n)
    for (std::size_t r = 2; r <= n + 1; ++r) EXPECT_EQ(mpz_class(stream_count(n, r)), count_trees(n, r)) << n << " " << r;
}

TEST(PlanarTree, StreamingMatchesCountAtTwelve) {
  EXPECT_EQ(stream_count(12, 12), 2646723u);
  EXPECT_EQ(count_trees(12, 12), mpz_class(2646723));
}

TEST(PlanarTree, LeafIdentityHoldsForEveryTreeUpToEight) {
  std::size_t total = 0;
  for (std::size_t n = 1; n <= 8; ++n)
    for_each_tree(n, n, [&](const PlanarTree& t) {
      auto st = tree_stats(t);
      EXPECT_EQ(n, st.v + st.abs_degree + 1);
      EXPECT_EQ(st.abs_degree, static_cast<std::size_t>(-tree_degree(t)));
      ++total;
      return true;
    });
  EXPECT_EQ(total, 1u + 1 + 3 + 11 + 45 + 197 + 903 + 4279);
}

TEST(PlanarTree, EarlyStop) {
  std::size_t seen = 0;
  for_each_tree(10, 10, [&](const PlanarTree&) { return ++seen < 5; });
  EXPECT_EQ(seen, 5u);
}

TEST(TreeEvaluation, CorollaIsTheOperationAndSignsFollowDegrees) {
  auto a = build_ainf(corpus("cyclic"));
  auto el = [&](const char* n) { return a.element(*a.index_of(n)); };
  EXPECT_EQ(evaluate_tree(PlanarTree::corolla(3), a, {el("a"), el("b"), el("c")}), a.operation(3, {el("a"), el("b"), el("c")}));
  EXPECT_EQ(evaluate_tree(PlanarTree::leaf(), a, {el("b")}), el("b"));
  // m2(a, m3(b, c, a)): m3 has degree -1 and passes a of degree 1
  auto t = PlanarTree::node({PlanarTree::leaf(), PlanarTree::corolla(3)});
  EXPECT_EQ(evaluate_tree(t, a, {el("a"), el("b"), el("c"), el("a")}), scaled(Scalar(a.field(), -1L), el("a")));
  // m2(m3(a, b, c), a): nothing passes
  auto u = PlanarTree::node({PlanarTree::corolla(3), PlanarTree::leaf()});
  EXPECT_EQ(evaluate_tree(u, a, {el("a"), el("b"), el("c"), el("a")}), el("a"));
  EXPECT_THROW(evaluate_tree(t, a, {el("a")}), std::invalid_argument);
}

TEST(TreeEvaluation, Multilinear) {
  auto a = build_ainf(corpus("cyclic"));
  const Field f = a.field();
  std::mt19937 rng(7);
  auto random_vec = [&] {
    Vec v = zero_vec(f, a.dim());
    for (auto& x : v) x = small_scalar(f, rng);
    return v;
  };
  for (const auto& t : enumerate_psi(4, 4)) {
    std::vector<Vec> args{random_vec(), random_vec(), random_vec(), random_vec()};
    Vec y = random_vec();
    Scalar lam = small_scalar(f, rng);
    for (std::size_t slot = 0; slot < 4; ++slot) {
      auto mixed = args;
      mixed[slot] = args[slot] + scaled(lam, y);
      auto only = args;
      only[slot] = y;
      EXPECT_EQ(evaluate_tree(t, a, mixed), evaluate_tree(t, a, args) + scaled(lam, evaluate_tree(t, a, only))) << t.to_string();
    }
  }
}
