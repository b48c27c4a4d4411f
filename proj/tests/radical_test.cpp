#include "common.hpp"

#include <ainf/radical.hpp>

#include <gtest/gtest.h>

using namespace ainf;

namespace {

Subspace span_of(const GradedAlgebra& a, std::initializer_list<const char*> names) {
  Subspace s(a.field(), a.dim());
  for (const char* n : names) s.insert(a.element(*a.index_of(n)));
  return s;
}

Presentation over(Presentation p, Field f) {
  p.field = f;
  for (auto& [n, entries] : p.m)
    for (auto& e : entries)
      for (auto& t : e.value) t.second = Scalar(f, t.second.rational());
  for (auto& e : p.d)
    for (auto& t : e.value) t.second = Scalar(f, t.second.rational());
  return p;
}

// Two-dimensional field extension k[i]/(i^2 - c).
GradedAlgebra quadratic(Field f, long c) {
  Presentation p;
  p.field = f;
  p.basis = {{"one", 0, {}, {}}, {"i", 0, {}, {}}};
  p.unit = {"one"};
  p.m[2] = {{{"i", "i"}, {{"one", Scalar(f, c)}}}};
  return build_algebra(p);
}

}  // namespace

TEST(DegreeZeroRadical, Examples) {
  auto dual = corpus_algebra("dual_numbers");
  EXPECT_EQ(degree_zero_radical(dual), span_of(dual, {"x"}));
  EXPECT_TRUE(degree_zero_radical(corpus_algebra("two_points")).is_zero());
  auto k = corpus_algebra("kronecker");
  EXPECT_EQ(degree_zero_radical(k), span_of(k, {"a"}));
}

TEST(DegreeZeroRadical, NilpotentIdealWithSemisimpleQuotient) {
  for (const char* name : {"dual_numbers", "truncated_poly", "path_a4", "matrix2", "kronecker", "four_vertex", "dual_numbers_dga"}) {
    for (Field f : {Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(101)}) {
      auto a = build_algebra(over(corpus(name), f));
      auto zero = degree_zero_part(a);
      Subspace r = algebra_radical(zero.algebra);
      EXPECT_EQ(two_sided_ideal(zero.algebra, r), r) << name;
      EXPECT_TRUE(subspace_powers(zero.algebra, r).back().is_zero()) << name;
      auto q = quotient_algebra(zero.algebra, r);
      EXPECT_TRUE(algebra_radical(q).is_zero()) << name << " over " << f.to_string();
    }
  }
}

TEST(DegreeZeroRadical, SmallCharacteristic) {
  // trace form alone would kill everything here: Tr(L_1) = 4 = 0 mod 2
  auto m2 = build_algebra(over(corpus("matrix2"), Field::prime(2)));
  EXPECT_TRUE(algebra_radical(m2).is_zero());
  auto a4 = build_algebra(over(corpus("path_a4"), Field::prime(2)));
  EXPECT_EQ(algebra_radical(a4).dim(), 6u);
  auto t = build_algebra(over(corpus("truncated_poly"), Field::prime(3)));
  EXPECT_EQ(algebra_radical(t).dim(), 2u);
  // k[i]/(i^2+1) over GF(2) is k[t]/t^2 with t = i + 1
  EXPECT_EQ(algebra_radical(quadratic(Field::prime(2), -1)).dim(), 1u);
  EXPECT_TRUE(algebra_radical(quadratic(Field::prime(3), -1)).is_zero());
}

TEST(GradedRadical, Examples) {
  auto fv = corpus_algebra("four_vertex");
  auto r = graded_radical(fv);
  EXPECT_EQ(r.J, span_of(fv, {"a", "b", "c", "e"}));
  EXPECT_EQ(r.loewy_length, 2u);

  auto k = corpus_algebra("point");
  auto rk = graded_radical(k);
  EXPECT_TRUE(rk.J.is_zero());
  EXPECT_EQ(rk.loewy_length, 1u);
  EXPECT_EQ(rk.S, Subspace::whole(k.field(), 1));

  auto kr = corpus_algebra("kronecker");
  auto rr = graded_radical(kr);
  EXPECT_EQ(rr.J, span_of(kr, {"a", "b"}));
  EXPECT_EQ(rr.loewy_length, 2u);

  EXPECT_THROW(graded_radical(corpus_algebra("positive_part")), DomainError);
}

TEST(GradedRadical, ComplementAndLoewyConvention) {
  for (const char* name : {"four_vertex", "kronecker", "path_a4", "matrix2", "truncated_poly", "dual_numbers_dga", "point"}) {
    auto a = corpus_algebra(name);
    auto r = graded_radical(a);
    EXPECT_EQ(r.S.dim() + r.J.dim(), a.dim()) << name;
    EXPECT_TRUE(r.S.intersect(r.J).is_zero()) << name;
    EXPECT_TRUE(r.S.contains(a.product_space(r.S, r.S))) << name;
    auto powers = subspace_powers(a, r.J);
    EXPECT_TRUE(powers[r.loewy_length - 1].is_zero()) << name;
    if (r.loewy_length >= 2) {
      EXPECT_FALSE(powers[r.loewy_length - 2].is_zero()) << name;
    }
  }
  // path algebras: J is exactly the span of non-idempotent basis elements
  auto a4 = corpus_algebra("path_a4");
  EXPECT_EQ(graded_radical(a4).J, span_of(a4, {"p12", "p23", "p34", "p13", "p24", "p14"}));
  EXPECT_EQ(graded_radical(a4).loewy_length, 4u);
}

TEST(GradedRadical, InvariantUnderChangeOfBasis) {
  auto a = corpus_algebra("path_a4");
  const Field f = a.field();
  std::mt19937 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix change = Matrix::identity(f, a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 4; j < a.dim(); ++j)
        if (i != j) change(i, j) = small_scalar(f, rng, 2);
    // idempotent columns may pick up arrows: still degree 0, still a basis
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 4; j < a.dim(); ++j) change(j, i) = small_scalar(f, rng, 1);
    if (rank(change) != a.dim()) continue;
    auto b = change_basis(a, change);
    auto r = graded_radical(b);
    EXPECT_EQ(r.J.dim(), 6u);
    EXPECT_EQ(r.loewy_length, 4u);
    EXPECT_EQ(r.idempotents.class_count, 4u);
  }
}

TEST(BasicReduction, Examples) {
  auto m2 = basic_reduction(corpus_algebra("matrix2"));
  EXPECT_EQ(m2.class_count, 1u);
  EXPECT_EQ(m2.algebra.dim(), 1u);
  EXPECT_TRUE(verify_algebra(m2.algebra).valid());

  auto a2 = basic_reduction(corpus_algebra("path_a2"));
  EXPECT_EQ(a2.class_count, 2u);
  EXPECT_EQ(a2.algebra.dim(), 3u);
  EXPECT_EQ(a2.algebra.basis()[0].name, "e1");
  EXPECT_EQ(a2.algebra.basis()[2].name, "a");

  auto kk = basic_reduction(corpus_algebra("two_points"));
  EXPECT_EQ(kk.class_count, 2u);
  EXPECT_EQ(kk.algebra.dim(), 2u);
}

TEST(BasicReduction, IdempotentOnCorpus) {
  for (const char* name : {"matrix2", "path_a4", "kronecker", "four_vertex", "truncated_poly"}) {
    auto once = basic_reduction(corpus_algebra(name));
    auto twice = basic_reduction(once.algebra);
    EXPECT_EQ(once.class_count, twice.class_count) << name;
    EXPECT_EQ(once.algebra.dim(), twice.algebra.dim()) << name;
    EXPECT_EQ(once.algebra.products(), twice.algebra.products()) << name;
  }
}

TEST(BasicReduction, MatrixAlgebraInDisguise) {
  // M2(k) x k in a scrambled degree-0 basis still has two classes
  Presentation p = corpus("matrix2");
  p.basis.push_back({"f", 0, {}, {}});
  p.unit.push_back("f");
  auto a = build_algebra(p);
  const Field f = a.field();
  Matrix change = Matrix::identity(f, a.dim());
  change(0, 2) = Scalar(f, 1L);
  change(3, 1) = Scalar(f, -2L);
  auto b = change_basis(a, change);
  auto red = basic_reduction(b);
  EXPECT_EQ(red.class_count, 2u);
  EXPECT_EQ(red.algebra.dim(), 2u);
}

TEST(BasicReduction, NonSplitQuotientRejected) {
  EXPECT_THROW(basic_reduction(quadratic(Field::rationals(), -1)), DomainError);
  EXPECT_THROW(basic_reduction(quadratic(Field::prime(3), -1)), DomainError);
  EXPECT_EQ(basic_reduction(quadratic(Field::prime(5), -1)).class_count, 2u);
  EXPECT_EQ(basic_reduction(quadratic(Field::rationals(), 4)).class_count, 2u);
}
