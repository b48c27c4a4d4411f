#include "common.hpp"

#include <ainf/dg.hpp>

#include <gtest/gtest.h>

using namespace ainf;

namespace {

DgAlgebra dg(const std::string& name) { return build_dg(corpus(name)); }

}  // namespace

TEST(VerifyDg, Examples) {
  EXPECT_TRUE(verify_dg(dg("kronecker")).valid());
  EXPECT_TRUE(verify_dg(dg("path_a4")).valid());
  EXPECT_TRUE(verify_dg(dg("dual_numbers_dga")).valid());
  EXPECT_TRUE(verify_dg(dg("jminus_strict")).valid());
  EXPECT_TRUE(verify_dg(dg("truncation_surjective")).valid());

  auto p = corpus("dual_numbers_dga");
  p.d = {{"y", {{"x", Scalar::one(p.field)}}}};
  auto diag = verify_dg(build_dg(p));
  ASSERT_FALSE(diag.valid());
  // |x| = |y| + 1, so the degree check passes and Leibniz is the first failure
  EXPECT_EQ(diag.violations.front().rfind("leibniz", 0), 0u) << diag.summary();
}

TEST(VerifyDg, LeibnizAndSquareFailures) {
  // d(x) = u with x*x = x2 forces d(x2) = xu + ux, which is absent
  Presentation p;
  p.field = Field::rationals();
  p.basis = {{"one", 0, {}, {}}, {"x", 0, {}, {}}, {"x2", 0, {}, {}}, {"u", 1, {}, {}}};
  p.unit = {"one"};
  p.m[2] = {{{"x", "x"}, {{"x2", Scalar::one(p.field)}}}, {{"x", "u"}, {{"u", Scalar::one(p.field)}}}};
  p.d = {{"x", {{"u", Scalar::one(p.field)}}}};
  auto diag = verify_dg(build_dg(p));
  ASSERT_FALSE(diag.valid());
  bool leibniz = false;
  for (const auto& v : diag.violations) leibniz |= v.rfind("leibniz", 0) == 0;
  EXPECT_TRUE(leibniz);

  Presentation q;
  q.field = Field::rationals();
  q.basis = {{"one", 0, {}, {}}, {"s", -2, {}, {}}, {"t", -1, {}, {}}, {"w", 0, {}, {}}};
  q.unit = {"one"};
  q.d = {{"s", {{"t", Scalar::one(q.field)}}}, {"t", {{"w", Scalar::one(q.field)}}}};
  auto dq = verify_dg(build_dg(q));
  bool square = false;
  for (const auto& v : dq.violations) square |= v.rfind("d^2", 0) == 0;
  EXPECT_TRUE(square);
}

TEST(Cohomology, Examples) {
  auto k = dg("kronecker");
  auto hk = cohomology_algebra(k);
  EXPECT_EQ(hk.algebra.dim(), 4u);
  EXPECT_EQ(hk.algebra.products(), k.algebra().products());

  auto h = cohomology_algebra(dg("dual_numbers_dga"));
  ASSERT_EQ(h.algebra.dim(), 2u);
  EXPECT_EQ(h.algebra.basis()[0].name, "one");
  EXPECT_EQ(h.algebra.basis()[1].name, "x");
  EXPECT_EQ(h.algebra.degree(1), 0);
  EXPECT_TRUE(is_zero(h.algebra.multiply(h.algebra.element(1), h.algebra.element(1))));
  EXPECT_TRUE(verify_algebra(h.algebra).valid());

  auto hj = cohomology_algebra(dg("jminus_strict"));
  EXPECT_EQ(hj.algebra.dim(), 1u);
}

TEST(Truncation, Examples) {
  auto c = dg("kronecker");
  auto t = truncate_connective(c);
  EXPECT_EQ(t.algebra().products(), c.algebra().products());

  auto u = truncate_connective(dg("positive_part"));
  EXPECT_EQ(u.dim(), 1u);
  EXPECT_TRUE(verify_dg(u).valid());

  auto s = truncate_connective(dg("truncation_surjective"));
  EXPECT_EQ(s.dim(), 1u);
  EXPECT_EQ(s.algebra().basis()[0].name, "one");
}

TEST(Truncation, PreservesNonPositiveCohomology) {
  for (const char* name : {"truncation_surjective", "positive_part", "dual_numbers_dga", "jminus_strict", "kronecker"}) {
    auto a = dg(name);
    auto t = truncate_connective(a);
    EXPECT_TRUE(verify_dg(t).valid()) << name;
    auto before = predicates(a).cohomology_dimensions;
    auto after = predicates(t).cohomology_dimensions;
    for (auto it = before.begin(); it != before.end();)
      it = it->first > 0 ? before.erase(it) : std::next(it);
    EXPECT_EQ(before, after) << name;
    EXPECT_TRUE(predicates(t).connective);
  }
}

TEST(Predicates, Amplitude) {
  auto k = predicates(dg("point"));
  EXPECT_TRUE(k.proper);
  EXPECT_TRUE(k.connective);
  EXPECT_EQ(k.amplitude, 0);
  EXPECT_EQ(predicates(dg("kronecker")).amplitude, 2);
  EXPECT_EQ(predicates(dg("dual_numbers_dga")).amplitude, 0);
  EXPECT_FALSE(predicates(dg("positive_part")).connective);

  // acyclic: amplitude undefined
  Presentation p;
  p.field = Field::rationals();
  p.basis = {{"one", 0, {}, {}}, {"s", -1, {}, {}}};
  p.unit = {"one"};
  p.d = {{"s", {{"one", Scalar::one(p.field)}}}};
  EXPECT_FALSE(predicates(build_dg(p)).amplitude.has_value());
}

TEST(RadicalIdeals, Examples) {
  auto k = dg("kronecker");
  auto pk = dg_radical_ideals(k);
  EXPECT_EQ(pk.J_minus, pk.J);
  EXPECT_EQ(pk.J_plus, pk.J);

  auto d4 = dg("dual_numbers_dga");
  auto p4 = dg_radical_ideals(d4);
  EXPECT_EQ(p4.J.dim(), 3u);
  EXPECT_EQ(p4.J_minus, p4.J);
  EXPECT_EQ(p4.J_plus, p4.J);
  EXPECT_TRUE(p4.quasi_isomorphism);
  EXPECT_EQ(p4.minus_cohomology, (std::map<int, std::size_t>{{0, 1}}));

  auto js = dg("jminus_strict");
  auto pj = dg_radical_ideals(js);
  EXPECT_EQ(pj.J.dim(), 1u);
  EXPECT_TRUE(pj.J_minus.is_zero());
  EXPECT_TRUE(pj.J.contains(pj.J_minus));
  EXPECT_NE(pj.J_minus, pj.J);
  EXPECT_EQ(pj.J_plus.dim(), 2u);
  EXPECT_TRUE(pj.quasi_isomorphism);
}

TEST(RadicalIdeals, CorpusInvariants) {
  for (const char* name : {"kronecker", "dual_numbers_dga", "burniat", "jminus_strict", "path_a2", "path_a4", "dual_numbers",
                           "truncated_poly", "point", "two_points", "matrix2", "positive_part", "truncation_surjective"}) {
    auto a = dg(name);
    auto p = dg_radical_ideals(a);
    EXPECT_TRUE(p.minus_is_dg_ideal) << name;
    EXPECT_TRUE(p.plus_is_dg_ideal) << name;
    EXPECT_TRUE(p.quasi_isomorphism) << name;
    EXPECT_EQ(p.minus_cohomology, p.plus_cohomology) << name;
    EXPECT_TRUE(subspace_powers(a.algebra(), p.J_minus).back().is_zero()) << name;
  }
}

TEST(RadicalIdeals, ConnectiveFormulaAgreesWithJacobsonRadical) {
  for (const char* name : {"kronecker", "dual_numbers_dga", "path_a4", "matrix2", "four_vertex"}) {
    auto a = corpus_algebra(name);
    EXPECT_EQ(graded_radical(a).J, algebra_radical(a)) << name;
  }
}

TEST(PowerFiltration, Examples) {
  auto s = jminus_power_filtration(dg("two_points"));
  EXPECT_EQ(s.layers.size(), 2u);
  EXPECT_EQ(s.nonzero_steps(), 1u);

  auto d4 = jminus_power_filtration(dg("dual_numbers_dga"));
  ASSERT_EQ(d4.layers.size(), 4u);
  EXPECT_EQ(d4.layers[1].dim(), 3u);
  EXPECT_EQ(d4.layers[2].dim(), 1u);
  EXPECT_TRUE(d4.layers[3].is_zero());
  EXPECT_EQ(d4.nonzero_steps(), 3u);
  EXPECT_TRUE(d4.closed_under_d);

  auto x3 = jminus_power_filtration(dg("truncated_poly"));
  ASSERT_EQ(x3.layers.size(), 4u);
  EXPECT_EQ(x3.layers[1].dim(), 2u);
  EXPECT_EQ(x3.layers[2].dim(), 1u);
}
