#include "common.hpp"

#include <ainf/invariants.hpp>

#include <gtest/gtest.h>

using namespace ainf;

namespace {

std::vector<std::size_t> dims(const CohomologyWindow& w) {
  std::vector<std::size_t> out;
  for (int i = w.lo; i <= w.hi; ++i) out.push_back(w.dims.at(i));
  return out;
}

using Dims = std::vector<std::size_t>;

Subspace span_of(const DgAlgebra& dg, std::initializer_list<const char*> names) {
  Subspace s(dg.field(), dg.dim());
  for (auto n : names) s.insert(dg.algebra().element(*dg.algebra().index_of(n)));
  return s;
}

}  // namespace

TEST(K0, RanksOfCorpusAlgebras) {
  struct Case {
    const char* name;
    std::size_t rank;
  };
  for (auto c : {Case{"point", 1}, Case{"two_points", 2}, Case{"path_a4", 4}, Case{"kronecker", 2}, Case{"matrix2", 1},
                 Case{"dual_numbers", 1}, Case{"truncated_poly", 1}, Case{"dual_numbers_dga", 1}, Case{"jminus_strict", 1},
                 Case{"massey", 4}})
    EXPECT_EQ(k0_rank(build_dg(corpus(c.name))).rank, c.rank) << c.name;
  auto four = k0_rank(build_ainf(corpus("four_vertex")));
  EXPECT_EQ(four.rank, 4u);
  EXPECT_EQ(four.simple_labels.size(), 4u);
  EXPECT_EQ(k0_rank(build_ainf(corpus("cyclic"))).rank, 3u);
}

TEST(K0, QuotientComparison) {
  auto dg = build_dg(corpus("dual_numbers_dga"));
  auto c = k0_quotient_compare(dg, span_of(dg, {"x", "x2", "y"}));
  EXPECT_TRUE(c.hypothesis_met);
  EXPECT_TRUE(c.equal);
  EXPECT_EQ(c.rank_a, 1u);

  auto two = build_dg(corpus("two_points"));
  auto d = k0_quotient_compare(two, span_of(two, {"e2"}));
  EXPECT_FALSE(d.hypothesis_met);
  EXPECT_EQ(d.rank_a, 2u);
  EXPECT_EQ(d.rank_quotient, 1u);
  EXPECT_FALSE(d.equal);

  EXPECT_THROW(k0_quotient_compare(dg, span_of(dg, {"y"})), DomainError);
}

TEST(Motive, ReportFlags) {
  auto k0 = k0_rank(build_ainf(corpus("four_vertex")));
  auto m = motive_report(k0, true, SmoothnessStatus::Assumed);
  EXPECT_TRUE(m.hypotheses_met);
  EXPECT_EQ(*m.split_rank, 4u);
  EXPECT_NE(m.target.find("U(k)^{+4}"), std::string::npos);
  ASSERT_EQ(m.flags.size(), 1u);
  EXPECT_FALSE(motive_report(k0, true, SmoothnessStatus::Unknown).hypotheses_met);
  EXPECT_FALSE(motive_report(k0, false, SmoothnessStatus::Verified).hypotheses_met);
}

TEST(Hochschild, GradedKronecker) {
  // small complex: vertices in degree 0, arrow-to-parallel-path maps in degree |y| - |x| + 1
  auto w = hochschild_window(build_dg(corpus("kronecker")), -3, 3);
  EXPECT_TRUE(w.d_squared_zero);
  EXPECT_EQ(dims(w), (Dims{0, 0, 1, 1, 1, 0, 1}));
}

TEST(Hochschild, TruncatedPolynomials) {
  // HH of k[x]/(x^n) in characteristic zero: n, then n - 1 in every positive degree
  auto w = hochschild_window(build_dg(corpus("truncated_poly")), 0, 3);
  EXPECT_TRUE(w.d_squared_zero);
  EXPECT_EQ(dims(w), (Dims{3, 2, 2, 2}));
  EXPECT_EQ(dims(hochschild_window(build_dg(corpus("dual_numbers")), 0, 3)), (Dims{2, 1, 1, 1}));
}

TEST(Hochschild, SmallCases) {
  EXPECT_EQ(dims(hochschild_window(build_dg(corpus("point")), -1, 2)), (Dims{0, 1, 0, 0}));
  EXPECT_EQ(dims(hochschild_window(build_dg(corpus("path_a2")), 0, 2)), (Dims{1, 0, 0}));
  EXPECT_EQ(dims(hochschild_window(build_dg(corpus("two_points")), 0, 1)), (Dims{2, 0}));
}

TEST(Hochschild, InvariantUnderQuasiIsomorphism) {
  auto w = hochschild_window(build_dg(corpus("dual_numbers_dga")), -1, 3);
  EXPECT_TRUE(w.d_squared_zero);
  EXPECT_EQ(dims(w), (Dims{0, 2, 1, 1, 1}));
  // quasi-isomorphic to the ground field
  auto j = hochschild_window(build_dg(corpus("jminus_strict")), -2, 2);
  EXPECT_TRUE(j.d_squared_zero);
  EXPECT_EQ(dims(j), (Dims{0, 0, 1, 0, 0}));
}

TEST(Hochschild, RejectsNonConnectiveInput) {
  EXPECT_THROW(hochschild_window(build_dg(corpus("truncation_surjective")), 0, 1), DomainError);
}

TEST(Ext, DegreeZeroInputGivesBBack) {
  for (const char* name : {"truncated_poly", "path_a4", "dual_numbers", "point"}) {
    auto dg = build_dg(corpus(name));
    auto e = ext_window(dg, 0, 2);
    EXPECT_TRUE(e.window.d_squared_zero) << name;
    EXPECT_EQ(e.window.dims.at(0), dg.dim()) << name;
    EXPECT_EQ(e.window.dims.at(1), 0u) << name;
    EXPECT_EQ(e.window.dims.at(2), 0u) << name;
    EXPECT_TRUE(*e.h0_is_b) << name;
    EXPECT_TRUE(*e.h1_vanishes) << name;
  }
}

TEST(Ext, KroneckerHasAClassInDegreeThree) {
  // B = A / bA with bA free on e2 in degree -2: RHom is B in degree 0 and B e2 in degree 3
  auto e = ext_window(build_dg(corpus("kronecker")), -1, 4);
  EXPECT_TRUE(e.window.d_squared_zero);
  EXPECT_EQ(dims(e.window), (Dims{0, 3, 0, 0, 2, 0}));
  EXPECT_EQ(e.b_dim, 3u);
  EXPECT_TRUE(*e.h0_is_b);
}

TEST(Ext, QuasiIsomorphicInputs) {
  auto e = ext_window(build_dg(corpus("dual_numbers_dga")), 0, 2);
  EXPECT_TRUE(e.window.d_squared_zero);
  EXPECT_EQ(dims(e.window), (Dims{2, 0, 0}));
  auto j = ext_window(build_dg(corpus("jminus_strict")), 0, 2);
  EXPECT_EQ(dims(j.window), (Dims{1, 0, 0}));
  auto m = ext_window(build_dg(corpus("massey")), 0, 2);
  EXPECT_TRUE(m.window.d_squared_zero);
  EXPECT_EQ(m.b_dim, 7u);
  EXPECT_TRUE(*m.h0_is_b);
}

TEST(Smoothness, TruncatedPolynomialsAreNotSmooth) {
  auto v = smoothness_probe(build_dg(corpus("dual_numbers")), 6);
  ASSERT_EQ(v.kind, SmoothnessVerdict::Kind::NotSmooth);
  EXPECT_EQ(v.length, 1u);
  ASSERT_EQ(v.resolutions.size(), 1u);
  EXPECT_TRUE(check_isomorphism_certificate(v.resolutions[0]));

  auto t = smoothness_probe(build_dg(corpus("truncated_poly")), 6);
  ASSERT_EQ(t.kind, SmoothnessVerdict::Kind::NotSmooth);
  EXPECT_EQ(t.length, 2u);
  EXPECT_EQ(t.resolutions[0].repeat->first, 0u);
  EXPECT_TRUE(check_isomorphism_certificate(t.resolutions[0]));
}

TEST(Smoothness, HereditaryAlgebrasAreSmooth) {
  struct Case {
    const char* name;
    std::size_t length;
  };
  for (auto c : {Case{"point", 0}, Case{"two_points", 0}, Case{"path_a4", 1}, Case{"kronecker", 1}, Case{"matrix2", 0}}) {
    auto v = smoothness_probe(build_dg(corpus(c.name)), 6);
    EXPECT_EQ(v.kind, SmoothnessVerdict::Kind::Smooth) << c.name << " " << v.witness;
    EXPECT_EQ(v.length, c.length) << c.name;
    for (const auto& r : v.resolutions) EXPECT_EQ(r.syzygies.back().dim(), 0u) << c.name;
  }
}

TEST(Smoothness, DgInputThroughTheMinimalModel) {
  auto d = smoothness_probe(build_dg(corpus("dual_numbers_dga")), 6);
  EXPECT_EQ(d.kind, SmoothnessVerdict::Kind::NotSmooth);
  EXPECT_EQ(d.reduction, "formal minimal model");
  auto j = smoothness_probe(build_dg(corpus("jminus_strict")), 6);
  EXPECT_EQ(j.kind, SmoothnessVerdict::Kind::Smooth);
  auto m = smoothness_probe(build_dg(corpus("massey")), 6);
  EXPECT_EQ(m.kind, SmoothnessVerdict::Kind::Unknown);
}

TEST(Smoothness, StepBudget) {
  auto v = smoothness_probe(build_dg(corpus("truncated_poly")), 1);
  EXPECT_EQ(v.kind, SmoothnessVerdict::Kind::Unknown);
}
