#pragma once

// Derived invariants: K0 rank, motive report, Hochschild and Ext windows, smoothness probe.

#include <ainf/filtration.hpp>
#include <ainf/transfer.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ainf {

// ---- H^0 and K0 ------------------------------------------------------------------------------------

/// H^0 of a DG-algebra as an algebra (degree-0 part of the cohomology algebra).
inline GradedAlgebra h0_algebra(const DgAlgebra& dg) { return degree_zero_part(cohomology_algebra(dg).algebra).algebra; }

inline GradedAlgebra h0_algebra(const AInfAlgebra& a) {
  if (!a.minimal()) {
    for (const auto& [n, t] : a.tables())
      if (n >= 3 && !t.empty()) throw DomainError("H^0 of a non-minimal structure with higher operations is not supported");
    Matrix d(a.field(), a.dim(), a.dim());
    for (const auto& [t, v] : a.table(1))
      for (std::size_t i = 0; i < a.dim(); ++i) d(i, t[0]) = v[i];
    return h0_algebra(DgAlgebra(a.underlying(), std::move(d)));
  }
  return degree_zero_part(a.underlying()).algebra;
}

struct K0Report {
  std::size_t rank = 0;
  std::vector<std::string> simple_labels;  // one primitive idempotent per class, in H^0
  std::size_t h0_dim = 0;
};

inline K0Report k0_of_h0(const GradedAlgebra& b) {
  K0Report r;
  r.h0_dim = b.dim();
  if (b.dim() == 0) return r;
  auto idem = primitive_idempotents(b);
  r.rank = idem.class_count;
  for (auto i : idem.representatives) r.simple_labels.push_back(format_element(b.basis(), idem.primitive[i]));
  return r;
}

inline K0Report k0_rank(const DgAlgebra& dg) { return k0_of_h0(h0_algebra(dg)); }
inline K0Report k0_rank(const AInfAlgebra& a) { return k0_of_h0(h0_algebra(a)); }

/// DG-algebra A/I for a DG-ideal I (kept coordinates as in quotient_algebra).
inline DgAlgebra quotient_dg(const DgAlgebra& dg, const Subspace& ideal) {
  if (!is_dg_ideal(dg, ideal)) throw DomainError("not a DG-ideal");
  GradedAlgebra q = quotient_algebra(dg.algebra(), ideal);
  auto keep = complement_coordinates(ideal);
  Matrix d(dg.field(), keep.size(), keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c) {
    Vec v = ideal.reduce(dg.differential(dg.algebra().element(keep[c])));
    for (std::size_t r = 0; r < keep.size(); ++r) d(r, c) = v[keep[r]];
  }
  return DgAlgebra(std::move(q), std::move(d));
}

struct K0Comparison {
  std::size_t rank_a = 0;
  std::size_t rank_quotient = 0;
  bool hypothesis_met = false;  // H^0(I) -> H^0(A) has nilpotent image
  bool equal = false;
  std::string note;
};

inline K0Comparison k0_quotient_compare(const DgAlgebra& dg, const Subspace& ideal) {
  K0Comparison out;
  out.rank_a = k0_rank(dg).rank;
  out.rank_quotient = k0_rank(quotient_dg(dg, ideal)).rank;
  out.equal = out.rank_a == out.rank_quotient;

  // image of the degree-0 cocycles of I in H^0(A)
  const auto& a = dg.algebra();
  Cohomology coh = cohomology_algebra(dg);
  auto h0 = degree_zero_part(coh.algebra);
  Subspace image(dg.field(), h0.algebra.dim());
  std::vector<Vec> gens;
  for (const auto& v : ideal.basis())
    if (a.degree_of(v) == 0) gens.push_back(v);
  Matrix dres(dg.field(), a.dim(), gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    Vec dv = dg.differential(gens[j]);
    for (std::size_t i = 0; i < a.dim(); ++i) dres(i, j) = dv[i];
  }
  for (const auto& c : kernel_basis(dres)) {
    Vec z = zero_vec(dg.field(), a.dim());
    for (std::size_t j = 0; j < gens.size(); ++j) axpy(z, c[j], gens[j]);
    image.insert(h0.restrict(coh.class_of(z)));
  }
  auto powers = subspace_powers(h0.algebra, image, h0.algebra.dim() + 2);
  out.hypothesis_met = powers.back().is_zero();
  if (!out.hypothesis_met) out.note = "hypothesis not met: H^0(I) is not nilpotent";
  else if (!out.equal) out.note = "ranks differ although H^0(I) is nilpotent";
  return out;
}

// ---- motive -------------------------------------------------------------------------------------------

enum class SmoothnessStatus { Verified, Assumed, Unknown, Fails };

inline std::string to_string(SmoothnessStatus s) {
  switch (s) {
    case SmoothnessStatus::Verified: return "verified";
    case SmoothnessStatus::Assumed: return "assumed";
    case SmoothnessStatus::Unknown: return "unknown";
    case SmoothnessStatus::Fails: return "fails";
  }
  return "unknown";
}

struct MotiveReport {
  std::string target;                    // U(A) = U(S) with S = H^0/rad
  std::optional<std::size_t> split_rank;  // n with U(A) = U(k)^{(+)n}
  SmoothnessStatus smoothness = SmoothnessStatus::Unknown;
  bool connective = false;
  bool proper = true;
  bool hypotheses_met = false;
  std::vector<std::string> flags;
};

inline MotiveReport motive_report(const K0Report& k0, bool connective, SmoothnessStatus smooth) {
  MotiveReport m;
  m.smoothness = smooth;
  m.connective = connective;
  m.split_rank = k0.rank;
  m.target = k0.rank == 1 ? "U(A) = U(S) = U(k)" : "U(A) = U(S) = U(k)^{+" + std::to_string(k0.rank) + "}";
  if (!connective) m.flags.push_back("input is not connective");
  if (smooth == SmoothnessStatus::Assumed) m.flags.push_back("smoothness assumed, not verified");
  if (smooth == SmoothnessStatus::Unknown) m.flags.push_back("smoothness unknown");
  if (smooth == SmoothnessStatus::Fails) m.flags.push_back("input is not smooth");
  m.hypotheses_met = connective && (smooth == SmoothnessStatus::Verified || smooth == SmoothnessStatus::Assumed);
  return m;
}

// ---- relative cochain complexes ----------------------------------------------------------------------

/// Window of a cohomology computed from an explicit cochain complex.
struct CohomologyWindow {
  int lo = 0;
  int hi = 0;
  std::map<int, std::size_t> dims;
  std::map<int, std::size_t> cochain_dims;
  std::map<int, std::vector<std::string>> representatives;
  bool d_squared_zero = true;
};

namespace detail {

/// Vertex data of a basis adapted to orthogonal idempotents: each basis element x has e_s x e_t = x.
struct Peirce {
  std::vector<int> src, tgt;
  std::vector<bool> in_s;
};

inline Peirce peirce_data(const GradedAlgebra& a) {
  Peirce p;
  const std::size_t n = a.dim();
  p.src.assign(n, -1);
  p.tgt.assign(n, -1);
  p.in_s.assign(n, false);
  std::vector<std::size_t> idem;
  for (const auto& e : a.idempotents()) {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < n; ++i)
      if (e == a.element(i)) hit = i;
    if (!hit) throw DomainError("the unit idempotents must be basis vectors");
    p.in_s[*hit] = true;
    idem.push_back(*hit);
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t v = 0; v < idem.size(); ++v) {
      const Vec& l = a.product(idem[v], x);
      const Vec& r = a.product(x, idem[v]);
      if (l == a.element(x)) {
        if (p.src[x] >= 0) throw DomainError("basis is not adapted to the unit idempotents");
        p.src[x] = static_cast<int>(v);
      } else if (!is_zero(l)) {
        throw DomainError("basis is not adapted to the unit idempotents (" + a.basis()[x].name + ")");
      }
      if (r == a.element(x)) {
        if (p.tgt[x] >= 0) throw DomainError("basis is not adapted to the unit idempotents");
        p.tgt[x] = static_cast<int>(v);
      } else if (!is_zero(r)) {
        throw DomainError("basis is not adapted to the unit idempotents (" + a.basis()[x].name + ")");
      }
    }
    if (p.src[x] < 0 || p.tgt[x] < 0) throw DomainError("basis element " + a.basis()[x].name + " is not in a Peirce block");
  }
  return p;
}

/// Cochains F: slots -> outputs, of shifted map degree g, with total degree i = g + offset.
/// With a head, the first slot takes head elements and the rest bar elements.
struct CochainSetup {
  std::vector<BasisElement> basis;
  std::vector<int> src, tgt;  // -1: unconstrained
  std::vector<bool> bar, head, out;
  bool has_head = false;
  int offset = 0;
  OperationTables b;  // shifted structure of the ambient algebra
  std::function<long(int)> max_bar_slots;  // negative: no cochains
};

using CochainKey = std::pair<Tuple, std::uint32_t>;

inline long sdeg(const CochainSetup& s, std::uint32_t x) { return static_cast<long>(s.basis[x].degree) - 1; }

inline std::vector<CochainKey> cochain_basis(const CochainSetup& s, int i) {
  std::vector<CochainKey> out;
  const std::size_t n = s.basis.size();
  const long maxlen = s.max_bar_slots(i);
  if (maxlen < 0) return out;
  Tuple key;
  auto emit = [&](long insum) {
    for (std::uint32_t y = 0; y < n; ++y) {
      if (!s.out[y]) continue;
      if (sdeg(s, y) - insum + s.offset != i) continue;
      if (key.empty()) {
        if (s.src[y] != s.tgt[y]) continue;
      } else {
        if (s.tgt[y] != s.tgt[key.back()]) continue;
        if (!s.has_head && s.src[y] != s.src[key.front()]) continue;
      }
      out.push_back({key, y});
    }
  };
  auto rec = [&](auto&& self, long insum, long bars) -> void {
    if (!s.has_head || !key.empty()) emit(insum);
    if (bars >= maxlen && (!s.has_head || !key.empty())) return;
    for (std::uint32_t x = 0; x < n; ++x) {
      bool first = key.empty();
      if (first && s.has_head ? !s.head[x] : !s.bar[x]) continue;
      if (!first && s.tgt[key.back()] != s.src[x]) continue;
      key.push_back(x);
      self(self, insum + sdeg(s, x), bars + ((first && s.has_head) ? 0 : 1));
      key.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

/// [b, F] for F a single cochain basis element, restricted to admissible keys.
inline OperationTable bracket_with_b(const CochainSetup& s, const CochainKey& fk, Field f) {
  const std::size_t dim = s.basis.size();
  OperationTable F;
  F[fk.first] = unit_vec(f, dim, fk.second);
  long g = sdeg(s, fk.second);
  for (auto x : fk.first) g -= sdeg(s, x);
  auto fidx = index_by_output(F, dim);
  OperationTable acc;
  for (const auto& [k, table] : s.b)
    for (int r = 0; r < k; ++r)
      compose_into(acc, table, static_cast<std::size_t>(r), F, fidx, Scalar::one(f), [&](const Tuple& key) {
        long e = 0;
        for (int j = 0; j < r; ++j) e += sdeg(s, key[static_cast<std::size_t>(j)]);
        return g * e;
      });
  for (const auto& [k, table] : s.b) {
    auto idx = index_by_output(table, dim);
    for (std::size_t r = 0; r < fk.first.size(); ++r)
      compose_into(acc, F, r, table, idx, sign_scalar(f, g + 1), [&](const Tuple& key) {
        long e = 0;
        for (std::size_t j = 0; j < r; ++j) e += sdeg(s, key[j]);
        return e;
      });
  }
  drop_zeros(acc);
  return acc;
}

inline bool admissible(const CochainSetup& s, const Tuple& key) {
  for (std::size_t j = 0; j < key.size(); ++j) {
    bool ok = (j == 0 && s.has_head) ? s.head[key[j]] : s.bar[key[j]];
    if (!ok) return false;
  }
  return !(s.has_head && key.empty());
}

/// Matrix of delta: C^i -> C^{i+1}.
inline Matrix cochain_differential(const CochainSetup& s, const std::vector<CochainKey>& from, const std::vector<CochainKey>& to,
                                   Field f) {
  std::map<CochainKey, std::size_t> row;
  for (std::size_t k = 0; k < to.size(); ++k) row[to[k]] = k;
  Matrix m(f, to.size(), from.size());
  for (std::size_t c = 0; c < from.size(); ++c) {
    for (const auto& [key, v] : bracket_with_b(s, from[c], f)) {
      for (std::uint32_t y = 0; y < v.size(); ++y) {
        if (v[y].is_zero()) continue;
        if (!admissible(s, key) || !s.out[y]) continue;  // outside the normalized relative complex
        auto it = row.find({key, y});
        if (it == row.end()) throw std::logic_error("cochain differential leaves the enumerated cochain space");
        m(it->second, c) += v[y];
      }
    }
  }
  return m;
}

inline std::string describe_cochain(const CochainSetup& s, const std::vector<CochainKey>& keys, const Vec& v) {
  std::string out;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (v[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += v[k].to_string() + "*[";
    for (std::size_t j = 0; j < keys[k].first.size(); ++j) out += (j ? "|" : "") + s.basis[keys[k].first[j]].name;
    out += " -> " + s.basis[keys[k].second].name + "]";
  }
  return out.empty() ? "0" : out;
}

inline CohomologyWindow cochain_window(const CochainSetup& s, Field f, int lo, int hi) {
  if (lo > hi) throw DomainError("empty window");
  CohomologyWindow w;
  w.lo = lo;
  w.hi = hi;
  std::map<int, std::vector<CochainKey>> bases;
  for (int i = lo - 1; i <= hi + 1; ++i) bases[i] = cochain_basis(s, i);
  std::map<int, Matrix> delta;
  for (int i = lo - 1; i <= hi; ++i) delta[i] = cochain_differential(s, bases[i], bases[i + 1], f);
  for (int i = lo; i <= hi; ++i) {
    if (!(delta[i] * delta[i - 1]).is_zero()) w.d_squared_zero = false;
    const auto& keys = bases[i];
    w.cochain_dims[i] = keys.size();
    Subspace image(f, keys.size());
    for (std::size_t c = 0; c < delta[i - 1].cols(); ++c) image.insert(delta[i - 1].col(c));
    std::size_t count = 0;
    for (const auto& z : kernel_basis(delta[i])) {
      if (!image.insert(z)) continue;
      ++count;
      if (w.representatives[i].size() < 8) w.representatives[i].push_back(describe_cochain(s, keys, z));
    }
    w.dims[i] = count;
  }
  return w;
}

inline void require_split_idempotents(const DgAlgebra& dg) {
  for (const auto& e : dg.algebra().idempotents())
    if (!is_zero(dg.differential(e))) throw DomainError("unit idempotents must be cocycles");
}

}  // namespace detail

/// HH^i(A) for lo <= i <= hi from the normalized cochain complex relative to the span of the unit idempotents.
/// Tensor length n contributes to degree i only when n <= i + n0, so each degree is a finite computation.
inline CohomologyWindow hochschild_window(const DgAlgebra& dg, int lo, int hi) {
  const auto& a = dg.algebra();
  if (!a.connective()) throw DomainError("window finiteness not guaranteed: input is not connective");
  detail::require_split_idempotents(dg);
  auto p = detail::peirce_data(a);
  detail::CochainSetup s;
  s.basis = a.basis();
  s.src = p.src;
  s.tgt = p.tgt;
  s.bar.resize(a.dim());
  for (std::size_t x = 0; x < a.dim(); ++x) s.bar[x] = !p.in_s[x];
  s.head.assign(a.dim(), false);
  s.out.assign(a.dim(), true);
  s.offset = 1;
  s.b = to_shifted(a.basis(), AInfAlgebra::from_dg(dg).tables());
  const int n0 = a.n0();
  s.max_bar_slots = [n0](int i) -> long { return i + n0; };
  return detail::cochain_window(s, a.field(), lo, hi);
}

/// B = H^0(A) = A^0 / d(A^{-1}) on a basis of degree-0 basis elements of A, for connective A.
struct DegreeZeroQuotient {
  GradedAlgebra algebra;
  std::vector<std::size_t> lift;  // A-index of each basis element of B
  CoordinateSystem coords;        // family: lifts, then boundaries in degree 0
  std::vector<std::size_t> degree_zero;

  /// Image in B of an element of A (components of nonzero degree are dropped).
  [[nodiscard]] Vec project(const DgAlgebra& dg, const Vec& v) const {
    Vec w = zero_vec(dg.field(), v.size());
    for (auto i : degree_zero) w[i] = v[i];
    Vec c = coords.coordinates_in_span(w);
    c.resize(lift.size());
    return c;
  }
};

inline DegreeZeroQuotient degree_zero_quotient(const DgAlgebra& dg) {
  const auto& a = dg.algebra();
  if (!a.connective()) throw DomainError("connective input required");
  detail::require_split_idempotents(dg);
  const Field f = dg.field();
  DegreeZeroQuotient q;
  q.degree_zero = a.indices_in_degree(0);
  Subspace bnd(f, a.dim());
  for (auto j : a.indices_in_degree(-1)) bnd.insert(dg.differential(a.element(j)));
  Subspace seen = bnd;
  for (auto i : q.degree_zero)
    if (seen.insert(a.element(i))) q.lift.push_back(i);
  std::vector<Vec> family;
  for (auto i : q.lift) family.push_back(a.element(i));
  for (const auto& v : bnd.basis()) family.push_back(v);
  q.coords = CoordinateSystem(f, family, a.dim());
  std::vector<BasisElement> basis;
  for (auto i : q.lift) basis.push_back(a.basis()[i]);
  std::vector<Vec> products;
  for (auto i : q.lift)
    for (auto j : q.lift) products.push_back(q.project(dg, a.product(i, j)));
  std::vector<Vec> idem;
  for (const auto& e : a.idempotents()) {
    Vec c = q.project(dg, e);
    if (!is_zero(c)) idem.push_back(std::move(c));
  }
  q.algebra = GradedAlgebra(f, std::move(basis), std::move(products), std::move(idem));
  return q;
}

struct ExtWindow {
  CohomologyWindow window;
  std::size_t b_dim = 0;
  std::optional<bool> h0_is_b;      // when 0 is in the window
  std::optional<bool> h1_vanishes;  // when 1 is in the window
};

/// H^i(RHom_A(B, B)) for B = H^0(A) as a module through A -> H^0(A), from the normalized bar
/// resolution of B relative to the idempotents. A cochain of degree i uses at most i bar slots.
inline ExtWindow ext_window(const DgAlgebra& dg, int lo, int hi) {
  const auto& a = dg.algebra();
  const Field f = dg.field();
  auto q = degree_zero_quotient(dg);
  auto p = detail::peirce_data(a);
  const std::size_t na = a.dim(), nb = q.lift.size();

  // ambient algebra A (+) B with B * A -> B through the projection, A * B = 0, B * B = 0
  detail::CochainSetup s;
  s.basis = a.basis();
  for (auto i : q.lift) {
    BasisElement e = a.basis()[i];
    e.name = "B:" + e.name;
    s.basis.push_back(e);
  }
  const std::size_t n = na + nb;
  s.src = p.src;
  s.tgt = p.tgt;
  for (auto i : q.lift) {
    s.src.push_back(-1);
    s.tgt.push_back(p.tgt[i]);
  }
  s.bar.assign(n, false);
  s.head.assign(n, false);
  s.out.assign(n, false);
  for (std::size_t x = 0; x < na; ++x) s.bar[x] = !p.in_s[x];
  for (std::size_t k = 0; k < nb; ++k) s.head[na + k] = s.out[na + k] = true;
  s.has_head = true;
  s.offset = 0;

  OperationTables m = AInfAlgebra::from_dg(dg).tables();
  OperationTables widened;
  for (const auto& [ar, table] : m)
    for (const auto& [t, v] : table) {
      Vec w = zero_vec(f, n);
      for (std::size_t i = 0; i < na; ++i) w[i] = v[i];
      widened[ar][t] = std::move(w);
    }
  for (std::size_t k = 0; k < nb; ++k)
    for (auto x : q.degree_zero) {
      Vec c = q.project(dg, a.product(q.lift[k], x));
      if (is_zero(c)) continue;
      Vec w = zero_vec(f, n);
      for (std::size_t j = 0; j < nb; ++j) w[na + j] = c[j];
      widened[2][{static_cast<std::uint32_t>(na + k), static_cast<std::uint32_t>(x)}] = std::move(w);
    }
  s.b = to_shifted(s.basis, widened);
  s.max_bar_slots = [](int i) -> long { return i; };

  ExtWindow out;
  out.b_dim = nb;
  out.window = detail::cochain_window(s, f, lo, hi);
  if (lo <= 0 && 0 <= hi) {
    // left multiplications L_b are degree-0 cocycles; they give all of H^0 exactly when the dimensions agree
    auto keys = detail::cochain_basis(s, 0);
    std::map<detail::CochainKey, std::size_t> pos;
    for (std::size_t k = 0; k < keys.size(); ++k) pos[keys[k]] = k;
    auto delta = detail::cochain_differential(s, keys, detail::cochain_basis(s, 1), f);
    Subspace ls(f, keys.size());
    bool cocycles = true;
    for (std::size_t bi = 0; bi < nb; ++bi) {
      Vec lb = zero_vec(f, keys.size());
      for (std::size_t beta = 0; beta < nb; ++beta) {
        const Vec& prod = q.algebra.product(bi, beta);
        for (std::size_t y = 0; y < nb; ++y) {
          if (prod[y].is_zero()) continue;
          auto it = pos.find({Tuple{static_cast<std::uint32_t>(na + beta)}, static_cast<std::uint32_t>(na + y)});
          if (it == pos.end()) throw std::logic_error("left multiplication is not a cochain");
          lb[it->second] += prod[y];
        }
      }
      cocycles = cocycles && is_zero(delta * lb);
      ls.insert(lb);
    }
    out.h0_is_b = cocycles && ls.dim() == nb && out.window.dims.at(0) == nb;
  }
  if (lo <= 1 && 1 <= hi) out.h1_vanishes = out.window.dims.at(1) == 0;
  return out;
}

// ---- smoothness ------------------------------------------------------------------------------------------

/// Right module over a graded algebra with zero differential, on a basis adapted to vertices and degrees.
struct GradedModule {
  std::vector<int> vertex;       // m * e_vertex = m
  std::vector<int> degree;
  std::vector<Matrix> action;    // action[x](i, j): coefficient of basis j in (basis i) * x

  [[nodiscard]] std::size_t dim() const { return vertex.size(); }
  [[nodiscard]] std::map<std::pair<int, int>, std::size_t> dimension_vector() const {
    std::map<std::pair<int, int>, std::size_t> d;
    for (std::size_t i = 0; i < dim(); ++i) ++d[{vertex[i], degree[i]}];
    return d;
  }
};

struct ResolutionStep {
  std::vector<std::pair<int, int>> generators;  // (vertex, degree) of the projective summands e_v A
  std::size_t syzygy_dim = 0;
};

struct SimpleResolution {
  int vertex = 0;
  std::vector<ResolutionStep> steps;
  std::vector<GradedModule> syzygies;  // syzygies[0] is the simple module
  std::optional<std::pair<std::size_t, std::size_t>> repeat;  // (j, k): syzygy k isomorphic to j up to shift
  int repeat_shift = 0;
  Matrix isomorphism;  // from syzygy j (shifted) to syzygy k
};

struct SmoothnessVerdict {
  enum class Kind { Smooth, NotSmooth, Unknown } kind = Kind::Unknown;
  std::size_t length = 0;  // Smooth: longest resolution; NotSmooth: step at which the repeat was found
  std::string witness;
  std::string reduction;  // how the input was reduced to a graded algebra with zero differential
  GradedAlgebra algebra;  // the algebra whose simples were resolved
  std::vector<SimpleResolution> resolutions;
};

inline std::string to_string(SmoothnessVerdict::Kind k) {
  switch (k) {
    case SmoothnessVerdict::Kind::Smooth: return "Smooth";
    case SmoothnessVerdict::Kind::NotSmooth: return "NotSmooth";
    case SmoothnessVerdict::Kind::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace detail {

inline GradedModule simple_module(const GradedAlgebra& a, const Peirce& p, int v) {
  GradedModule m;
  m.vertex = {v};
  m.degree = {0};
  for (std::size_t x = 0; x < a.dim(); ++x) {
    Matrix act(a.field(), 1, 1);
    if (p.in_s[x] && p.src[x] == v) act(0, 0) = Scalar::one(a.field());
    m.action.push_back(std::move(act));
  }
  return m;
}

/// Projective cover P -> M and its kernel, for connective A with radical J.
/// Generators: a basis of M / M J chosen among basis vectors, block by block.
inline std::pair<ResolutionStep, GradedModule> syzygy(const GradedAlgebra& a, const Peirce& p, const Subspace& J,
                                                      const GradedModule& m) {
  const Field f = a.field();
  const std::size_t dm = m.dim(), n = a.dim();
  auto row_times = [&](const Vec& row, std::size_t x) {
    Vec out = zero_vec(f, dm);
    for (std::size_t i = 0; i < dm; ++i)
      if (!row[i].is_zero())
        for (std::size_t j = 0; j < dm; ++j) out[j] += row[i] * m.action[x](i, j);
    return out;
  };
  Subspace mj(f, dm);
  for (std::size_t i = 0; i < dm; ++i)
    for (const auto& jv : J.basis()) {
      Vec r = zero_vec(f, dm);
      for (std::size_t x = 0; x < n; ++x)
        if (!jv[x].is_zero()) axpy(r, jv[x], row_times(unit_vec(f, dm, i), x));
      mj.insert(r);
    }
  std::vector<std::size_t> gens;
  Subspace seen = mj;
  for (std::size_t i = 0; i < dm; ++i)
    if (seen.insert(unit_vec(f, dm, i))) gens.push_back(i);

  // P = (+)_g e_{v(g)} A, basis: (g, x) with src(x) = v(g)
  std::vector<std::pair<std::size_t, std::size_t>> pbasis;
  ResolutionStep step;
  for (auto g : gens) {
    step.generators.push_back({m.vertex[g], m.degree[g]});
    for (std::size_t x = 0; x < n; ++x)
      if (p.src[x] == m.vertex[g]) pbasis.push_back({g, x});
  }
  Matrix map(f, dm, pbasis.size());
  for (std::size_t c = 0; c < pbasis.size(); ++c) {
    Vec img = row_times(unit_vec(f, dm, pbasis[c].first), pbasis[c].second);
    for (std::size_t i = 0; i < dm; ++i) map(i, c) = img[i];
  }
  if (rank(map) != dm) throw std::logic_error("projective cover is not surjective");

  // kernel block by block (vertex, degree) so that its basis stays adapted
  GradedModule k;
  std::vector<Vec> kbasis;
  std::map<std::pair<int, int>, std::vector<std::size_t>> blocks;
  for (std::size_t c = 0; c < pbasis.size(); ++c) {
    auto [g, x] = pbasis[c];
    blocks[{p.tgt[x], m.degree[g] + a.degree(x)}].push_back(c);
  }
  for (const auto& [blk, cols] : blocks) {
    Matrix sub(f, dm, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < dm; ++i) sub(i, j) = map(i, cols[j]);
    for (const auto& z : kernel_basis(sub)) {
      Vec full = zero_vec(f, pbasis.size());
      for (std::size_t j = 0; j < cols.size(); ++j) full[cols[j]] = z[j];
      kbasis.push_back(std::move(full));
      k.vertex.push_back(blk.first);
      k.degree.push_back(blk.second);
    }
  }
  step.syzygy_dim = kbasis.size();
  if (kbasis.empty()) {
    k.action.assign(n, Matrix(f, 0, 0));
    return {step, k};
  }
  // action on P: (g, x) * y = (g, x y)
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> ppos;
  for (std::size_t c = 0; c < pbasis.size(); ++c) ppos[pbasis[c]] = c;
  CoordinateSystem kc(f, kbasis, pbasis.size());
  for (std::size_t y = 0; y < n; ++y) {
    Matrix act(f, kbasis.size(), kbasis.size());
    for (std::size_t r = 0; r < kbasis.size(); ++r) {
      Vec img = zero_vec(f, pbasis.size());
      for (std::size_t c = 0; c < pbasis.size(); ++c) {
        if (kbasis[r][c].is_zero()) continue;
        const Vec& prod = a.product(pbasis[c].second, y);
        for (std::size_t z = 0; z < n; ++z)
          if (!prod[z].is_zero()) img[ppos.at({pbasis[c].first, z})] += kbasis[r][c] * prod[z];
      }
      Vec coords = kc.coordinates_in_span(img);
      for (std::size_t j = 0; j < kbasis.size(); ++j) act(r, j) = coords[j];
    }
    k.action.push_back(std::move(act));
  }
  return {step, k};
}

/// An invertible X with X_{block} mapping m1 (degrees shifted by `shift`) to m2 and X act1(x) = act2(x) X.
inline std::optional<Matrix> module_isomorphism(const GradedModule& m1, const GradedModule& m2, int shift, Field f) {
  if (m1.dim() != m2.dim() || m1.dim() == 0) return std::nullopt;
  auto d1 = m1.dimension_vector();
  std::map<std::pair<int, int>, std::size_t> d1s;
  for (const auto& [k, v] : d1) d1s[{k.first, k.second + shift}] = v;
  if (d1s != m2.dimension_vector()) return std::nullopt;
  const std::size_t n = m1.dim();
  // unknowns X(i, j) for rows i of m1 and columns j of m2 in matching blocks; row convention: row_i(m1) -> sum X(i, j) row_j(m2)
  std::vector<std::pair<std::size_t, std::size_t>> vars;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> var_of;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m1.vertex[i] == m2.vertex[j] && m1.degree[i] + shift == m2.degree[j]) {
        var_of[{i, j}] = vars.size();
        vars.push_back({i, j});
      }
  // (act1(x) X)(i, j) = (X act2(x))(i, j)
  std::vector<Vec> eqs;
  for (std::size_t x = 0; x < m1.action.size(); ++x)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vec e = zero_vec(f, vars.size());
        bool any = false;
        for (std::size_t k = 0; k < n; ++k) {
          if (auto it = var_of.find({k, j}); it != var_of.end() && !m1.action[x](i, k).is_zero()) {
            e[it->second] += m1.action[x](i, k);
            any = true;
          }
          if (auto it = var_of.find({i, k}); it != var_of.end() && !m2.action[x](k, j).is_zero()) {
            e[it->second] -= m2.action[x](k, j);
            any = true;
          }
        }
        if (any) eqs.push_back(std::move(e));
      }
  std::vector<Vec> sols = eqs.empty() ? kernel_basis(Matrix(f, 0, vars.size())) : kernel_basis(Matrix::from_rows(f, eqs, vars.size()));
  if (sols.empty()) return std::nullopt;
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coef(-50, 50);
  for (int attempt = 0; attempt < 24; ++attempt) {
    Vec c = zero_vec(f, vars.size());
    for (const auto& s : sols) axpy(c, Scalar(f, static_cast<long>(attempt == 0 ? 1 : coef(rng))), s);
    Matrix X(f, n, n);
    for (std::size_t v = 0; v < vars.size(); ++v) X(vars[v].first, vars[v].second) = c[v];
    if (rank(X) == n) return X;
  }
  return std::nullopt;
}

}  // namespace detail

/// Replays a NotSmooth certificate: X is invertible and intertwines the two actions.
inline bool check_isomorphism_certificate(const SimpleResolution& r) {
  if (!r.repeat) return false;
  const auto& m1 = r.syzygies[r.repeat->first];
  const auto& m2 = r.syzygies[r.repeat->second];
  const Matrix& X = r.isomorphism;
  if (X.rows() != m1.dim() || X.cols() != m2.dim() || rank(X) != m1.dim()) return false;
  for (std::size_t x = 0; x < m1.action.size(); ++x)
    if (!(m1.action[x] * X == X * m2.action[x])) return false;
  return true;
}

/// Replays a resolution: every syzygy is a module, and each step is exact by dimension count
/// (dim P_k = dim syzygy_k + dim syzygy_{k+1}); a Smooth resolution ends in zero.
inline bool check_resolution_certificate(const GradedAlgebra& a, const SimpleResolution& r) {
  auto p = detail::peirce_data(a);
  for (const auto& m : r.syzygies) {
    if (m.action.size() != a.dim()) return false;
    Matrix unit = Matrix(a.field(), m.dim(), m.dim());
    for (std::size_t x = 0; x < a.dim(); ++x)
      if (p.in_s[x]) unit = unit + m.action[x];
    if (!(unit == Matrix::identity(a.field(), m.dim()))) return false;
    for (std::size_t x = 0; x < a.dim(); ++x)
      for (std::size_t y = 0; y < a.dim(); ++y) {
        Matrix xy(a.field(), m.dim(), m.dim());
        const Vec& prod = a.product(x, y);
        for (std::size_t z = 0; z < a.dim(); ++z)
          if (!prod[z].is_zero())
            for (std::size_t i = 0; i < m.dim(); ++i)
              for (std::size_t j = 0; j < m.dim(); ++j) xy(i, j) += prod[z] * m.action[z](i, j);
        if (!(m.action[x] * m.action[y] == xy)) return false;
      }
  }
  if (r.steps.size() + 1 != r.syzygies.size()) return false;
  for (std::size_t k = 0; k < r.steps.size(); ++k) {
    std::size_t projective = 0;
    for (auto [vert, deg] : r.steps[k].generators)
      for (std::size_t x = 0; x < a.dim(); ++x) projective += p.src[x] == vert;
    if (projective != r.syzygies[k].dim() + r.syzygies[k + 1].dim()) return false;
    if (r.steps[k].syzygy_dim != r.syzygies[k + 1].dim()) return false;
  }
  return r.repeat ? check_isomorphism_certificate(r) : r.syzygies.back().dim() == 0;
}

/// Minimal graded projective resolutions of the simple modules of a connective graded algebra with zero
/// differential. Smooth when all terminate within max_steps; NotSmooth when a syzygy repeats up to shift.
inline SmoothnessVerdict resolve_simples(const GradedAlgebra& input, std::size_t max_steps) {
  if (!input.connective()) throw DomainError("connective input required");
  auto basic = [](const GradedAlgebra& x) {
    auto idem = primitive_idempotents(x);
    return idem.class_count == x.idempotents().size() && idem.primitive.size() == x.idempotents().size();
  };
  // Morita reduction only when the given idempotents are not already a basic splitting
  const GradedAlgebra a = basic(input) ? input : basic_reduction(input).algebra;
  if (!basic(a)) throw DomainError("could not reduce to a basic algebra");
  auto p = detail::peirce_data(a);
  auto rad = graded_radical(a);
  SmoothnessVerdict v;
  v.algebra = a;
  v.kind = SmoothnessVerdict::Kind::Smooth;
  for (int vert = 0; vert < static_cast<int>(a.idempotents().size()); ++vert) {
    SimpleResolution r;
    r.vertex = vert;
    r.syzygies.push_back(detail::simple_module(a, p, vert));
    bool done = false;
    for (std::size_t step = 0; step < max_steps && !done; ++step) {
      auto [st, k] = detail::syzygy(a, p, rad.J, r.syzygies.back());
      r.steps.push_back(st);
      r.syzygies.push_back(std::move(k));
      const auto& last = r.syzygies.back();
      if (last.dim() == 0) {
        done = true;
        break;
      }
      for (std::size_t j = 0; j + 1 < r.syzygies.size(); ++j) {
        const auto& prev = r.syzygies[j];
        int shift = *std::min_element(last.degree.begin(), last.degree.end()) -
                    *std::min_element(prev.degree.begin(), prev.degree.end());
        if (auto X = detail::module_isomorphism(prev, last, shift, a.field())) {
          r.repeat = {j, r.syzygies.size() - 1};
          r.repeat_shift = shift;
          r.isomorphism = *X;
          break;
        }
      }
      if (r.repeat) break;
    }
    if (r.repeat) {
      v.kind = SmoothnessVerdict::Kind::NotSmooth;
      v.length = r.repeat->second;
      v.witness = "simple " + std::to_string(vert + 1) + ": syzygy " + std::to_string(r.repeat->second) + " is isomorphic to syzygy " +
                  std::to_string(r.repeat->first) + (r.repeat_shift ? " shifted by " + std::to_string(r.repeat_shift) : "");
      v.resolutions.push_back(std::move(r));
      return v;
    }
    if (!done) {
      if (v.kind == SmoothnessVerdict::Kind::Smooth) v.kind = SmoothnessVerdict::Kind::Unknown;
    } else {
      v.length = std::max(v.length, r.steps.size() - 1);
    }
    v.resolutions.push_back(std::move(r));
  }
  if (v.kind == SmoothnessVerdict::Kind::Unknown) v.witness = "resolution did not terminate within " + std::to_string(max_steps) + " steps";
  return v;
}

/// Smoothness semidecision. Degree-0 or zero-differential input is resolved directly; otherwise the
/// minimal model is used when it is formal (no higher operations up to the arity cap).
inline SmoothnessVerdict smoothness_probe(const DgAlgebra& dg, std::size_t max_steps) {
  const auto& a = dg.algebra();
  if (!a.connective()) throw DomainError("connective input required");
  if (dg.has_zero_differential()) {
    auto v = resolve_simples(a, max_steps);
    v.reduction = "zero differential";
    return v;
  }
  auto r = build_retraction(dg);
  auto model = homotopy_transfer(dg, r, default_transfer_cap(dg));
  bool formal = true;
  for (const auto& [n, t] : model.tables()) formal = formal && (n <= 2 || t.empty());
  if (formal) {
    auto h = model.underlying();
    auto v = resolve_simples(h, max_steps);
    v.reduction = "formal minimal model";
    return v;
  }
  SmoothnessVerdict v;
  v.reduction = "minimal model has higher operations";
  v.witness = "no resolution strategy for non-formal input";
  return v;
}

inline SmoothnessStatus status_of(const SmoothnessVerdict& v) {
  switch (v.kind) {
    case SmoothnessVerdict::Kind::Smooth: return SmoothnessStatus::Verified;
    case SmoothnessVerdict::Kind::NotSmooth: return SmoothnessStatus::Fails;
    default: return SmoothnessStatus::Unknown;
  }
}

}  // namespace ainf
