#pragma once

// Retraction data A -> H*(A) and homotopy transfer of the DG structure to a minimal A-infinity structure.
//
// Conventions: i p - 1 = d h + h d, with side conditions h i = 0, p h = 0, h h = 0.
// In the bar picture (F = s f s^{-1} for f in {p, i, h, d}), the transferred structure is
//   Phi_1 = I,  R_n = sum_{a+b=n} b_2(Phi_a (x) Phi_b),  Phi_n = H R_n,  b'_n = P R_n,
// which makes Phi an A-infinity quasi-isomorphism (T(sH), b') -> (T(sA), b).

#include <ainf/ainf.hpp>

namespace ainf {

struct Retraction {
  Matrix p;                          // dim H x dim A
  Matrix i;                          // dim A x dim H; columns are the cocycle representatives
  Matrix h;                          // dim A x dim A, degree -1
  std::vector<BasisElement> basis;   // of H
  std::vector<Vec> idempotents;      // unit idempotents of H
};

/// Standard retraction. reps, when given, are the cocycle representatives to use (one per class);
/// otherwise those of the cohomology computation. Boundaries are taken as independent columns
/// d(e_j), and h sends d(e_j) to -e_j.
inline Retraction build_retraction(const DgAlgebra& dg, std::vector<Vec> reps = {}) {
  const Field f = dg.field();
  const auto& a = dg.algebra();
  const std::size_t n = a.dim();
  ComplexCohomology cc = dg.complex_cohomology();
  if (reps.empty()) {
    reps = cc.representatives();
  } else {
    if (reps.size() != cc.total_dimension())
      throw DomainError("retraction lists " + std::to_string(reps.size()) + " representatives, cohomology has dimension " +
                        std::to_string(cc.total_dimension()));
    for (const auto& r : reps) {
      if (!is_zero(dg.differential(r))) throw DomainError("retraction representative " + format_element(a.basis(), r) + " is not a cocycle");
      if (!a.degree_of(r)) throw DomainError("retraction representative " + format_element(a.basis(), r) + " is not homogeneous");
    }
  }
  const std::size_t m = reps.size();
  std::vector<Vec> boundary, chain;
  Subspace seen(f, n);
  for (const auto& r : reps)
    if (!seen.insert(r)) throw DomainError("retraction representatives are dependent");
  for (std::size_t j = 0; j < n; ++j) {
    Vec dj = dg.d().col(j);
    if (is_zero(dj) || !seen.insert(dj)) continue;
    boundary.push_back(dj);
    chain.push_back(a.element(j));
  }
  if (m + 2 * boundary.size() != n) throw DomainError("retraction representatives do not span the cohomology");
  std::vector<Vec> family = reps;
  family.insert(family.end(), boundary.begin(), boundary.end());
  family.insert(family.end(), chain.begin(), chain.end());
  CoordinateSystem coords(f, family, n);

  Retraction r{Matrix(f, m, n), Matrix::from_columns(f, reps, n), Matrix(f, n, n), {}, {}};
  for (std::size_t j = 0; j < n; ++j) {
    Vec c = coords.coordinates_in_span(a.element(j));
    for (std::size_t k = 0; k < m; ++k) r.p(k, j) = c[k];
    for (std::size_t k = 0; k < boundary.size(); ++k)
      if (!c[m + k].is_zero())
        for (std::size_t i = 0; i < n; ++i) r.h(i, j) -= c[m + k] * chain[k][i];
  }
  for (std::size_t k = 0; k < m; ++k)
    r.basis.push_back(detail::name_vector(a, reps[k], *a.degree_of(reps[k]), r.basis, "h" + std::to_string(k)));
  for (const auto& e : detail::closed_idempotents(dg)) {
    Vec c = r.p * e;
    if (!is_zero(c)) r.idempotents.push_back(std::move(c));
  }
  return r;
}

/// The retraction named in a presentation, or the standard one.
inline Retraction retraction_for(const DgAlgebra& dg, const Presentation& p) {
  std::vector<Vec> reps;
  for (const auto& t : p.retraction) reps.push_back(p.vector(t));
  return build_retraction(dg, std::move(reps));
}

inline Diagnostics verify_retraction(const DgAlgebra& dg, const Retraction& r) {
  Diagnostics diag;
  const Field f = dg.field();
  const std::size_t n = dg.dim(), m = r.basis.size();
  const Matrix& d = dg.d();
  if (!(r.p * r.i == Matrix::identity(f, m))) diag.add("p i is not the identity");
  if (!(d * r.i).is_zero()) diag.add("i does not land in cocycles");
  if (!(r.p * d).is_zero()) diag.add("p does not vanish on boundaries");
  if (!(r.i * r.p - Matrix::identity(f, n) == d * r.h + r.h * d)) diag.add("i p - 1 differs from d h + h d");
  if (!(r.h * r.i).is_zero()) diag.add("h i is not zero");
  if (!(r.p * r.h).is_zero()) diag.add("p h is not zero");
  if (!(r.h * r.h).is_zero()) diag.add("h h is not zero");
  const auto& a = dg.algebra();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (!r.h(k, j).is_zero() && a.degree(k) != a.degree(j) - 1) {
        diag.add("h does not have degree -1 on " + a.basis()[j].name);
        break;
      }
  return diag;
}

struct TransferData {
  AInfAlgebra model;              // minimal structure on H
  OperationTables shifted_model;  // b' on sH
  OperationTables morphism;       // Phi_n: keys are H tuples, values in A
};

inline int default_transfer_cap(const DgAlgebra& dg) {
  return dg.algebra().connective() ? dg.algebra().n0() + 3 : 6;
}

inline TransferData transfer_with_morphism(const DgAlgebra& dg, const Retraction& r, int cap) {
  if (cap < 2) throw DomainError("arity cap must be at least 2");
  const Field f = dg.field();
  const auto& abasis = dg.algebra().basis();
  const std::size_t n = dg.dim(), m = r.basis.size();
  OperationTables b = to_shifted(abasis, AInfAlgebra::from_dg(dg).tables());
  const OperationTable b2 = b.count(2) ? b.at(2) : OperationTable{};

  TransferData out;
  for (std::uint32_t k = 0; k < m; ++k) out.morphism[1][{k}] = r.i.col(k);
  for (int N = 2; N <= cap; ++N) {
    OperationTable acc;
    for (int left = 1; left < N; ++left) {
      auto lt = out.morphism.find(left), rt = out.morphism.find(N - left);
      if (lt == out.morphism.end() || rt == out.morphism.end()) continue;
      OperationTable half;
      detail::compose_into(half, b2, 1, rt->second, detail::index_by_output(rt->second, n), Scalar::one(f),
                           [](const Tuple&) { return 0L; });
      detail::compose_into(acc, half, 0, lt->second, detail::index_by_output(lt->second, n), Scalar::one(f),
                           [](const Tuple&) { return 0L; });
    }
    detail::drop_zeros(acc);
    for (const auto& [t, v] : acc) {
      Vec phi = r.h * v, bp = r.p * v;
      if (!is_zero(phi)) out.morphism[N][t] = std::move(phi);
      if (!is_zero(bp)) out.shifted_model[N][t] = std::move(bp);
    }
  }
  out.model = AInfAlgebra(f, r.basis, r.idempotents, from_shifted(r.basis, out.shifted_model));
  return out;
}

inline AInfAlgebra homotopy_transfer(const DgAlgebra& dg, const Retraction& r, int cap) {
  return transfer_with_morphism(dg, r, cap).model;
}

/// Checks sum_k b_k(Phi (x) ... (x) Phi) = sum Phi(1^r (x) b'_s (x) 1^t) up to total arity `arity`.
inline std::optional<std::string> check_transfer_morphism(const DgAlgebra& dg, const TransferData& t, int arity) {
  const Field f = dg.field();
  const std::size_t n = dg.dim(), m = t.model.dim();
  const auto& hbasis = t.model.basis();
  OperationTables b = to_shifted(dg.algebra().basis(), AInfAlgebra::from_dg(dg).tables());
  for (int N = 1; N <= arity; ++N) {
    OperationTable acc;
    // b_1 Phi_N
    if (b.count(1) && t.morphism.count(N))
      for (const auto& [tuple, v] : t.morphism.at(N)) detail::accumulate(acc, tuple, Scalar::one(f), dg.d() * v);
    // b_2 (Phi_a (x) Phi_b)
    if (b.count(2))
      for (int left = 1; left < N; ++left) {
        if (!t.morphism.count(left) || !t.morphism.count(N - left)) continue;
        const auto& rt = t.morphism.at(N - left);
        const auto& lt = t.morphism.at(left);
        OperationTable half;
        detail::compose_into(half, b.at(2), 1, rt, detail::index_by_output(rt, n), Scalar::one(f), [](const Tuple&) { return 0L; });
        detail::compose_into(acc, half, 0, lt, detail::index_by_output(lt, n), Scalar::one(f), [](const Tuple&) { return 0L; });
      }
    // minus Phi_o(1^r (x) b'_s (x) 1^t)
    for (const auto& [o, phi] : t.morphism) {
      int s = N - o + 1;
      if (s < 2 || !t.shifted_model.count(s)) continue;
      auto idx = detail::index_by_output(t.shifted_model.at(s), m);
      for (int r = 0; r < o; ++r)
        detail::compose_into(acc, phi, static_cast<std::size_t>(r), t.shifted_model.at(s), idx, Scalar(f, -1L),
                             [&](const Tuple& key) {
                               long e = 0;
                               for (int j = 0; j < r; ++j) e += hbasis[key[static_cast<std::size_t>(j)]].degree - 1;
                               return e;
                             });
    }
    detail::drop_zeros(acc);
    if (!acc.empty()) return "arity " + std::to_string(N) + " on " + format_tuple(hbasis, acc.begin()->first);
  }
  return std::nullopt;
}

}  // namespace ainf
