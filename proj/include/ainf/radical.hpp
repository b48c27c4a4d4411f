#pragma once

// Jacobson radical, Loewy length, primitive idempotents and basic reduction.

#include <ainf/graded_algebra.hpp>
#include <ainf/polynomial.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ainf {

namespace detail {

/// Tr(L_b) for every basis element b.
inline std::vector<Scalar> left_traces(const GradedAlgebra& a) {
  std::vector<Scalar> t(a.dim(), Scalar::zero(a.field()));
  for (std::size_t l = 0; l < a.dim(); ++l)
    for (std::size_t k = 0; k < a.dim(); ++k) t[l] += a.product(l, k)[k];
  return t;
}

inline Scalar dot(const std::vector<Scalar>& t, const Vec& x) {
  Scalar s = Scalar::zero(x.empty() ? Field{} : x.front().field());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) s += t[i] * x[i];
  return s;
}

using IntMatrix = std::vector<std::vector<std::uint64_t>>;

inline IntMatrix mul_mod(const IntMatrix& x, const IntMatrix& y, std::uint64_t mod) {
  const std::size_t n = x.size();
  IntMatrix z(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (x[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        z[i][j] = static_cast<std::uint64_t>((z[i][j] + static_cast<unsigned __int128>(x[i][k]) * y[k][j]) % mod);
    }
  return z;
}

/// (Tr(Z^(p^i)) mod p^(i+1)) / p^i for the integer lift Z of left multiplication by z.
inline std::uint64_t ronyai_functional(const GradedAlgebra& a, const Vec& z, std::uint64_t p, unsigned i) {
  std::uint64_t pi = 1;
  for (unsigned k = 0; k < i; ++k) pi *= p;
  const std::uint64_t mod = pi * p;
  Matrix lz = a.left_multiplication(z);
  const std::size_t n = a.dim();
  IntMatrix base(n, std::vector<std::uint64_t>(n, 0)), acc(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t r = 0; r < n; ++r) {
    acc[r][r] = 1 % mod;
    for (std::size_t c = 0; c < n; ++c) base[r][c] = lz(r, c).residue() % mod;
  }
  for (std::uint64_t e = pi; e; e >>= 1) {
    if (e & 1) acc = mul_mod(acc, base, mod);
    if (e > 1) base = mul_mod(base, base, mod);
  }
  std::uint64_t tr = 0;
  for (std::size_t r = 0; r < n; ++r) tr = (tr + acc[r][r]) % mod;
  if (tr % pi != 0) throw std::logic_error("radical: trace functional not divisible as expected");
  return (tr / pi) % p;
}

}  // namespace detail

/// Jacobson radical of the algebra viewed as an ungraded unital algebra.
/// Trace-form kernel when char = 0 or char > dim; otherwise the iterated integer-lift trace method.
inline Subspace algebra_radical(const GradedAlgebra& a) {
  const Field f = a.field();
  const std::size_t n = a.dim();
  if (n == 0) return Subspace(f, 0);
  auto t = detail::left_traces(a);
  Matrix gram(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram(j, i) = detail::dot(t, a.product(i, j));
  Subspace ideal = Subspace::span(f, n, kernel_basis(gram));
  const std::uint64_t p = f.characteristic();
  if (f.is_rational() || p > n) return ideal;

  for (unsigned i = 1;; ++i) {
    std::uint64_t pi = 1;
    bool too_big = false;
    for (unsigned k = 0; k < i; ++k) {
      pi *= p;
      if (pi > n) too_big = true;
    }
    if (too_big) break;
    const auto& u = ideal.basis();
    if (u.empty()) break;
    Matrix cond(f, n, u.size());
    for (std::size_t k = 0; k < u.size(); ++k)
      for (std::size_t j = 0; j < n; ++j)
        cond(j, k) = Scalar(f, static_cast<long>(detail::ronyai_functional(a, a.multiply(u[k], a.element(j)), p, i)));
    std::vector<Vec> next;
    for (const auto& c : kernel_basis(cond)) {
      Vec x = zero_vec(f, n);
      for (std::size_t k = 0; k < u.size(); ++k) axpy(x, c[k], u[k]);
      next.push_back(std::move(x));
    }
    ideal = Subspace::span(f, n, next);
  }
  return ideal;
}

/// The degree-0 subalgebra, together with the positions of its basis in the ambient basis.
struct DegreeZeroPart {
  GradedAlgebra algebra;
  std::vector<std::size_t> indices;

  [[nodiscard]] Vec embed(const Vec& v) const {
    Vec out = zero_vec(algebra.field(), ambient);
    for (std::size_t k = 0; k < indices.size(); ++k) out[indices[k]] = v[k];
    return out;
  }
  [[nodiscard]] Vec restrict(const Vec& v) const {
    Vec out = zero_vec(algebra.field(), indices.size());
    for (std::size_t k = 0; k < indices.size(); ++k) out[k] = v[indices[k]];
    return out;
  }
  std::size_t ambient = 0;
};

inline DegreeZeroPart degree_zero_part(const GradedAlgebra& a) {
  DegreeZeroPart out;
  out.indices = a.indices_in_degree(0);
  out.ambient = a.dim();
  std::vector<Vec> gens;
  std::vector<BasisElement> names;
  for (auto i : out.indices) {
    gens.push_back(a.element(i));
    names.push_back(a.basis()[i]);
  }
  out.algebra = restrict_to_subalgebra(a, gens, std::move(names), a.idempotents());
  return out;
}

/// rad(Λ⁰), as a subspace of Λ.
inline Subspace degree_zero_radical(const GradedAlgebra& a) {
  auto zero = degree_zero_part(a);
  Subspace r = algebra_radical(zero.algebra);
  Subspace out(a.field(), a.dim());
  for (const auto& v : r.basis()) out.insert(zero.embed(v));
  return out;
}

/// Smallest l with J^l = 0 (so l = 1 when J = 0).
inline std::size_t loewy_length(const GradedAlgebra& a, const Subspace& j) {
  auto powers = subspace_powers(a, j, a.dim() + 2);
  if (!powers.back().is_zero()) throw DomainError("subspace is not nilpotent");
  return powers.size();
}

/// Primitive orthogonal idempotents of Λ⁰ (lifted from Λ⁰/rad), grouped into isomorphism classes.
struct IdempotentData {
  std::vector<Vec> primitive;            // in ambient coordinates
  std::vector<std::size_t> class_of;     // class label per primitive idempotent
  std::size_t class_count = 0;
  std::vector<std::size_t> representatives;  // first member of each class
};

namespace detail {

/// Monic minimal polynomial of z in the corner algebra with identity e.
inline Polynomial minimal_polynomial(const GradedAlgebra& q, const Vec& e, const Vec& z) {
  const Field f = q.field();
  std::vector<Vec> powers{e};
  Vec current = e;
  for (std::size_t k = 1; k <= q.dim() + 1; ++k) {
    current = q.multiply(current, z);
    if (auto c = coordinates(f, powers, current)) {
      std::vector<Scalar> coeffs;
      for (const auto& s : *c) coeffs.push_back(-s);
      coeffs.push_back(Scalar::one(f));
      return Polynomial(f, std::move(coeffs));
    }
    powers.push_back(current);
  }
  throw std::logic_error("minimal polynomial did not terminate");
}

/// A nonzero non-invertible element of the corner algebra eQe, if one can be found from basis data.
inline std::optional<Vec> corner_zero_divisor(const GradedAlgebra& q, const Vec& e, const std::vector<Vec>& corner) {
  const Field f = q.field();
  std::vector<Vec> candidates = corner;
  for (std::size_t i = 0; i < corner.size(); ++i)
    for (std::size_t j = i + 1; j < corner.size(); ++j) {
      candidates.push_back(corner[i] + corner[j]);
      candidates.push_back(q.multiply(corner[i], corner[j]));
      candidates.push_back(corner[i] + scaled(Scalar(f, 2L), corner[j]));
    }
  Subspace scalars = Subspace::span(f, q.dim(), {e});
  for (const auto& z : candidates) {
    if (scalars.contains(z)) continue;
    for (const auto& root : roots_in_field(minimal_polynomial(q, e, z))) {
      Vec w = z - scaled(root, e);
      if (!is_zero(w)) return w;
    }
  }
  return std::nullopt;
}

/// Splits e = f + (e - f) along the left ideal generated by a zero divisor w in eQe.
inline Vec splitting_idempotent(const GradedAlgebra& q, const std::vector<Vec>& corner, const Vec& w) {
  const Field f = q.field();
  Subspace left(f, q.dim());
  for (const auto& b : corner) left.insert(q.multiply(b, w));
  const auto& l = left.basis();
  // f = Σ c_k l_k with l_i f = l_i for all i
  Matrix sys(f, q.dim() * l.size(), l.size());
  Vec rhs = zero_vec(f, q.dim() * l.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (std::size_t k = 0; k < l.size(); ++k) {
      Vec prod = q.multiply(l[i], l[k]);
      for (std::size_t r = 0; r < q.dim(); ++r) sys(i * q.dim() + r, k) = prod[r];
    }
    for (std::size_t r = 0; r < q.dim(); ++r) rhs[i * q.dim() + r] = l[i][r];
  }
  auto c = solve(sys, rhs);
  if (!c) throw DomainError("quotient by the radical is not semisimple");
  Vec out = zero_vec(f, q.dim());
  for (std::size_t k = 0; k < l.size(); ++k) axpy(out, (*c)[k], l[k]);
  return out;
}

inline std::vector<Vec> corner_basis(const GradedAlgebra& q, const Vec& e) {
  Subspace s(q.field(), q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) s.insert(q.multiply(q.multiply(e, q.element(i)), e));
  return s.basis();
}

/// Complete set of primitive orthogonal idempotents of a split semisimple algebra.
inline std::vector<Vec> semisimple_primitive_idempotents(const GradedAlgebra& q) {
  std::vector<Vec> work;
  for (const auto& e : q.idempotents())
    if (!is_zero(e)) work.push_back(e);
  if (work.empty() && q.dim() > 0) work.push_back(q.unit());
  std::vector<Vec> done;
  while (!work.empty()) {
    Vec e = work.back();
    work.pop_back();
    auto corner = corner_basis(q, e);
    if (corner.size() == 1) {
      done.push_back(e);
      continue;
    }
    auto w = corner_zero_divisor(q, e, corner);
    if (!w) throw DomainError("non-split semisimple quotient");
    Vec g = splitting_idempotent(q, corner, *w);
    work.push_back(e - g);
    work.push_back(g);
  }
  // deterministic order: by first nonzero coordinate, then lexicographic support
  std::sort(done.begin(), done.end(), [](const Vec& x, const Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      bool ax = !x[i].is_zero(), ay = !y[i].is_zero();
      if (ax != ay) return ax;
    }
    return false;
  });
  return done;
}

/// Newton iteration x <- 3x^2 - 2x^3 until idempotent.
inline Vec lift_idempotent(const GradedAlgebra& a, Vec x) {
  const Field f = a.field();
  for (int it = 0; it < 64; ++it) {
    Vec x2 = a.multiply(x, x);
    if (x2 == x) return x;
    Vec x3 = a.multiply(x2, x);
    x = scaled(Scalar(f, 3L), x2) - scaled(Scalar(f, 2L), x3);
  }
  throw DomainError("idempotent lifting did not converge (ideal not nilpotent?)");
}

}  // namespace detail

/// Primitive idempotents of Λ⁰ lifted from the semisimple quotient, with isomorphism classes.
inline IdempotentData primitive_idempotents(const GradedAlgebra& a) {
  const Field f = a.field();
  auto zero = degree_zero_part(a);
  const GradedAlgebra& l0 = zero.algebra;
  Subspace rad = algebra_radical(l0);
  GradedAlgebra q = quotient_algebra(l0, rad);
  auto keep = complement_coordinates(rad);
  auto lift_vec = [&](const Vec& v) {
    Vec out = zero_vec(f, l0.dim());
    for (std::size_t k = 0; k < keep.size(); ++k) out[keep[k]] = v[k];
    return out;
  };

  auto eps = detail::semisimple_primitive_idempotents(q);
  IdempotentData out;
  Vec used = zero_vec(f, l0.dim());
  for (std::size_t k = 0; k < eps.size(); ++k) {
    Vec u = l0.unit() - used;
    Vec lifted = k + 1 == eps.size() ? u : detail::lift_idempotent(l0, l0.multiply(l0.multiply(u, lift_vec(eps[k])), u));
    used = used + lifted;
    out.primitive.push_back(zero.embed(lifted));
  }

  out.class_of.assign(eps.size(), eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (out.class_of[i] != eps.size()) continue;
    out.class_of[i] = out.class_count;
    out.representatives.push_back(i);
    for (std::size_t j = i + 1; j < eps.size(); ++j) {
      if (out.class_of[j] != eps.size()) continue;
      bool linked = false;
      for (std::size_t b = 0; b < q.dim() && !linked; ++b)
        linked = !is_zero(q.multiply(q.multiply(eps[i], q.element(b)), eps[j]));
      if (linked) out.class_of[j] = out.class_count;
    }
    ++out.class_count;
  }
  return out;
}

struct RadicalData {
  Subspace J;
  std::size_t loewy_length = 1;  // smallest l with J^l = 0
  Subspace S;                    // semisimple complement, spanned by lifted matrix units
  IdempotentData idempotents;
};

namespace detail {

/// An element of f1 Λ f2 outside J, if any.
inline std::optional<Vec> corner_element_outside(const GradedAlgebra& a, const Subspace& j, const Vec& f1, const Vec& f2) {
  for (auto b : a.indices_in_degree(0)) {
    Vec x = a.multiply(a.multiply(f1, a.element(b)), f2);
    if (!j.contains(x)) return x;
  }
  return std::nullopt;
}

}  // namespace detail

/// J = rad(Λ⁰) ⊕ Λ^{<0}, its Loewy length, and a semisimple complement S with Λ = S ⊕ J.
inline RadicalData graded_radical(const GradedAlgebra& a) {
  if (!a.connective()) throw DomainError("connective input required");
  const Field f = a.field();
  RadicalData out;
  out.J = degree_zero_radical(a);
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.degree(i) < 0) out.J.insert(a.element(i));
  out.loewy_length = loewy_length(a, out.J);
  out.idempotents = primitive_idempotents(a);

  const auto& prim = out.idempotents.primitive;
  out.S = Subspace(f, a.dim());
  for (std::size_t c = 0; c < out.idempotents.class_count; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < prim.size(); ++i)
      if (out.idempotents.class_of[i] == c) members.push_back(i);
    const Vec& f1 = prim[members.front()];
    // to[k] : f1 -> f_k and from[k] : f_k -> f1 with to*from = f1
    std::vector<Vec> to{f1}, from{f1};
    for (std::size_t k = 1; k < members.size(); ++k) {
      const Vec& fk = prim[members[k]];
      auto u = detail::corner_element_outside(a, out.J, f1, fk);
      auto w = detail::corner_element_outside(a, out.J, fk, f1);
      if (!u || !w) throw std::logic_error("graded_radical: linked idempotents without connecting elements");
      Vec y = a.multiply(*u, *w);
      auto z = solve(a.left_multiplication(y), f1);
      if (!z) throw DomainError("non-split semisimple quotient");
      Vec v = a.multiply(*w, a.multiply(a.multiply(f1, *z), f1));
      if (a.multiply(v, *u) != fk) throw std::logic_error("graded_radical: matrix units failed to close up");
      to.push_back(*u);
      from.push_back(v);
    }
    for (std::size_t r = 0; r < members.size(); ++r)
      for (std::size_t s = 0; s < members.size(); ++s) out.S.insert(a.multiply(from[r], to[s]));
  }
  return out;
}

struct BasicReduction {
  GradedAlgebra algebra;
  std::size_t class_count = 0;
  Vec idempotent;                // e in Λ
  std::vector<Vec> embedding;    // new basis vectors inside Λ
};

/// eΛe for e the sum of one primitive idempotent per isomorphism class.
/// New basis: the chosen idempotents first, then e b e for the old basis b, greedily.
inline BasicReduction basic_reduction(const GradedAlgebra& a) {
  const Field f = a.field();
  auto idem = primitive_idempotents(a);
  BasicReduction out;
  out.class_count = idem.class_count;
  out.idempotent = zero_vec(f, a.dim());
  for (auto r : idem.representatives) out.idempotent = out.idempotent + idem.primitive[r];
  const Vec& e = out.idempotent;

  GeneratorSpan span(f, a.dim());
  std::vector<BasisElement> names;
  std::vector<Vec> reps;
  std::size_t counter = 0;
  auto fresh_name = [&](const std::string& stem) {
    std::string name = stem;
    while (a.index_of(name) || std::any_of(names.begin(), names.end(), [&](const BasisElement& b) { return b.name == name; }))
      name = stem + "_" + std::to_string(++counter);
    return name;
  };
  for (std::size_t k = 0; k < idem.representatives.size(); ++k) {
    const Vec& p = idem.primitive[idem.representatives[k]];
    span.add(p);
    reps.push_back(p);
    std::optional<std::size_t> match;
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (p == a.element(i)) match = i;
    if (match) {
      names.push_back(a.basis()[*match]);
    } else {
      names.push_back({fresh_name("e" + std::to_string(k + 1)), 0, std::nullopt, std::nullopt});
    }
  }
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vec x = a.multiply(a.multiply(e, a.element(i)), e);
    if (is_zero(x) || !span.add(x)) continue;
    if (x == a.element(i)) {
      names.push_back(a.basis()[i]);
    } else {
      names.push_back({fresh_name(a.basis()[i].name + "'"), a.degree(i), std::nullopt, std::nullopt});
    }
  }
  out.embedding = span.generators();
  out.algebra = restrict_to_subalgebra(a, out.embedding, std::move(names), reps);
  return out;
}

}  // namespace ainf
