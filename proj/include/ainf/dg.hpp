#pragma once

// DG-algebras: differential, cohomology, good truncation, amplitude and the ideals J-, J+.

#include <ainf/presentation.hpp>
#include <ainf/radical.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace ainf {

/// Cohomology of a finite complex given by basis degrees and a differential matrix
/// (column j is d of basis vector j).
class ComplexCohomology {
 public:
  ComplexCohomology(Field f, std::vector<int> degrees, const Matrix& d) : field_(f), degrees_(std::move(degrees)) {
    const std::size_t n = degrees_.size();
    boundaries_ = Subspace(f, n);
    for (std::size_t j = 0; j < n; ++j) boundaries_.insert(d.col(j));
    Subspace seen = boundaries_;
    for (auto& z : kernel_basis(d)) {
      if (!seen.insert(z)) continue;
      std::optional<int> deg;
      for (std::size_t i = 0; i < n; ++i)
        if (!z[i].is_zero()) {
          deg = degrees_[i];
          break;
        }
      rep_degrees_.push_back(deg.value_or(0));
      reps_.push_back(std::move(z));
    }
    std::vector<Vec> family = reps_;
    for (const auto& b : boundaries_.basis()) family.push_back(b);
    coords_ = CoordinateSystem(f, family, n);
  }

  [[nodiscard]] const std::vector<Vec>& representatives() const { return reps_; }
  [[nodiscard]] const std::vector<int>& representative_degrees() const { return rep_degrees_; }
  [[nodiscard]] const Subspace& boundaries() const { return boundaries_; }
  [[nodiscard]] std::size_t total_dimension() const { return reps_.size(); }

  [[nodiscard]] std::map<int, std::size_t> dimensions() const {
    std::map<int, std::size_t> out;
    for (int d : rep_degrees_) ++out[d];
    return out;
  }

  /// Class of a cocycle in the basis of representatives.
  [[nodiscard]] Vec class_of(const Vec& cocycle) const {
    Vec c = coords_.coordinates_in_span(cocycle);
    c.resize(reps_.size());
    return c;
  }

 private:
  Field field_;
  std::vector<int> degrees_;
  Subspace boundaries_;
  std::vector<Vec> reps_;
  std::vector<int> rep_degrees_;
  CoordinateSystem coords_;
};

class DgAlgebra {
 public:
  DgAlgebra() = default;
  DgAlgebra(GradedAlgebra a, Matrix d) : algebra_(std::move(a)), d_(std::move(d)) {
    if (d_.rows() != algebra_.dim() || d_.cols() != algebra_.dim()) throw DomainError("differential has the wrong shape");
  }
  /// Zero differential.
  explicit DgAlgebra(GradedAlgebra a) : algebra_(std::move(a)), d_(algebra_.field(), algebra_.dim(), algebra_.dim()) {}

  [[nodiscard]] const GradedAlgebra& algebra() const { return algebra_; }
  [[nodiscard]] const Matrix& d() const { return d_; }
  [[nodiscard]] Field field() const { return algebra_.field(); }
  [[nodiscard]] std::size_t dim() const { return algebra_.dim(); }
  [[nodiscard]] Vec differential(const Vec& v) const { return d_ * v; }
  [[nodiscard]] bool has_zero_differential() const { return d_.is_zero(); }

  [[nodiscard]] std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& b : algebra_.basis()) out.push_back(b.degree);
    return out;
  }

  [[nodiscard]] ComplexCohomology complex_cohomology() const { return ComplexCohomology(field(), degrees(), d_); }

 private:
  GradedAlgebra algebra_;
  Matrix d_;
};

inline DgAlgebra build_dg(const Presentation& p) {
  if (p.is_ainf()) throw DomainError("input carries higher operations; expected a DG-algebra");
  GradedAlgebra a = build_algebra(p);
  Matrix d(p.field, a.dim(), a.dim());
  std::vector<bool> seen(a.dim(), false);
  for (const auto& e : p.d) {
    std::size_t j = p.index(e.arg);
    if (seen[j]) throw DomainError("duplicate d entry for '" + e.arg + "'");
    seen[j] = true;
    Vec v = p.vector(e.value);
    for (std::size_t i = 0; i < a.dim(); ++i) d(i, j) = v[i];
  }
  return DgAlgebra(std::move(a), std::move(d));
}

/// Degree of d, d^2 = 0, d(1) = 0 and the Leibniz rule on all basis pairs.
inline Diagnostics verify_dg(const DgAlgebra& dg) {
  Diagnostics diag;
  const auto& a = dg.algebra();
  const auto& B = a.basis();
  const std::size_t n = a.dim();
  const Field f = a.field();

  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (!dg.d()(i, j).is_zero() && B[i].degree != B[j].degree + 1) {
        diag.add("degree: d(" + B[j].name + ") has a component on " + B[i].name + " of degree " +
                 std::to_string(B[i].degree) + ", expected " + std::to_string(B[j].degree + 1));
        break;
      }

  Matrix dd = dg.d() * dg.d();
  for (std::size_t j = 0; j < n; ++j)
    if (!is_zero(dd.col(j))) diag.add("d^2: d(d(" + B[j].name + ")) = " + format_element(B, dd.col(j)));

  if (!is_zero(dg.differential(a.unit()))) diag.add("unit: d(1) = " + format_element(B, dg.differential(a.unit())));

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec x = a.element(i), y = a.element(j);
      Vec lhs = dg.differential(a.product(i, j));
      Vec rhs = a.multiply(dg.differential(x), y);
      axpy(rhs, sign_scalar(f, B[i].degree), a.multiply(x, dg.differential(y)));
      if (lhs != rhs)
        diag.add("leibniz: d(" + B[i].name + "*" + B[j].name + ") = " + format_element(B, lhs) + " but d(" + B[i].name +
                 ")*" + B[j].name + " +- " + B[i].name + "*d(" + B[j].name + ") = " + format_element(B, rhs));
    }
  return diag;
}

/// H*(A) with its induced product and the cocycle representatives used to define it.
struct Cohomology {
  GradedAlgebra algebra;
  std::vector<Vec> representatives;  // in A, one per basis element of H
  ComplexCohomology complex;

  /// Class of a cocycle of A in the basis of H.
  [[nodiscard]] Vec class_of(const Vec& cocycle) const { return complex.class_of(cocycle); }
};

namespace detail {

inline std::string fresh(const std::vector<BasisElement>& taken, const GradedAlgebra& a, const std::string& stem) {
  auto used = [&](const std::string& s) {
    if (a.index_of(s)) return true;
    for (const auto& b : taken)
      if (b.name == s) return true;
    return false;
  };
  if (!used(stem)) return stem;
  for (std::size_t k = 1;; ++k)
    if (!used(stem + "_" + std::to_string(k))) return stem + "_" + std::to_string(k);
}

/// Name for a new basis vector: the old name if it is an old basis vector, else a fresh stem.
inline BasisElement name_vector(const GradedAlgebra& a, const Vec& v, int degree, const std::vector<BasisElement>& taken,
                                const std::string& stem) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (v == a.element(i)) return a.basis()[i];
  return {fresh(taken, a, stem), degree, std::nullopt, std::nullopt};
}

/// Unit idempotents that are cocycles; otherwise just the unit.
inline std::vector<Vec> closed_idempotents(const DgAlgebra& dg) {
  for (const auto& e : dg.algebra().idempotents())
    if (!is_zero(dg.differential(e))) return {dg.algebra().unit()};
  return dg.algebra().idempotents();
}

}  // namespace detail

inline Cohomology cohomology_algebra(const DgAlgebra& dg) {
  const auto& a = dg.algebra();
  ComplexCohomology cc = dg.complex_cohomology();
  const auto& reps = cc.representatives();
  const std::size_t m = reps.size();

  std::vector<BasisElement> names;
  for (std::size_t k = 0; k < m; ++k)
    names.push_back(detail::name_vector(a, reps[k], cc.representative_degrees()[k], names, "h" + std::to_string(k)));
  std::vector<Vec> products;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) products.push_back(cc.class_of(a.multiply(reps[i], reps[j])));
  std::vector<Vec> idem;
  for (const auto& e : detail::closed_idempotents(dg)) {
    Vec c = m ? cc.class_of(e) : Vec{};
    if (!is_zero(c)) idem.push_back(std::move(c));
  }
  return {GradedAlgebra(a.field(), std::move(names), std::move(products), std::move(idem)), reps, std::move(cc)};
}

/// Good truncation: degrees < 0 unchanged, degree 0 replaced by the 0-cocycles, positive degrees dropped.
inline DgAlgebra truncate_connective(const DgAlgebra& dg) {
  const auto& a = dg.algebra();
  const Field f = a.field();
  std::vector<Vec> gens;
  std::vector<BasisElement> names;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.degree(i) < 0) {
      gens.push_back(a.element(i));
      names.push_back(a.basis()[i]);
    }
  auto zero = a.indices_in_degree(0);
  Matrix d0(f, a.dim(), zero.size());
  for (std::size_t k = 0; k < zero.size(); ++k)
    for (std::size_t i = 0; i < a.dim(); ++i) d0(i, k) = dg.d()(i, zero[k]);
  // keep whole basis vectors where possible so names survive
  std::size_t z = 0;
  for (const auto& v : kernel_basis(d0)) {
    Vec full = zero_vec(f, a.dim());
    for (std::size_t k = 0; k < zero.size(); ++k) full[zero[k]] = v[k];
    names.push_back(detail::name_vector(a, full, 0, names, "z" + std::to_string(z++)));
    gens.push_back(std::move(full));
  }
  // restore the ambient order (by leading coordinate)
  std::vector<std::size_t> order(gens.size());
  std::iota(order.begin(), order.end(), 0);
  auto lead = [&](const Vec& v) {
    std::size_t i = 0;
    while (i < v.size() && v[i].is_zero()) ++i;
    return i;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return lead(gens[x]) < lead(gens[y]); });
  std::vector<Vec> sorted_gens;
  std::vector<BasisElement> sorted_names;
  for (auto k : order) {
    sorted_gens.push_back(gens[k]);
    sorted_names.push_back(names[k]);
  }
  gens = std::move(sorted_gens);
  names = std::move(sorted_names);
  GradedAlgebra t = restrict_to_subalgebra(a, gens, names, detail::closed_idempotents(dg));
  CoordinateSystem cs(f, gens, a.dim());
  Matrix d(f, gens.size(), gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    Vec c = cs.coordinates_in_span(dg.differential(gens[j]));
    for (std::size_t i = 0; i < gens.size(); ++i) d(i, j) = c[i];
  }
  return DgAlgebra(std::move(t), std::move(d));
}

struct Predicates {
  bool proper = true;
  bool connective = true;
  std::optional<int> amplitude;  // nullopt for the zero object
  std::map<int, std::size_t> cohomology_dimensions;
};

inline Predicates predicates(const DgAlgebra& dg) {
  Predicates p;
  p.cohomology_dimensions = dg.complex_cohomology().dimensions();
  if (!p.cohomology_dimensions.empty()) {
    p.amplitude = p.cohomology_dimensions.rbegin()->first - p.cohomology_dimensions.begin()->first;
    p.connective = p.cohomology_dimensions.rbegin()->first <= 0;
  }
  return p;
}

/// Quotient complex A/I (I closed under d) on the complement coordinates of I.
struct QuotientComplex {
  std::vector<std::size_t> keep;
  std::vector<int> degrees;
  Matrix d;
};

inline QuotientComplex quotient_complex(const DgAlgebra& dg, const Subspace& ideal) {
  const Field f = dg.field();
  QuotientComplex q;
  q.keep = complement_coordinates(ideal);
  q.d = Matrix(f, q.keep.size(), q.keep.size());
  for (std::size_t c = 0; c < q.keep.size(); ++c) {
    q.degrees.push_back(dg.algebra().degree(q.keep[c]));
    Vec image = ideal.reduce(dg.differential(dg.algebra().element(q.keep[c])));
    for (std::size_t r = 0; r < q.keep.size(); ++r) q.d(r, c) = image[q.keep[r]];
  }
  return q;
}

struct DgIdealPair {
  Subspace J;
  Subspace J_minus;
  Subspace J_plus;
  std::size_t nilpotency = 1;  // smallest l with J_-^l = 0
  bool minus_is_dg_ideal = false;
  bool plus_is_dg_ideal = false;
  bool quasi_isomorphism = false;
  bool connective_formula = true;  // false: J taken as the graded Jacobson radical
  std::map<int, std::size_t> minus_cohomology;
  std::map<int, std::size_t> plus_cohomology;
};

/// Closed under d and under two-sided multiplication by basis elements.
inline bool is_dg_ideal(const DgAlgebra& dg, const Subspace& s) {
  const auto& a = dg.algebra();
  for (const auto& v : s.basis()) {
    if (!s.contains(dg.differential(v))) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (!s.contains(a.multiply(a.element(i), v)) || !s.contains(a.multiply(v, a.element(i)))) return false;
  }
  return true;
}

inline DgIdealPair dg_radical_ideals(const DgAlgebra& dg) {
  const auto& a = dg.algebra();
  const Field f = a.field();
  DgIdealPair out;
  if (a.connective()) {
    out.J = graded_radical(a).J;
  } else {
    out.J = algebra_radical(a);
    out.connective_formula = false;
  }

  const auto& u = out.J.basis();
  Matrix cond(f, a.dim(), u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    Vec r = out.J.reduce(dg.differential(u[k]));
    for (std::size_t i = 0; i < a.dim(); ++i) cond(i, k) = r[i];
  }
  out.J_minus = Subspace(f, a.dim());
  for (const auto& c : kernel_basis(cond)) {
    Vec x = zero_vec(f, a.dim());
    for (std::size_t k = 0; k < u.size(); ++k) axpy(x, c[k], u[k]);
    out.J_minus.insert(x);
  }
  out.J_plus = out.J;
  for (const auto& v : u) out.J_plus.insert(dg.differential(v));

  out.nilpotency = loewy_length(a, out.J_minus);
  out.minus_is_dg_ideal = is_dg_ideal(dg, out.J_minus);
  out.plus_is_dg_ideal = is_dg_ideal(dg, out.J_plus);

  // A/J- -> A/J+ induced on cohomology: map representatives and compare ranks
  QuotientComplex qm = quotient_complex(dg, out.J_minus), qp = quotient_complex(dg, out.J_plus);
  ComplexCohomology hm(f, qm.degrees, qm.d), hp(f, qp.degrees, qp.d);
  out.minus_cohomology = hm.dimensions();
  out.plus_cohomology = hp.dimensions();
  std::vector<Vec> images;
  for (const auto& rep : hm.representatives()) {
    Vec full = zero_vec(f, a.dim());
    for (std::size_t k = 0; k < qm.keep.size(); ++k) full[qm.keep[k]] = rep[k];
    Vec reduced = out.J_plus.reduce(full);
    Vec local = zero_vec(f, qp.keep.size());
    for (std::size_t k = 0; k < qp.keep.size(); ++k) local[k] = reduced[qp.keep[k]];
    images.push_back(hp.class_of(local));
  }
  std::size_t r = images.empty() ? 0 : rank(Matrix::from_columns(f, images, hp.total_dimension()));
  out.quasi_isomorphism = hm.total_dimension() == hp.total_dimension() && r == hm.total_dimension();
  return out;
}

/// A ⊇ J- ⊇ J-^2 ⊇ ... ⊇ 0.
struct PowerFiltration {
  std::vector<Subspace> layers;
  bool closed_under_d = true;
  [[nodiscard]] std::size_t nonzero_steps() const {
    std::size_t k = 0;
    for (const auto& l : layers) k += !l.is_zero();
    return k;
  }
};

inline PowerFiltration jminus_power_filtration(const DgAlgebra& dg) {
  const auto& a = dg.algebra();
  PowerFiltration out;
  out.layers.push_back(Subspace::whole(a.field(), a.dim()));
  Subspace jm = dg_radical_ideals(dg).J_minus;
  for (auto& s : subspace_powers(a, jm)) out.layers.push_back(std::move(s));
  if (!out.layers.back().is_zero()) out.layers.emplace_back(a.field(), a.dim());
  for (const auto& l : out.layers)
    for (const auto& v : l.basis()) out.closed_under_d = out.closed_under_d && l.contains(dg.differential(v));
  return out;
}

}  // namespace ainf
