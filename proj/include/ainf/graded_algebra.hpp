#pragma once

// Finite-dimensional graded associative algebras given by a basis and structure constants.

#include <ainf/matrix.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ainf {

struct BasisElement {
  std::string name;
  int degree = 0;
  // Vertex tags for quiver-style presentations: x = e_source * x * e_target.
  std::optional<std::string> source;
  std::optional<std::string> target;
};

/// Violations found by a verifier, or none.
struct Diagnostics {
  std::vector<std::string> violations;

  [[nodiscard]] bool valid() const { return violations.empty(); }
  void add(std::string msg) {
    if (violations.size() < kMaxReported) violations.push_back(std::move(msg));
  }
  [[nodiscard]] std::string summary() const { return valid() ? "valid" : violations.front(); }

  static constexpr std::size_t kMaxReported = 32;
};

/// Renders a vector as "c*name + ..." for diagnostics and reports.
inline std::string format_element(const std::vector<BasisElement>& basis, const Vec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (!v[i].is_one()) out += v[i].to_string() + "*";
    out += basis[i].name;
  }
  return out.empty() ? "0" : out;
}

class GradedAlgebra {
 public:
  GradedAlgebra() = default;

  /// products[i * dim + j] is the product of basis elements i and j (dense, length dim).
  /// idempotents are orthogonal idempotents summing to the unit.
  GradedAlgebra(Field f, std::vector<BasisElement> basis, std::vector<Vec> products, std::vector<Vec> idempotents)
      : field_(f), basis_(std::move(basis)), products_(std::move(products)), idempotents_(std::move(idempotents)) {
    const std::size_t n = basis_.size();
    if (products_.size() != n * n) throw DomainError("structure-constant table has the wrong size");
    for (const auto& p : products_)
      if (p.size() != n) throw DomainError("structure constant of the wrong length");
    unit_ = zero_vec(f, n);
    for (const auto& e : idempotents_) {
      if (e.size() != n) throw DomainError("idempotent of the wrong length");
      unit_ = unit_ + e;
    }
    for (std::size_t i = 0; i < n; ++i) index_[basis_[i].name] = i;
    if (index_.size() != n) throw DomainError("duplicate basis names");
  }

  [[nodiscard]] Field field() const { return field_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] const std::vector<BasisElement>& basis() const { return basis_; }
  [[nodiscard]] int degree(std::size_t i) const { return basis_[i].degree; }
  [[nodiscard]] const Vec& unit() const { return unit_; }
  [[nodiscard]] const std::vector<Vec>& idempotents() const { return idempotents_; }
  [[nodiscard]] const std::vector<Vec>& products() const { return products_; }

  [[nodiscard]] std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] const Vec& product(std::size_t i, std::size_t j) const { return products_[i * dim() + j]; }

  [[nodiscard]] Vec multiply(const Vec& x, const Vec& y) const {
    Vec out = zero_vec(field_, dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y[j].is_zero()) continue;
        axpy(out, x[i] * y[j], product(i, j));
      }
    }
    return out;
  }

  [[nodiscard]] Vec element(std::size_t i) const { return unit_vec(field_, dim(), i); }

  [[nodiscard]] int min_degree() const {
    int m = 0;
    for (const auto& b : basis_) m = std::min(m, b.degree);
    return m;
  }
  [[nodiscard]] int max_degree() const {
    int m = 0;
    for (const auto& b : basis_) m = std::max(m, b.degree);
    return m;
  }
  /// Concentrated in non-positive degrees.
  [[nodiscard]] bool connective() const { return max_degree() <= 0; }
  /// n0 with the algebra concentrated in [-n0, 0].
  [[nodiscard]] int n0() const { return -min_degree(); }

  [[nodiscard]] std::vector<std::size_t> indices_in_degree(int d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
      if (basis_[i].degree == d) out.push_back(i);
    return out;
  }

  /// Degree of a homogeneous nonzero vector; nullopt for zero or inhomogeneous vectors.
  [[nodiscard]] std::optional<int> degree_of(const Vec& v) const {
    std::optional<int> d;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (v[i].is_zero()) continue;
      if (d && *d != basis_[i].degree) return std::nullopt;
      d = basis_[i].degree;
    }
    return d;
  }

  /// Left multiplication by x as a matrix acting on coordinate columns.
  [[nodiscard]] Matrix left_multiplication(const Vec& x) const {
    Matrix m(field_, dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      Vec col = multiply(x, element(j));
      for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
    }
    return m;
  }

  /// Smallest subspace product of two subspaces: span{u*v}.
  [[nodiscard]] Subspace product_space(const Subspace& a, const Subspace& b) const {
    Subspace out(field_, dim());
    for (const auto& u : a.basis())
      for (const auto& v : b.basis()) out.insert(multiply(u, v));
    return out;
  }

 private:
  Field field_{};
  std::vector<BasisElement> basis_;
  std::vector<Vec> products_;
  std::vector<Vec> idempotents_;
  Vec unit_;
  std::map<std::string, std::size_t> index_;
};

/// Checks associativity on basis triples, grading of products, the unit, and the idempotent data.
inline Diagnostics verify_algebra(const GradedAlgebra& a) {
  Diagnostics diag;
  const auto& B = a.basis();
  const std::size_t n = a.dim();
  const Field f = a.field();

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec& p = a.product(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (!p[k].is_zero() && B[k].degree != B[i].degree + B[j].degree) {
          diag.add("grading: " + B[i].name + "*" + B[j].name + " has a component on " + B[k].name +
                   " of degree " + std::to_string(B[k].degree));
          break;
        }
    }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec& ij = a.product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        Vec left = a.multiply(ij, a.element(k));
        Vec right = a.multiply(a.element(i), a.product(j, k));
        if (left != right)
          diag.add("associativity: (" + B[i].name + "*" + B[j].name + ")*" + B[k].name + " = " +
                   format_element(B, left) + " but " + B[i].name + "*(" + B[j].name + "*" + B[k].name +
                   ") = " + format_element(B, right));
      }
    }

  const Vec& u = a.unit();
  for (std::size_t i = 0; i < n; ++i) {
    Vec x = a.element(i);
    if (a.multiply(u, x) != x || a.multiply(x, u) != x) diag.add("unit: does not act as identity on " + B[i].name);
  }

  const auto& idem = a.idempotents();
  for (std::size_t i = 0; i < idem.size(); ++i) {
    if (a.degree_of(idem[i]).value_or(0) != 0) diag.add("unit: idempotent " + std::to_string(i) + " not of degree 0");
    for (std::size_t j = 0; j < idem.size(); ++j) {
      Vec p = a.multiply(idem[i], idem[j]);
      Vec expected = i == j ? idem[i] : zero_vec(f, n);
      if (p != expected)
        diag.add("unit: idempotents " + format_element(B, idem[i]) + " and " + format_element(B, idem[j]) +
                 " are not orthogonal idempotents");
    }
  }
  return diag;
}

/// The subalgebra (or subspace with induced product) spanned by independent vectors closed under
/// multiplication. Degrees are taken from the homogeneous generators.
inline GradedAlgebra restrict_to_subalgebra(const GradedAlgebra& a, const std::vector<Vec>& gens,
                                            std::vector<BasisElement> names, const std::vector<Vec>& idempotents) {
  const Field f = a.field();
  CoordinateSystem cs(f, gens, a.dim());
  const std::size_t m = gens.size();
  std::vector<Vec> products;
  products.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto c = cs.coordinates(a.multiply(gens[i], gens[j]));
      if (!c) throw DomainError("subspace is not closed under multiplication");
      products.push_back(std::move(*c));
    }
  std::vector<Vec> idem;
  for (const auto& e : idempotents) idem.push_back(cs.coordinates_in_span(e));
  return GradedAlgebra(f, std::move(names), std::move(products), std::move(idem));
}

/// Complement of a subspace given by the non-pivot coordinate directions of its echelon basis.
inline std::vector<std::size_t> complement_coordinates(const Subspace& s) {
  std::vector<bool> piv(s.ambient(), false);
  for (auto p : s.pivots()) piv[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.ambient(); ++i)
    if (!piv[i]) out.push_back(i);
  return out;
}

/// Quotient by a two-sided graded ideal, with basis the images of the complement coordinates.
/// Idempotents mapping to zero are dropped.
inline GradedAlgebra quotient_algebra(const GradedAlgebra& a, const Subspace& ideal) {
  const Field f = a.field();
  auto keep = complement_coordinates(ideal);
  std::vector<std::size_t> pos(a.dim(), a.dim());
  for (std::size_t k = 0; k < keep.size(); ++k) pos[keep[k]] = k;
  auto project = [&](const Vec& v) {
    Vec r = ideal.reduce(v);
    Vec out = zero_vec(f, keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) out[k] = r[keep[k]];
    return out;
  };
  std::vector<BasisElement> names;
  for (auto k : keep) names.push_back(a.basis()[k]);
  std::vector<Vec> products;
  for (auto i : keep)
    for (auto j : keep) products.push_back(project(a.product(i, j)));
  std::vector<Vec> idem;
  for (const auto& e : a.idempotents()) {
    Vec p = project(e);
    if (!is_zero(p)) idem.push_back(std::move(p));
  }
  return GradedAlgebra(f, std::move(names), std::move(products), std::move(idem));
}

/// Same algebra in a new basis: new basis vector j is column j of `change` (in old coordinates).
/// The change must preserve homogeneity (each column homogeneous).
inline GradedAlgebra change_basis(const GradedAlgebra& a, const Matrix& change) {
  std::vector<Vec> cols;
  std::vector<BasisElement> names;
  for (std::size_t j = 0; j < change.cols(); ++j) {
    cols.push_back(change.col(j));
    auto d = a.degree_of(cols.back());
    if (!d) throw DomainError("change of basis must map to homogeneous vectors");
    names.push_back({"v" + std::to_string(j), *d, std::nullopt, std::nullopt});
  }
  return restrict_to_subalgebra(a, cols, std::move(names), a.idempotents());
}

/// Two-sided ideal generated by a subspace.
inline Subspace two_sided_ideal(const GradedAlgebra& a, const Subspace& gens) {
  Subspace ideal = gens;
  bool grew = true;
  while (grew) {
    grew = false;
    auto current = ideal.basis();
    for (const auto& v : current)
      for (std::size_t i = 0; i < a.dim(); ++i) {
        grew |= ideal.insert(a.multiply(a.element(i), v));
        grew |= ideal.insert(a.multiply(v, a.element(i)));
      }
  }
  return ideal;
}

/// Powers S, S^2, ... of a subspace under the product, until zero or stabilization.
inline std::vector<Subspace> subspace_powers(const GradedAlgebra& a, const Subspace& s, std::size_t max_steps = 0) {
  std::vector<Subspace> out{s};
  if (max_steps == 0) max_steps = a.dim() + 2;
  while (!out.back().is_zero() && out.size() <= max_steps) {
    Subspace next = a.product_space(out.back(), s);
    if (next == out.back()) break;
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace ainf
