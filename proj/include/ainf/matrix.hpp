#pragma once

// Dense exact matrices, row reduction, and subspaces with echelonized bases.

#include <ainf/scalar.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ainf {

using Vec = std::vector<Scalar>;

inline Vec zero_vec(Field f, std::size_t n) { return Vec(n, Scalar::zero(f)); }

inline Vec unit_vec(Field f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v[i] = Scalar::one(f);
  return v;
}

inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

inline void axpy(Vec& y, const Scalar& a, const Vec& x) {
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
}

inline Vec scaled(const Scalar& a, Vec v) {
  for (auto& s : v) s *= a;
  return v;
}

inline Vec operator+(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Vec operator-(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

  static Matrix identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
    return m;
  }

  /// Builds a matrix from row vectors (all of length cols).
  static Matrix from_rows(Field f, const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged input");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  /// Builds a matrix whose columns are the given vectors.
  static Matrix from_columns(Field f, const std::vector<Vec>& cols, std::size_t rows) {
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("from_columns: ragged input");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  [[nodiscard]] Field field() const { return field_; }
  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] Vec row(std::size_t i) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  [[nodiscard]] Vec col(std::size_t j) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    if (!(a.field_ == b.field_)) throw DomainError("matrix product: mixed fields");
    Matrix c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vec operator*(const Matrix& a, const Vec& x) {
    if (a.cols_ != x.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
    Vec y = zero_vec(a.field_, a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (!a(i, j).is_zero() && !x[j].is_zero()) y[i] += a(i, j) * x[j];
    return y;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
  }

  [[nodiscard]] std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      os << '[';
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
      os << "]\n";
    }
    return os.str();
  }

 private:
  Field field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form. Pivot columns are strictly increasing.
inline RrefResult rref(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    Scalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Basis of the right null space, one vector per free column (canonical echelon parametrization).
inline std::vector<Vec> kernel_basis(const Matrix& m) {
  auto [r, pivots] = rref(m);
  const Field f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = zero_vec(f, m.cols());
    v[free] = Scalar::one(f);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some x with m x = b, or nullopt when the system is inconsistent.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto [r, pivots] = rref(std::move(aug));
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vec x = zero_vec(m.field(), m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = r(i, m.cols());
  return x;
}

/// A linear subspace of k^n held as a reduced echelon basis.
class Subspace {
 public:
  Subspace() = default;
  Subspace(Field f, std::size_t ambient) : field_(f), ambient_(ambient) {}

  static Subspace span(Field f, std::size_t ambient, const std::vector<Vec>& gens) {
    Subspace s(f, ambient);
    if (gens.empty()) return s;
    auto [r, pivots] = rref(Matrix::from_rows(f, gens, ambient));
    for (std::size_t i = 0; i < pivots.size(); ++i) s.basis_.push_back(r.row(i));
    s.pivots_ = std::move(pivots);
    return s;
  }

  static Subspace whole(Field f, std::size_t ambient) {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < ambient; ++i) gens.push_back(unit_vec(f, ambient, i));
    return span(f, ambient, gens);
  }

  [[nodiscard]] Field field() const { return field_; }
  [[nodiscard]] std::size_t ambient() const { return ambient_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] bool is_zero() const { return basis_.empty(); }
  [[nodiscard]] const std::vector<Vec>& basis() const { return basis_; }
  [[nodiscard]] const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// v minus its echelon reduction; zero exactly when v lies in the subspace.
  [[nodiscard]] Vec reduce(Vec v) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Scalar c = v[pivots_[i]];
      if (!c.is_zero()) axpy(v, -c, basis_[i]);
    }
    return v;
  }

  [[nodiscard]] bool contains(const Vec& v) const { return ainf::is_zero(reduce(v)); }

  [[nodiscard]] bool contains(const Subspace& o) const {
    return std::all_of(o.basis_.begin(), o.basis_.end(), [&](const Vec& v) { return contains(v); });
  }

  /// Adds v; returns false if it was already contained.
  bool insert(const Vec& v) {
    Vec r = reduce(v);
    std::size_t lead = 0;
    while (lead < r.size() && r[lead].is_zero()) ++lead;
    if (lead == r.size()) return false;
    Scalar inv = r[lead].inverse();
    for (auto& s : r) s *= inv;
    for (auto& b : basis_) {
      const Scalar c = b[lead];
      if (!c.is_zero()) axpy(b, -c, r);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, lead);
    basis_.insert(basis_.begin() + pos, std::move(r));
    return true;
  }

  [[nodiscard]] Subspace operator+(const Subspace& o) const {
    Subspace s = *this;
    for (const auto& v : o.basis_) s.insert(v);
    return s;
  }

  [[nodiscard]] Subspace intersect(const Subspace& o) const {
    // x = sum a_i u_i = sum b_j w_j  <=>  [U^T | -W^T] (a,b) = 0
    if (basis_.empty() || o.basis_.empty()) return Subspace(field_, ambient_);
    Matrix m(field_, ambient_, basis_.size() + o.basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t r = 0; r < ambient_; ++r) m(r, i) = basis_[i][r];
    for (std::size_t j = 0; j < o.basis_.size(); ++j)
      for (std::size_t r = 0; r < ambient_; ++r) m(r, basis_.size() + j) = -o.basis_[j][r];
    std::vector<Vec> gens;
    for (const auto& k : kernel_basis(m)) {
      Vec x = zero_vec(field_, ambient_);
      for (std::size_t i = 0; i < basis_.size(); ++i) axpy(x, k[i], basis_[i]);
      gens.push_back(std::move(x));
    }
    return span(field_, ambient_, gens);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  Field field_{};
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

/// Subspace spanned by the given vectors, keeping the original generators that
/// extend the span (greedy, in order). Useful when generators carry provenance.
class GeneratorSpan {
 public:
  GeneratorSpan(Field f, std::size_t ambient) : echelon_(f, ambient) {}

  bool add(const Vec& v) {
    if (!echelon_.insert(v)) return false;
    gens_.push_back(v);
    return true;
  }

  [[nodiscard]] const Subspace& subspace() const { return echelon_; }
  [[nodiscard]] const std::vector<Vec>& generators() const { return gens_; }
  [[nodiscard]] std::size_t dim() const { return gens_.size(); }

 private:
  Subspace echelon_;
  std::vector<Vec> gens_;
};

/// Coordinates of v in terms of an independent list of vectors, or nullopt if v is not in their span.
inline std::optional<Vec> coordinates(Field f, const std::vector<Vec>& basis, const Vec& v) {
  if (basis.empty()) return ainf::is_zero(v) ? std::optional<Vec>(Vec{}) : std::nullopt;
  return solve(Matrix::from_columns(f, basis, v.size()), v);
}

/// Fast repeated coordinate extraction against a fixed independent family.
class CoordinateSystem {
 public:
  CoordinateSystem() = default;
  CoordinateSystem(Field f, std::vector<Vec> basis, std::size_t ambient)
      : field_(f), k_(basis.size()), n_(ambient), basis_(std::move(basis)) {
    Matrix aug(f, n_, k_ + n_);
    for (std::size_t j = 0; j < k_; ++j)
      for (std::size_t i = 0; i < n_; ++i) aug(i, j) = basis_[j][i];
    for (std::size_t i = 0; i < n_; ++i) aug(i, k_ + i) = Scalar::one(f);
    auto [r, pivots] = rref(std::move(aug));
    std::size_t independent = 0;
    while (independent < pivots.size() && pivots[independent] < k_) ++independent;
    if (independent != k_) throw DomainError("CoordinateSystem: family is not linearly independent");
    transform_ = Matrix(f, n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) transform_(i, j) = r(i, k_ + j);
  }

  [[nodiscard]] std::size_t size() const { return k_; }
  [[nodiscard]] const std::vector<Vec>& basis() const { return basis_; }

  [[nodiscard]] std::optional<Vec> coordinates(const Vec& v) const {
    Vec t = transform_ * v;
    for (std::size_t i = k_; i < n_; ++i)
      if (!t[i].is_zero()) return std::nullopt;
    t.resize(k_);
    return t;
  }

  /// Coordinates of a vector known to lie in the span.
  [[nodiscard]] Vec coordinates_in_span(const Vec& v) const {
    auto c = coordinates(v);
    if (!c) throw DomainError("vector does not lie in the expected subspace");
    return *c;
  }

 private:
  Field field_{};
  std::size_t k_ = 0;
  std::size_t n_ = 0;
  std::vector<Vec> basis_;
  Matrix transform_;
};

}  // namespace ainf
