#pragma once

// A-infinity algebras on a finite basis: sparse operation tables, Stasheff check, arity bound,
// gauge transformations and normalization of unitality over a semisimple subalgebra.
//
// Sign convention. Unshifted operations m_n (degree 2 - n) satisfy
//   sum_{r+s+t=N} (-1)^{r+st} m_{r+1+t}(1^r (x) m_s (x) 1^t) = 0,
// where applying 1^r (x) m_s (x) 1^t to x_1..x_N costs (-1)^{s(|x_1|+...+|x_r|)}.
// Shifted operations b_n on sA (all of degree 1) are b_n = s m_n (s^{-1})^{(x)n}, i.e.
//   b_n(sx_1,...,sx_n) = (-1)^{sum_j (n-j)(|x_j|-1)} s m_n(x_1,...,x_n),
// and satisfy sum b_{r+1+t}(1^r (x) b_s (x) 1^t) = 0 with the Koszul sign of b_s passing sx_1..sx_r.

#include <ainf/dg.hpp>
#include <ainf/presentation.hpp>
#include <ainf/radical.hpp>

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ainf {

using Tuple = std::vector<std::uint32_t>;
/// Nonzero values of one multilinear operation on basis tuples.
using OperationTable = std::map<Tuple, Vec>;
using OperationTables = std::map<int, OperationTable>;

inline std::string format_tuple(const std::vector<BasisElement>& basis, const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + basis[t[i]].name;
  return s + ")";
}

class AInfAlgebra {
 public:
  AInfAlgebra() = default;
  AInfAlgebra(Field f, std::vector<BasisElement> basis, std::vector<Vec> idempotents, OperationTables ops)
      : field_(f), basis_(std::move(basis)), idempotents_(std::move(idempotents)) {
    unit_ = zero_vec(f, basis_.size());
    for (const auto& e : idempotents_) unit_ = unit_ + e;
    for (auto& [n, table] : ops) {
      if (n < 1) throw DomainError("operations start at arity 1");
      for (auto& [t, v] : table) {
        if (static_cast<int>(t.size()) != n) throw DomainError("operation table entry of the wrong arity");
        if (v.size() != basis_.size()) throw DomainError("operation value of the wrong length");
        if (!is_zero(v)) ops_[n].emplace(t, std::move(v));
      }
    }
  }

  static AInfAlgebra from_algebra(const GradedAlgebra& a) { return from_dg(DgAlgebra(a)); }

  /// m1 = d, m2 = product.
  static AInfAlgebra from_dg(const DgAlgebra& dg) {
    const auto& a = dg.algebra();
    OperationTables ops;
    for (std::uint32_t j = 0; j < a.dim(); ++j) {
      Vec v = dg.d().col(j);
      if (!is_zero(v)) ops[1][{j}] = std::move(v);
    }
    for (std::uint32_t i = 0; i < a.dim(); ++i)
      for (std::uint32_t j = 0; j < a.dim(); ++j)
        if (!is_zero(a.product(i, j))) ops[2][{i, j}] = a.product(i, j);
    return AInfAlgebra(a.field(), a.basis(), a.idempotents(), std::move(ops));
  }

  [[nodiscard]] Field field() const { return field_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] const std::vector<BasisElement>& basis() const { return basis_; }
  [[nodiscard]] int degree(std::size_t i) const { return basis_[i].degree; }
  [[nodiscard]] const Vec& unit() const { return unit_; }
  [[nodiscard]] const std::vector<Vec>& idempotents() const { return idempotents_; }
  [[nodiscard]] const OperationTables& tables() const { return ops_; }
  [[nodiscard]] Vec element(std::size_t i) const { return unit_vec(field_, dim(), i); }

  [[nodiscard]] const OperationTable& table(int n) const {
    static const OperationTable empty;
    auto it = ops_.find(n);
    return it == ops_.end() ? empty : it->second;
  }

  /// Largest arity with a nonzero table, 0 if none.
  [[nodiscard]] int max_arity() const { return ops_.empty() ? 0 : ops_.rbegin()->first; }
  [[nodiscard]] bool minimal() const { return table(1).empty(); }

  [[nodiscard]] int n0() const {
    int m = 0;
    for (const auto& b : basis_) m = std::min(m, b.degree);
    return -m;
  }
  [[nodiscard]] bool connective() const {
    for (const auto& b : basis_)
      if (b.degree > 0) return false;
    return true;
  }

  [[nodiscard]] std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].name == name) return i;
    return std::nullopt;
  }

  /// The associative algebra (Λ, m2).
  [[nodiscard]] GradedAlgebra underlying() const {
    std::vector<Vec> products(dim() * dim(), zero_vec(field_, dim()));
    for (const auto& [t, v] : table(2)) products[t[0] * dim() + t[1]] = v;
    return GradedAlgebra(field_, basis_, std::move(products), idempotents_);
  }

  /// m_n on arbitrary vectors, by multilinearity.
  [[nodiscard]] Vec operation(int n, const std::vector<Vec>& args) const {
    if (static_cast<int>(args.size()) != n) throw std::invalid_argument("operation: wrong number of arguments");
    Vec out = zero_vec(field_, dim());
    for (const auto& [t, v] : table(n)) {
      Scalar c = Scalar::one(field_);
      for (std::size_t j = 0; j < t.size() && !c.is_zero(); ++j) c *= args[j][t[j]];
      if (!c.is_zero()) axpy(out, c, v);
    }
    return out;
  }

  /// Same basis and unit, new operations.
  [[nodiscard]] AInfAlgebra with_tables(OperationTables ops) const {
    return AInfAlgebra(field_, basis_, idempotents_, std::move(ops));
  }

 private:
  Field field_{};
  std::vector<BasisElement> basis_;
  std::vector<Vec> idempotents_;
  Vec unit_;
  OperationTables ops_;
};

/// m1 from the d block, m2 from the structure constants (with implied unit products), m_n from the m blocks.
inline AInfAlgebra build_ainf(const Presentation& p) {
  GradedAlgebra a = build_algebra(p);
  DgAlgebra dg(a);
  {
    Matrix d(p.field, a.dim(), a.dim());
    for (const auto& e : p.d) {
      Vec v = p.vector(e.value);
      std::size_t j = p.index(e.arg);
      for (std::size_t i = 0; i < a.dim(); ++i) d(i, j) = v[i];
    }
    dg = DgAlgebra(a, std::move(d));
  }
  OperationTables ops = AInfAlgebra::from_dg(dg).tables();
  for (const auto& [n, entries] : p.m) {
    if (n < 3) continue;
    for (const auto& e : entries) {
      Tuple t;
      for (const auto& name : e.args) t.push_back(static_cast<std::uint32_t>(p.index(name)));
      if (ops[n].count(t)) throw DomainError("duplicate m" + std::to_string(n) + " entry " + format_tuple(a.basis(), t));
      ops[n][t] = p.vector(e.value);
    }
  }
  return AInfAlgebra(p.field, a.basis(), a.idempotents(), std::move(ops));
}

namespace detail {

/// Entries of a table grouped by the output coordinates they touch.
using OutputIndex = std::vector<std::vector<std::pair<const Tuple*, Scalar>>>;

inline OutputIndex index_by_output(const OperationTable& t, std::size_t dim) {
  OutputIndex idx(dim);
  for (const auto& [tuple, v] : t)
    for (std::size_t c = 0; c < dim; ++c)
      if (!v[c].is_zero()) idx[c].emplace_back(&tuple, v[c]);
  return idx;
}

inline void accumulate(OperationTable& acc, const Tuple& key, const Scalar& c, const Vec& v) {
  auto [it, fresh] = acc.try_emplace(key, Vec{});
  if (fresh) it->second = zero_vec(c.field(), v.size());
  axpy(it->second, c, v);
}

/// acc += factor * sign(merged, r) * outer(1^r (x) inner (x) 1^t), over all entry pairs.
/// sign returns an exponent of -1 given the merged input tuple.
template <class Sign>
void compose_into(OperationTable& acc, const OperationTable& outer, std::size_t r, const OperationTable& /*inner*/,
                  const OutputIndex& inner_idx, const Scalar& factor, Sign&& sign) {
  const Field f = factor.field();
  Tuple key;
  for (const auto& [ot, ov] : outer) {
    for (const auto& [it, coef] : inner_idx[ot[r]]) {
      key.assign(ot.begin(), ot.begin() + static_cast<std::ptrdiff_t>(r));
      key.insert(key.end(), it->begin(), it->end());
      key.insert(key.end(), ot.begin() + static_cast<std::ptrdiff_t>(r) + 1, ot.end());
      accumulate(acc, key, factor * coef * sign_scalar(f, sign(key)), ov);
    }
  }
}

inline void drop_zeros(OperationTable& t) {
  for (auto it = t.begin(); it != t.end();) it = is_zero(it->second) ? t.erase(it) : std::next(it);
}

}  // namespace detail

/// Degrees of the m_n, strict unitality, and the Stasheff identities of total arity <= arity_check.
inline Diagnostics verify_ainf(const AInfAlgebra& a, int arity_check) {
  if (arity_check < 1 || arity_check > 64) throw DomainError("arity_check must lie in [1, 64]");
  Diagnostics diag;
  const Field f = a.field();
  const auto& B = a.basis();
  const std::size_t dim = a.dim();

  for (const auto& [n, table] : a.tables())
    for (const auto& [t, v] : table) {
      int expect = 2 - n;
      for (auto x : t) expect += B[x].degree;
      for (std::size_t c = 0; c < dim; ++c)
        if (!v[c].is_zero() && B[c].degree != expect) {
          diag.add("degree: m" + std::to_string(n) + format_tuple(B, t) + " has a component on " + B[c].name +
                   " of degree " + std::to_string(B[c].degree) + ", expected " + std::to_string(expect));
          break;
        }
    }

  // strict unitality
  const Vec& u = a.unit();
  for (std::size_t x = 0; x < dim; ++x) {
    Vec ex = a.element(x);
    if (a.operation(2, {u, ex}) != ex || a.operation(2, {ex, u}) != ex)
      diag.add("unit: m2 with the unit does not fix " + B[x].name);
  }
  for (const auto& [n, table] : a.tables()) {
    if (n == 2) continue;
    for (int pos = 0; pos < n; ++pos) {
      OperationTable contracted;
      for (const auto& [t, v] : table) {
        if (u[t[static_cast<std::size_t>(pos)]].is_zero()) continue;
        Tuple rest = t;
        rest.erase(rest.begin() + pos);
        detail::accumulate(contracted, rest, u[t[static_cast<std::size_t>(pos)]], v);
      }
      detail::drop_zeros(contracted);
      if (!contracted.empty())
        diag.add("unit: m" + std::to_string(n) + " with the unit in slot " + std::to_string(pos + 1) +
                 " is nonzero on " + format_tuple(B, contracted.begin()->first));
    }
  }

  // Stasheff identities
  std::map<int, detail::OutputIndex> idx;
  for (const auto& [n, table] : a.tables()) idx[n] = detail::index_by_output(table, dim);
  for (int N = 1; N <= arity_check; ++N) {
    OperationTable acc;
    for (const auto& [o, outer] : a.tables()) {
      int s = N - o + 1;
      if (s < 1 || !idx.count(s)) continue;
      for (int r = 0; r < o; ++r) {
        int t = o - 1 - r;
        long base = r + static_cast<long>(s) * t;
        detail::compose_into(acc, outer, static_cast<std::size_t>(r), a.table(s), idx.at(s), Scalar::one(f),
                             [&](const Tuple& key) {
                               long e = base;
                               for (int j = 0; j < r; ++j) e += static_cast<long>(s) * B[key[static_cast<std::size_t>(j)]].degree;
                               return e;
                             });
      }
    }
    detail::drop_zeros(acc);
    if (!acc.empty())
      diag.add("stasheff: identity of arity " + std::to_string(N) + " fails on " + format_tuple(B, acc.begin()->first) +
               ", defect " + format_element(B, acc.begin()->second));
  }
  return diag;
}

/// Largest arity that checking the identities can involve when m_n = 0 above max_arity.
inline int default_arity_check(const AInfAlgebra& a) { return std::max(3, 2 * std::max(a.max_arity(), 2) - 1); }

/// n2 = n0 + 3, after checking that no stored m_n with n > n2 is nonzero.
inline int arity_vanishing_bound(const AInfAlgebra& a) {
  if (!a.connective()) throw DomainError("connective input required");
  int n2 = a.n0() + 3;
  for (const auto& [n, table] : a.tables())
    if (n > n2 && !table.empty())
      throw DomainError("m" + std::to_string(n) + " is nonzero although arities above n0 + 3 = " + std::to_string(n2) +
                        " must vanish for connective input");
  return n2;
}

// ---- shifted (bar) form ---------------------------------------------------------------------------

namespace detail {

inline long shift_sign(const std::vector<BasisElement>& basis, const Tuple& t) {
  long e = 0;
  const long n = static_cast<long>(t.size());
  for (long j = 0; j < n; ++j) e += (n - 1 - j) * (basis[t[static_cast<std::size_t>(j)]].degree - 1);
  return e;
}

}  // namespace detail

/// b_n from m_n (the sign is an involution, so the same map converts back).
inline OperationTables to_shifted(const std::vector<BasisElement>& basis, const OperationTables& m) {
  OperationTables b;
  for (const auto& [n, table] : m)
    for (const auto& [t, v] : table) {
      long e = detail::shift_sign(basis, t);
      b[n][t] = e % 2 ? scaled(Scalar(v.front().field(), -1L), v) : v;
    }
  return b;
}

inline OperationTables from_shifted(const std::vector<BasisElement>& basis, const OperationTables& b) {
  return to_shifted(basis, b);
}

/// The bar identities sum b(1^r (x) b_s (x) 1^t) = 0 up to total arity arity_check; first failing tuple if any.
inline std::optional<std::string> check_shifted_identities(const std::vector<BasisElement>& basis, Field f,
                                                           const OperationTables& b, int arity_check) {
  const std::size_t dim = basis.size();
  std::map<int, detail::OutputIndex> idx;
  for (const auto& [n, table] : b) idx[n] = detail::index_by_output(table, dim);
  for (int N = 1; N <= arity_check; ++N) {
    OperationTable acc;
    for (const auto& [o, outer] : b) {
      int s = N - o + 1;
      if (s < 1 || !idx.count(s)) continue;
      for (int r = 0; r < o; ++r)
        detail::compose_into(acc, outer, static_cast<std::size_t>(r), b.at(s), idx.at(s), Scalar::one(f), [&](const Tuple& key) {
          long e = 0;
          for (int j = 0; j < r; ++j) e += basis[key[static_cast<std::size_t>(j)]].degree - 1;
          return e;
        });
    }
    detail::drop_zeros(acc);
    if (!acc.empty()) return "arity " + std::to_string(N) + " on " + format_tuple(basis, acc.begin()->first);
  }
  return std::nullopt;
}

/// Transport of a shifted structure b along F = id + phi (phi of arity k >= 2 and degree 0):
/// returns b' with F o b' = b o F, computed for arities <= cap.
inline OperationTables gauge_shifted(const std::vector<BasisElement>& basis, Field f, const OperationTables& b, int k,
                                     const OperationTable& phi, int cap) {
  const std::size_t dim = basis.size();
  if (k < 2) throw std::invalid_argument("gauge components start at arity 2");
  OperationTables out;
  const auto phi_idx = detail::index_by_output(phi, dim);
  auto sdeg = [&](std::uint32_t x) { return static_cast<long>(basis[x].degree) - 1; };

  for (int N = 1; N <= cap; ++N) {
    OperationTable acc;
    // b_j(F_{i_1} (x) ... (x) F_{i_j}) with each i in {1, k}
    for (const auto& [j, table] : b) {
      if (j > N) continue;
      if ((N - j) % (k - 1) != 0) continue;
      int q = (N - j) / (k - 1);
      if (q > j) continue;
      // choose q slots for phi, substituted right to left so earlier positions stay valid
      std::vector<int> slots(static_cast<std::size_t>(q));
      auto choose = [&](auto&& self, int start, int depth) -> void {
        if (depth == q) {
          OperationTable cur = table;
          for (int d = q - 1; d >= 0; --d) {
            OperationTable next;
            detail::compose_into(next, cur, static_cast<std::size_t>(slots[static_cast<std::size_t>(d)]), phi, phi_idx,
                                 Scalar::one(f), [](const Tuple&) { return 0L; });
            cur = std::move(next);
          }
          for (const auto& [t, v] : cur) detail::accumulate(acc, t, Scalar::one(f), v);
          return;
        }
        for (int s = start; s < j; ++s) {
          slots[static_cast<std::size_t>(depth)] = s;
          self(self, s + 1, depth + 1);
        }
      };
      choose(choose, 0, 0);
    }
    // minus phi(1^r (x) b'_s (x) 1^t), s = N - k + 1
    int s = N - k + 1;
    if (s >= 1 && s < N && out.count(s)) {
      auto inner_idx = detail::index_by_output(out.at(s), dim);
      for (int r = 0; r < k; ++r)
        detail::compose_into(acc, phi, static_cast<std::size_t>(r), out.at(s), inner_idx, Scalar(f, -1L), [&](const Tuple& key) {
          long e = 0;
          for (int i = 0; i < r; ++i) e += sdeg(key[static_cast<std::size_t>(i)]);
          return e;
        });
    }
    detail::drop_zeros(acc);
    if (!acc.empty()) out[N] = std::move(acc);
  }
  return out;
}

struct GaugeCorrection {
  int arity = 0;          // arity of the component phi
  OperationTable phi;     // shifted convention, degree 0
};

struct NormalizationResult {
  AInfAlgebra algebra;
  std::vector<GaugeCorrection> corrections;
  int cap = 0;
};

/// Basis positions of the splitting S: the unit idempotents, which must be basis vectors.
inline std::vector<std::uint32_t> splitting_indices(const AInfAlgebra& a) {
  std::vector<std::uint32_t> out;
  for (const auto& e : a.idempotents()) {
    std::optional<std::uint32_t> hit;
    for (std::uint32_t i = 0; i < a.dim(); ++i)
      if (e == a.element(i)) hit = i;
    if (!hit) throw DomainError("the splitting must be spanned by basis idempotents");
    out.push_back(*hit);
  }
  return out;
}

/// True when every m_n (n >= 3) vanishes on tuples containing an element of S.
inline std::optional<std::string> unitality_defect(const AInfAlgebra& a, const std::vector<std::uint32_t>& s) {
  std::set<std::uint32_t> sset(s.begin(), s.end());
  for (const auto& [n, table] : a.tables()) {
    if (n < 3) continue;
    for (const auto& [t, v] : table)
      for (auto x : t)
        if (sset.count(x)) return "m" + std::to_string(n) + format_tuple(a.basis(), t) + " = " + format_element(a.basis(), v);
  }
  return std::nullopt;
}

namespace detail {

/// Checks Λ = S ⊕ J with S spanned by the given basis idempotents, one per class.
inline void require_basic_splitting(const AInfAlgebra& a, const std::vector<std::uint32_t>& s) {
  GradedAlgebra under = a.underlying();
  if (!under.connective()) return;  // outside the connective case only the idempotent data is checked
  auto rad = graded_radical(under);
  Subspace sp(a.field(), a.dim());
  for (auto i : s) sp.insert(a.element(i));
  if (!sp.intersect(rad.J).is_zero() || sp.dim() + rad.J.dim() != a.dim() ||
      rad.idempotents.class_count != rad.idempotents.primitive.size())
    throw DomainError("non-basic input: the unit idempotents do not split off the radical");
}

}  // namespace detail

/// Gauge-equivalent structure with m_n(..., S, ...) = 0 for every n >= 3, computed up to arity cap.
inline NormalizationResult normalize_unitality(const AInfAlgebra& a, const std::vector<std::uint32_t>& s, int cap) {
  if (!a.minimal()) throw DomainError("normalization needs a minimal structure (m1 = 0)");
  detail::require_basic_splitting(a, s);
  const Field f = a.field();
  const auto& basis = a.basis();
  const std::size_t dim = a.dim();
  std::set<std::uint32_t> sset(s.begin(), s.end());
  auto has_s = [&](const Tuple& t) {
    for (auto x : t)
      if (sset.count(x)) return true;
    return false;
  };
  auto sdeg = [&](std::uint32_t x) { return static_cast<long>(basis[x].degree) - 1; };

  NormalizationResult res;
  res.cap = cap;
  OperationTables b = to_shifted(basis, a.tables());

  for (int n = 3; n <= cap; ++n) {
    const int k = n - 1;
    const OperationTable& b2 = b.count(2) ? b.at(2) : OperationTable{};
    std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, const Vec*>>> by_first, by_second;
    for (const auto& [t, v] : b2) {
      by_first[t[0]].emplace_back(t[1], &v);
      by_second[t[1]].emplace_back(t[0], &v);
    }
    auto b2_idx = detail::index_by_output(b2, dim);

    // Contribution of the unknown phi(tau) = e_c to b'_n = b_n + b2(phi,1) + b2(1,phi) - sum phi(1,b2,1).
    using Unknown = std::pair<Tuple, std::uint32_t>;
    using Row = std::pair<Tuple, std::uint32_t>;
    auto contribution = [&](const Unknown& u) {
      std::map<Row, Scalar> out;
      auto add = [&](const Tuple& key, std::uint32_t c, const Scalar& val) {
        if (val.is_zero()) return;
        auto [it, fresh] = out.try_emplace({key, c}, Scalar::zero(f));
        it->second += val;
      };
      const auto& [tau, c] = u;
      if (auto it = by_first.find(c); it != by_first.end())
        for (const auto& [x, v] : it->second) {
          Tuple key = tau;
          key.push_back(x);
          for (std::uint32_t o = 0; o < dim; ++o) add(key, o, (*v)[o]);
        }
      if (auto it = by_second.find(c); it != by_second.end())
        for (const auto& [x, v] : it->second) {
          Tuple key{x};
          key.insert(key.end(), tau.begin(), tau.end());
          for (std::uint32_t o = 0; o < dim; ++o) add(key, o, (*v)[o]);
        }
      long before = 0;
      for (int r = 0; r < k; ++r) {
        for (const auto& [sigma, coef] : b2_idx[tau[static_cast<std::size_t>(r)]]) {
          Tuple key(tau.begin(), tau.begin() + r);
          key.insert(key.end(), sigma->begin(), sigma->end());
          key.insert(key.end(), tau.begin() + r + 1, tau.end());
          add(key, c, -(sign_scalar(f, before) * coef));
        }
        before += sdeg(tau[static_cast<std::size_t>(r)]);
      }
      return out;
    };
    // Unknowns that can reach a given row.
    auto unknowns_of = [&](const Row& row) {
      std::vector<Unknown> out;
      const auto& [rho, c] = row;
      if (auto it = by_second.find(rho.back()); it != by_second.end())
        for (const auto& [x, v] : it->second)
          if (!(*v)[c].is_zero()) out.push_back({Tuple(rho.begin(), rho.end() - 1), x});
      if (auto it = by_first.find(rho.front()); it != by_first.end())
        for (const auto& [x, v] : it->second)
          if (!(*v)[c].is_zero()) out.push_back({Tuple(rho.begin() + 1, rho.end()), x});
      for (int r = 0; r + 1 < n; ++r) {
        auto it = b2.find(Tuple{rho[static_cast<std::size_t>(r)], rho[static_cast<std::size_t>(r) + 1]});
        if (it == b2.end()) continue;
        for (std::uint32_t y = 0; y < dim; ++y) {
          if (it->second[y].is_zero()) continue;
          Tuple tau(rho.begin(), rho.begin() + r);
          tau.push_back(y);
          tau.insert(tau.end(), rho.begin() + r + 2, rho.end());
          out.push_back({tau, c});
        }
      }
      // degree 0 in the shifted grading
      std::vector<Unknown> ok;
      for (auto& u : out) {
        long d = 0;
        for (auto x : u.first) d += sdeg(x);
        if (d == sdeg(u.second)) ok.push_back(std::move(u));
      }
      return ok;
    };

    const OperationTable& bn = b.count(n) ? b.at(n) : OperationTable{};
    std::map<Row, std::size_t> rows;
    std::map<Unknown, std::size_t> cols;
    std::vector<std::map<Row, Scalar>> col_data;
    std::deque<Row> queue;
    auto add_row = [&](const Row& r) {
      if (rows.emplace(r, rows.size()).second) queue.push_back(r);
    };
    for (const auto& [t, v] : bn) {
      if (!has_s(t)) continue;
      for (std::uint32_t c = 0; c < dim; ++c)
        if (!v[c].is_zero()) add_row({t, c});
    }
    if (rows.empty()) continue;
    while (!queue.empty()) {
      Row r = queue.front();
      queue.pop_front();
      for (auto& u : unknowns_of(r)) {
        if (cols.count(u)) continue;
        cols.emplace(u, cols.size());
        col_data.push_back(contribution(u));
        for (const auto& [row, val] : col_data.back())
          if (has_s(row.first)) add_row(row);
      }
    }

    Matrix sys(f, rows.size(), cols.size());
    Vec rhs = zero_vec(f, rows.size());
    for (const auto& [row, ri] : rows) {
      auto it = bn.find(row.first);
      if (it != bn.end()) rhs[ri] = -it->second[row.second];
    }
    for (std::size_t ci = 0; ci < col_data.size(); ++ci)
      for (const auto& [row, val] : col_data[ci]) {
        auto it = rows.find(row);
        if (it != rows.end()) sys(it->second, ci) += val;
      }
    auto sol = solve(sys, rhs);
    if (!sol) throw DomainError("unitality normalization: no gauge correction exists at arity " + std::to_string(n));

    OperationTable phi;
    for (const auto& [u, ci] : cols) {
      if ((*sol)[ci].is_zero()) continue;
      detail::accumulate(phi, u.first, (*sol)[ci], unit_vec(f, dim, u.second));
    }
    detail::drop_zeros(phi);
    if (phi.empty()) continue;
    b = gauge_shifted(basis, f, b, k, phi, cap);
    res.corrections.push_back({k, std::move(phi)});
  }

  res.algebra = a.with_tables(from_shifted(basis, b));
  if (auto d = unitality_defect(res.algebra, s)) throw std::logic_error("normalization left " + *d);
  return res;
}

/// Exports the structure as a presentation: vertex tags where the unit products are those of a path
/// algebra, explicit m2 entries otherwise, then the differential and all higher tables.
inline Presentation to_presentation(const AInfAlgebra& a, const std::string& kind) {
  Presentation p;
  p.field = a.field();
  p.basis = a.basis();
  p.kind = kind;
  const std::size_t dim = a.dim();
  std::vector<std::uint32_t> units = splitting_indices(a);
  std::set<std::uint32_t> unit_set(units.begin(), units.end());
  for (auto u : units) p.unit.push_back(a.basis()[u].name);

  GradedAlgebra under = a.underlying();
  const Vec zero = zero_vec(a.field(), dim);
  bool tags_ok = true;
  for (std::uint32_t x = 0; x < dim; ++x) {
    auto& b = p.basis[x];
    b.source.reset();
    b.target.reset();
    if (unit_set.count(x) || units.size() == 1) continue;
    for (auto u : units) {
      if (under.product(u, x) == a.element(x)) b.source = a.basis()[u].name;
      if (under.product(x, u) == a.element(x)) b.target = a.basis()[u].name;
    }
    bool exact = b.source && b.target;
    for (auto u : units) {
      if (!exact) break;
      exact = under.product(u, x) == (a.basis()[u].name == *b.source ? a.element(x) : zero) &&
              under.product(x, u) == (a.basis()[u].name == *b.target ? a.element(x) : zero);
    }
    tags_ok = tags_ok && exact;
  }
  for (std::uint32_t u : units)
    for (std::uint32_t v : units) tags_ok = tags_ok && under.product(u, v) == (u == v ? a.element(u) : zero);
  if (!tags_ok)
    for (auto& b : p.basis) b.source.reset(), b.target.reset();

  for (std::uint32_t i = 0; i < dim; ++i)
    for (std::uint32_t j = 0; j < dim; ++j) {
      const Vec& v = under.product(i, j);
      bool unit_pair = unit_set.count(i) || unit_set.count(j);
      if (unit_pair ? tags_ok : is_zero(v)) continue;
      p.m[2].push_back({{a.basis()[i].name, a.basis()[j].name}, terms_of(a.basis(), v)});
    }
  for (const auto& [t, v] : a.table(1)) p.d.push_back({a.basis()[t[0]].name, terms_of(a.basis(), v)});
  for (const auto& [n, table] : a.tables()) {
    if (n < 3) continue;
    for (const auto& [t, v] : table) {
      std::vector<std::string> args;
      for (auto x : t) args.push_back(a.basis()[x].name);
      p.m[n].push_back({args, terms_of(a.basis(), v)});
    }
  }
  return p;
}

}  // namespace ainf
