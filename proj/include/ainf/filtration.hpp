#pragma once

// The radical filtration F^k = sum_{n >= k} W_n with W_n = sum_{psi in Psi_n} psi(J^{(x)n}),
// computed by splitting trees at the root: W_1 = J, W_n = sum_r sum_{n_1+...+n_r = n} m_r(W_{n_1}, ..., W_{n_r}).

#include <ainf/ainf.hpp>
#include <ainf/trees.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace ainf {

/// An element of W_n together with the tree and J-basis inputs producing it (up to sign).
struct Word {
  Vec value;
  PlanarTree tree;
  std::vector<std::size_t> inputs;  // indices into the J basis
};

struct VanishingBound {
  int n0 = 0;
  std::size_t loewy = 0;
  long n1 = 0;
  long n2 = 0;
  long N = 0;
};

struct RadicalFiltration {
  Subspace J;
  std::vector<Vec> j_basis;
  std::vector<std::vector<Word>> words;  // words[n] spans W_n; words[0] unused
  std::vector<Subspace> layers;          // F^0 .. F^{k_max}
  std::size_t computed_through = 0;      // largest n with W_n computed
  std::optional<std::size_t> vanishes_from;  // proven: F^k = 0 for all k >= this
  std::optional<VanishingBound> bounds;

  [[nodiscard]] bool exact() const { return vanishes_from.has_value(); }
  [[nodiscard]] std::size_t k_max() const { return layers.size() - 1; }

  /// One word lying in F^k, if F^k is nonzero.
  [[nodiscard]] const Word* witness_in(std::size_t k) const {
    for (std::size_t n = std::max<std::size_t>(k, 1); n < words.size(); ++n)
      if (!words[n].empty()) return &words[n].front();
    return nullptr;
  }
};

/// J: the graded radical for connective input, the Jacobson radical of (Λ, m2) otherwise.
inline Subspace filtration_radical(const AInfAlgebra& a) {
  GradedAlgebra u = a.underlying();
  return u.connective() ? graded_radical(u).J : algebra_radical(u);
}

/// n1 = least integer > n0(l-1) + (l-2), n2 = n0 + 3, N = n1 + n1(n2-2) + 1.
inline VanishingBound vanishing_bound(const AInfAlgebra& a) {
  if (!a.connective()) throw DomainError("connective input required");
  GradedAlgebra u = a.underlying();
  VanishingBound b;
  b.n0 = a.n0();
  b.loewy = loewy_length(u, graded_radical(u).J);
  const long l = static_cast<long>(b.loewy);
  b.n1 = b.n0 * (l - 1) + (l - 2) + 1;
  if (b.n1 < 0) b.n1 = 0;
  b.n2 = b.n0 + 3;
  b.N = b.n1 + b.n1 * (b.n2 - 2) + 1;
  return b;
}

namespace detail {

/// All compositions of n into r positive parts whose word spaces are nonempty.
template <class Visit>
void for_each_composition(std::size_t n, std::size_t r, const std::vector<std::vector<Word>>& words, Visit&& visit) {
  std::vector<std::size_t> parts(r);
  auto rec = [&](auto&& self, std::size_t slot, std::size_t left) -> void {
    if (slot + 1 == r) {
      if (left < words.size() && !words[left].empty()) {
        parts[slot] = left;
        visit(parts);
      }
      return;
    }
    for (std::size_t p = 1; p + (r - slot - 1) <= left; ++p) {
      if (p >= words.size() || words[p].empty()) continue;
      parts[slot] = p;
      self(self, slot + 1, left - p);
    }
  };
  rec(rec, 0, n);
}

inline std::vector<Word> next_words(const AInfAlgebra& a, const std::vector<std::vector<Word>>& words, std::size_t n) {
  GeneratorSpan span(a.field(), a.dim());
  std::vector<Word> out;
  for (const auto& [r, table] : a.tables()) {
    if (r < 2 || table.empty() || static_cast<std::size_t>(r) > n) continue;
    for_each_composition(n, static_cast<std::size_t>(r), words, [&](const std::vector<std::size_t>& parts) {
      std::vector<std::size_t> pick(parts.size(), 0);
      while (true) {
        std::vector<Vec> args;
        for (std::size_t s = 0; s < parts.size(); ++s) args.push_back(words[parts[s]][pick[s]].value);
        Vec v = a.operation(r, args);
        if (!is_zero(v) && span.add(v)) {
          std::vector<PlanarTree> children;
          std::vector<std::size_t> inputs;
          for (std::size_t s = 0; s < parts.size(); ++s) {
            const Word& w = words[parts[s]][pick[s]];
            children.push_back(w.tree);
            inputs.insert(inputs.end(), w.inputs.begin(), w.inputs.end());
          }
          out.push_back({std::move(v), PlanarTree::node(children), std::move(inputs)});
        }
        std::size_t s = 0;
        while (s < pick.size() && ++pick[s] == words[parts[s]].size()) pick[s++] = 0;
        if (s == pick.size()) break;
      }
    });
  }
  return out;
}

}  // namespace detail

/// Layers F^0..F^{k_max}. Word spaces are computed until they provably vanish (W_n = 0 for all n in
/// (K, R K], R the largest arity) or up to n = R k_max; in the latter case the layers are lower bounds.
inline RadicalFiltration compute_filtration(const AInfAlgebra& a, std::size_t k_max) {
  if (!a.minimal()) throw DomainError("the filtration is defined for minimal structures (m1 = 0)");
  RadicalFiltration f;
  f.J = filtration_radical(a);
  f.j_basis = f.J.basis();
  const std::size_t R = static_cast<std::size_t>(std::max(a.max_arity(), 2));
  const std::size_t limit = std::max<std::size_t>(R * std::max<std::size_t>(k_max, 1), 1);

  f.words.resize(2);
  for (std::size_t i = 0; i < f.j_basis.size(); ++i) f.words[1].push_back({f.j_basis[i], PlanarTree::leaf(), {i}});
  std::size_t last_nonzero = f.words[1].empty() ? 0 : 1;
  std::size_t n = 1;
  while (true) {
    if (n >= R * last_nonzero) {  // W vanishes on (K, R K]
      f.vanishes_from = last_nonzero + 1;
      break;
    }
    if (n >= limit) break;
    ++n;
    f.words.push_back(detail::next_words(a, f.words, n));
    if (!f.words[n].empty()) last_nonzero = n;
  }
  f.computed_through = n;

  f.layers.assign(k_max + 1, Subspace(a.field(), a.dim()));
  f.layers[0] = Subspace::whole(a.field(), a.dim());
  Subspace acc(a.field(), a.dim());
  for (std::size_t m = f.words.size() - 1; m >= 1; --m) {
    for (const auto& w : f.words[m]) acc.insert(w.value);
    if (m <= k_max) f.layers[m] = acc;
  }
  if (a.connective() && f.vanishes_from) {
    try {
      f.bounds = vanishing_bound(a);
    } catch (const DomainError&) {
    }
  }
  return f;
}

namespace detail {

/// Nonzero values psi(x_1, ..., x_n) over all tuples of basis vectors of J, with the input degree sum.
inline std::vector<std::pair<Vec, int>> tree_values(const PlanarTree& t, const AInfAlgebra& a, const std::vector<Vec>& j_basis,
                                                    const std::vector<int>& j_degrees) {
  std::vector<std::pair<Vec, int>> out;
  if (t.is_leaf()) {
    for (std::size_t i = 0; i < j_basis.size(); ++i) out.emplace_back(j_basis[i], j_degrees[i]);
    return out;
  }
  const auto children = t.children();
  std::vector<std::vector<std::pair<Vec, int>>> parts;
  std::vector<long> child_degree;
  for (const auto& c : children) {
    parts.push_back(tree_values(c, a, j_basis, j_degrees));
    if (parts.back().empty()) return out;
    child_degree.push_back(tree_degree(c));
  }
  std::vector<std::size_t> pick(parts.size(), 0);
  const int r = static_cast<int>(parts.size());
  while (true) {
    std::vector<Vec> args;
    long sign = 0;
    int before = 0;
    for (std::size_t s = 0; s < parts.size(); ++s) {
      const auto& [v, d] = parts[s][pick[s]];
      sign += child_degree[s] * before;
      before += d;
      args.push_back(v);
    }
    Vec v = a.operation(r, args);
    if (!is_zero(v)) out.emplace_back(scaled(sign_scalar(a.field(), sign), std::move(v)), before);
    std::size_t s = parts.size();
    while (s > 0 && ++pick[s - 1] == parts[s - 1].size()) pick[--s] = 0;
    if (s == 0) break;
  }
  return out;
}

}  // namespace detail

/// W_n straight from the definition: every tree in Psi_n on every tuple of homogeneous J-basis vectors
/// (tuples on which a subtree already vanishes are skipped).
inline Subspace tree_sum_space(const AInfAlgebra& a, const std::vector<Vec>& j_basis, std::size_t n) {
  Subspace out(a.field(), a.dim());
  if (j_basis.empty()) return out;
  GradedAlgebra u = a.underlying();
  std::vector<int> degrees;
  for (const auto& v : j_basis) {
    auto d = u.degree_of(v);
    if (!d) throw DomainError("radical basis vector is not homogeneous");
    degrees.push_back(*d);
  }
  const std::size_t R = static_cast<std::size_t>(std::max(a.max_arity(), 2));
  for_each_tree(n, R, [&](const PlanarTree& t) {
    for (const auto& [v, d] : detail::tree_values(t, a, j_basis, degrees)) out.insert(v);
    return true;
  });
  return out;
}

struct Verdict {
  bool holds = true;
  std::string witness;  // first violation, empty when holds
};

/// m_n(J, ..., J) ⊆ J for every stored arity, on all tuples of J-basis vectors.
inline Verdict check_radical_preserved(const AInfAlgebra& a) {
  const Subspace J = filtration_radical(a);
  const auto& jb = J.basis();
  Verdict v;
  if (jb.empty()) return v;
  for (const auto& [n, table] : a.tables()) {
    if (table.empty()) continue;
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    while (true) {
      std::vector<Vec> args;
      for (auto i : pick) args.push_back(jb[i]);
      Vec out = a.operation(n, args);
      if (!J.contains(out)) {
        std::string s = "m" + std::to_string(n) + "(";
        for (std::size_t k = 0; k < args.size(); ++k) s += (k ? ", " : "") + format_element(a.basis(), args[k]);
        return {false, s + ") = " + format_element(a.basis(), out) + " is not in J"};
      }
      std::size_t s = pick.size();
      while (s > 0 && ++pick[s - 1] == jb.size()) pick[--s] = 0;
      if (s == 0) break;
    }
  }
  return v;
}

inline Verdict check_f1_equals_j(const RadicalFiltration& f) {
  if (f.layers.size() < 2) throw DomainError("filtration computed without F^1");
  if (f.layers[1] == f.J) return {};
  return {false, "dim F^1 = " + std::to_string(f.layers[1].dim()) + ", dim J = " + std::to_string(f.J.dim()) +
                     (f.exact() ? "" : " (F^1 is a lower bound)")};
}

/// m_v(F^{i_1}, ..., F^{i_v}) ⊆ F^{i_1 + ... + i_v} for v <= v_max and index sums <= k_max.
inline Verdict check_compatibility(const AInfAlgebra& a, const RadicalFiltration& f, std::size_t v_max) {
  if (!a.minimal()) throw DomainError("the filtration is defined for minimal structures (m1 = 0)");
  if (auto d = unitality_defect(a, splitting_indices(a)))
    throw DomainError("input is not normalized (" + *d + "); run normalize_unitality first");
  const std::size_t k_max = f.k_max();
  for (const auto& [v, table] : a.tables()) {
    if (static_cast<std::size_t>(v) > v_max || table.empty()) continue;
    std::vector<std::size_t> idx(static_cast<std::size_t>(v), 0);
    auto rec = [&](auto&& self, std::size_t slot, std::size_t sum) -> std::optional<std::string> {
      if (slot == idx.size()) {
        const Subspace& target = f.layers[sum];
        std::vector<std::size_t> pick(idx.size(), 0);
        for (auto i : idx)
          if (f.layers[i].is_zero()) return std::nullopt;
        while (true) {
          std::vector<Vec> args;
          for (std::size_t s = 0; s < idx.size(); ++s) args.push_back(f.layers[idx[s]].basis()[pick[s]]);
          Vec out = a.operation(v, args);
          if (!target.contains(out)) {
            std::string w = "m" + std::to_string(v) + "(";
            for (std::size_t s = 0; s < idx.size(); ++s) w += (s ? ", " : "") + std::string("F^") + std::to_string(idx[s]);
            w += ") on (";
            for (std::size_t s = 0; s < args.size(); ++s) w += (s ? ", " : "") + format_element(a.basis(), args[s]);
            return w + ") gives " + format_element(a.basis(), out) + ", not in F^" + std::to_string(sum);
          }
          std::size_t s = pick.size();
          while (s > 0 && ++pick[s - 1] == f.layers[idx[s - 1]].dim()) pick[--s] = 0;
          if (s == 0) break;
        }
        return std::nullopt;
      }
      for (std::size_t i = 0; sum + i <= k_max; ++i) {
        idx[slot] = i;
        if (auto w = self(self, slot + 1, sum + i)) return w;
      }
      return std::nullopt;
    };
    if (auto w = rec(rec, 0, 0)) return {false, *w};
  }
  return {};
}

struct InfinitudeVerdict {
  bool finite = false;
  std::size_t k = 0;              // Finite: first vanishing layer; otherwise the horizon
  std::optional<Word> witness;    // nonzero element of F^horizon
  std::size_t witness_arity = 0;  // n with witness in W_n
};

inline InfinitudeVerdict detect_infinite(const AInfAlgebra& a, std::size_t horizon) {
  RadicalFiltration f = compute_filtration(a, horizon);
  InfinitudeVerdict v;
  if (f.vanishes_from) {
    v.finite = true;
    v.k = *f.vanishes_from;
    return v;
  }
  v.k = horizon;
  for (std::size_t n = std::max<std::size_t>(horizon, 1); n < f.words.size(); ++n)
    if (!f.words[n].empty()) {
      v.witness = f.words[n].front();
      v.witness_arity = n;
      break;
    }
  return v;
}

}  // namespace ainf
