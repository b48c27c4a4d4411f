#pragma once

// Planar rooted trees with n leaves and internal arities >= 2: the operation sets Psi_n.

#include <ainf/matrix.hpp>

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ainf {

/// A tree stored as its preorder arity code: 0 is a leaf, r >= 2 an internal node with r children.
class PlanarTree {
 public:
  PlanarTree() : code_{0} {}
  explicit PlanarTree(std::vector<std::uint8_t> code) : code_(std::move(code)) {
    std::size_t end = parse(0);
    if (end != code_.size()) throw std::invalid_argument("planar tree code has trailing entries");
  }

  static PlanarTree leaf() { return PlanarTree(); }
  static PlanarTree node(const std::vector<PlanarTree>& children) {
    if (children.size() < 2) throw std::invalid_argument("internal nodes need arity >= 2");
    if (children.size() > 255) throw std::invalid_argument("arity too large");
    std::vector<std::uint8_t> code{static_cast<std::uint8_t>(children.size())};
    for (const auto& c : children) code.insert(code.end(), c.code_.begin(), c.code_.end());
    return PlanarTree(std::move(code));
  }
  /// The corolla m_r.
  static PlanarTree corolla(std::size_t r) { return node(std::vector<PlanarTree>(r)); }

  [[nodiscard]] const std::vector<std::uint8_t>& code() const { return code_; }
  [[nodiscard]] bool is_leaf() const { return code_.front() == 0; }
  [[nodiscard]] std::size_t root_arity() const { return code_.front(); }

  [[nodiscard]] std::size_t leaves() const {
    std::size_t n = 0;
    for (auto c : code_) n += c == 0;
    return n;
  }

  [[nodiscard]] std::vector<PlanarTree> children() const {
    std::vector<PlanarTree> out;
    std::size_t pos = 1;
    for (std::size_t k = 0; k < root_arity(); ++k) {
      std::size_t end = subtree_end(pos);
      out.emplace_back(std::vector<std::uint8_t>(code_.begin() + static_cast<std::ptrdiff_t>(pos),
                                                 code_.begin() + static_cast<std::ptrdiff_t>(end)));
      pos = end;
    }
    return out;
  }

  /// "m3(-,m2(-,-),-)"; the bare leaf is "id".
  [[nodiscard]] std::string to_string() const {
    if (is_leaf()) return "id";
    std::size_t pos = 0;
    return render(pos);
  }

  friend bool operator==(const PlanarTree& a, const PlanarTree& b) { return a.code_ == b.code_; }
  friend bool operator<(const PlanarTree& a, const PlanarTree& b) { return a.code_ < b.code_; }

 private:
  std::size_t parse(std::size_t pos) const {
    if (pos >= code_.size()) throw std::invalid_argument("planar tree code is truncated");
    std::uint8_t r = code_[pos++];
    if (r == 1) throw std::invalid_argument("internal nodes need arity >= 2");
    for (std::uint8_t k = 0; k < r; ++k) pos = parse(pos);
    return pos;
  }
  std::size_t subtree_end(std::size_t pos) const {
    std::size_t pending = 1;
    while (pending) pending += static_cast<std::size_t>(code_[pos++]) - 1;
    return pos;
  }
  std::string render(std::size_t& pos) const {
    std::uint8_t r = code_[pos++];
    if (r == 0) return "-";
    std::string s = "m" + std::to_string(r) + "(";
    for (std::uint8_t k = 0; k < r; ++k) {
      if (k) s += ",";
      s += render(pos);
    }
    return s + ")";
  }

  std::vector<std::uint8_t> code_;
};

struct TreeStats {
  std::size_t v = 0;           // internal vertices
  std::size_t abs_degree = 0;  // |sum (2 - arity)|
};

/// v and |psi|; the identity n = v + |psi| + 1 is checked before returning.
inline TreeStats tree_stats(const PlanarTree& t) {
  TreeStats s;
  long signed_degree = 0;
  std::size_t excess = 0;
  for (auto r : t.code()) {
    if (r == 0) continue;
    ++s.v;
    signed_degree += 2 - static_cast<long>(r);
    excess += r - 2u;
  }
  s.abs_degree = static_cast<std::size_t>(signed_degree < 0 ? -signed_degree : signed_degree);
  if (s.abs_degree != excess || t.leaves() != s.v + s.abs_degree + 1)
    throw std::logic_error("tree statistics violate n = v + |psi| + 1 for " + t.to_string());
  return s;
}

/// Streams the preorder codes of all trees with n leaves and arities in [2, max_arity], in increasing
/// order (root arity first, then children lexicographically). visit returns false to stop.
template <class Visit>
void for_each_code(std::size_t n, std::size_t max_arity, Visit&& visit) {
  if (n == 0) throw std::invalid_argument("trees need at least one leaf");
  max_arity = std::min<std::size_t>(std::max<std::size_t>(max_arity, 2), std::min<std::size_t>(n, 255));
  std::vector<std::uint8_t> code;
  code.reserve(2 * n);
  bool stop = false;
  // pending: subtrees still to be written; left: leaves still to be placed (left >= pending)
  auto rec = [&](auto&& self, std::size_t pending, std::size_t left) -> void {
    if (pending == 0) {
      if (left == 0) stop = !visit(static_cast<const std::vector<std::uint8_t>&>(code));
      return;
    }
    if (pending > 1 || left == 1) {
      code.push_back(0);
      self(self, pending - 1, left - 1);
      code.pop_back();
    }
    for (std::size_t r = 2; r <= max_arity && pending + r - 1 <= left && !stop; ++r) {
      code.push_back(static_cast<std::uint8_t>(r));
      self(self, pending + r - 1, left);
      code.pop_back();
    }
  };
  rec(rec, 1, n);
}

template <class Visit>
void for_each_tree(std::size_t n, std::size_t max_arity, Visit&& visit) {
  for_each_code(n, max_arity, [&](const std::vector<std::uint8_t>& code) { return visit(PlanarTree(code)); });
}

inline std::vector<PlanarTree> enumerate_psi(std::size_t n, std::size_t max_arity) {
  std::vector<PlanarTree> out;
  for_each_tree(n, max_arity, [&](const PlanarTree& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

/// |Psi_n| with arities in [2, max_arity], by dynamic programming over forests.
inline mpz_class count_trees(std::size_t n, std::size_t max_arity) {
  if (n == 0) throw std::invalid_argument("trees need at least one leaf");
  std::vector<mpz_class> trees(n + 1, 0);
  std::size_t rmax = std::min(max_arity, n);
  std::vector<std::vector<mpz_class>> forest(rmax + 1, std::vector<mpz_class>(n + 1, 0));
  forest[0][0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    for (std::size_t k = 2; k <= rmax; ++k)
      for (std::size_t last = 1; last < m; ++last) forest[k][m] += forest[k - 1][m - last] * trees[last];
    if (m == 1) {
      trees[m] = 1;
    } else {
      for (std::size_t k = 2; k <= rmax; ++k) trees[m] += forest[k][m];
    }
    if (rmax >= 1) forest[1][m] = trees[m];
  }
  return trees[n];
}

/// Degree of the composite operation: sum over internal nodes of (2 - arity).
inline long tree_degree(const PlanarTree& t) {
  long d = 0;
  for (auto r : t.code())
    if (r) d += 2 - static_cast<long>(r);
  return d;
}

namespace detail {

/// Splits a vector into homogeneous components keyed by degree.
template <class Alg>
std::map<int, Vec> homogeneous_parts(const Alg& alg, const Vec& v) {
  std::map<int, Vec> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    auto [it, fresh] = out.try_emplace(alg.degree(i), zero_vec(alg.field(), v.size()));
    it->second[i] = v[i];
  }
  return out;
}

template <class Alg>
Vec evaluate_homogeneous(const PlanarTree& t, const Alg& alg, const std::vector<Vec>& args, const std::vector<int>& degs,
                         std::size_t first) {
  if (t.is_leaf()) return args[first];
  const Field f = alg.field();
  std::vector<Vec> inputs;
  long sign = 0;
  int before = 0;
  std::size_t pos = first;
  for (const auto& child : t.children()) {
    sign += tree_degree(child) * before;
    std::size_t n = child.leaves();
    for (std::size_t k = 0; k < n; ++k) before += degs[pos + k];
    inputs.push_back(evaluate_homogeneous(child, alg, args, degs, pos));
    pos += n;
  }
  return scaled(sign_scalar(f, sign), alg.operation(static_cast<int>(t.root_arity()), inputs));
}

}  // namespace detail

/// psi(x_1, ..., x_n) built bottom-up from the operations m_r of alg, with Koszul signs
/// (-1)^{deg(psi_j) * (degrees of the inputs left of block j)} at every node.
/// Alg provides field(), dim(), degree(i) and operation(r, inputs).
template <class Alg>
Vec evaluate_tree(const PlanarTree& t, const Alg& alg, const std::vector<Vec>& args) {
  if (args.size() != t.leaves())
    throw std::invalid_argument("tree has " + std::to_string(t.leaves()) + " leaves but " + std::to_string(args.size()) +
                                " arguments were given");
  std::vector<std::map<int, Vec>> parts;
  for (const auto& a : args) parts.push_back(detail::homogeneous_parts(alg, a));
  Vec total = zero_vec(alg.field(), alg.dim());
  for (const auto& p : parts)
    if (p.empty()) return total;
  // iterate over all choices of homogeneous components
  std::vector<std::map<int, Vec>::const_iterator> it;
  for (const auto& p : parts) it.push_back(p.begin());
  while (true) {
    std::vector<Vec> chosen;
    std::vector<int> degs;
    for (const auto& i : it) {
      degs.push_back(i->first);
      chosen.push_back(i->second);
    }
    total = total + detail::evaluate_homogeneous(t, alg, chosen, degs, 0);
    std::size_t k = 0;
    while (k < it.size()) {
      if (++it[k] != parts[k].end()) break;
      it[k] = parts[k].begin();
      ++k;
    }
    if (k == it.size()) break;
  }
  return total;
}

}  // namespace ainf
