#pragma once

// Named, sparse description of an algebra as it appears in input files.

#include <ainf/graded_algebra.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ainf {

using Terms = std::vector<std::pair<std::string, Scalar>>;

struct DifferentialEntry {
  std::string arg;
  Terms value;
};

struct OperationEntry {
  std::vector<std::string> args;
  Terms value;
};

/// One algebra: basis, unit idempotents, optional differential, operation tables keyed by arity.
/// Products involving unit idempotents are implied by vertex tags unless listed explicitly.
struct Presentation {
  Field field;
  std::vector<BasisElement> basis;
  std::vector<std::string> unit;
  std::vector<DifferentialEntry> d;
  std::map<int, std::vector<OperationEntry>> m;
  std::optional<std::string> kind;     // "dg" or "ainf"
  std::vector<Terms> retraction;       // cocycle representatives; empty means automatic
  std::vector<std::string> assume;     // declared hypotheses, e.g. "smooth"

  [[nodiscard]] std::size_t index(const std::string& name) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].name == name) return i;
    throw DomainError("unknown basis name '" + name + "'");
  }

  [[nodiscard]] Vec vector(const Terms& t) const {
    Vec v = zero_vec(field, basis.size());
    for (const auto& [name, c] : t) {
      if (!(c.field() == field)) throw DomainError("coefficient for '" + name + "' is in the wrong field");
      v[index(name)] += c;
    }
    return v;
  }

  [[nodiscard]] bool is_ainf() const {
    if (kind) return *kind == "ainf";
    for (const auto& [n, entries] : m)
      if (n >= 3 && !entries.empty()) return true;
    return false;
  }

  [[nodiscard]] bool assumes(const std::string& what) const {
    return std::find(assume.begin(), assume.end(), what) != assume.end();
  }
};

inline Terms terms_of(const std::vector<BasisElement>& basis, const Vec& v) {
  Terms t;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) t.emplace_back(basis[i].name, v[i]);
  return t;
}

/// Structure constants for m2, filling in unit products from the vertex tags.
inline GradedAlgebra build_algebra(const Presentation& p) {
  const Field f = p.field;
  const std::size_t n = p.basis.size();
  std::vector<bool> is_unit(n, false);
  std::vector<Vec> idempotents;
  for (const auto& u : p.unit) {
    std::size_t i = p.index(u);
    if (is_unit[i]) throw DomainError("unit idempotent '" + u + "' listed twice");
    is_unit[i] = true;
    idempotents.push_back(unit_vec(f, n, i));
  }
  if (idempotents.empty()) throw DomainError("unit block is empty");
  for (const auto& b : p.basis)
    for (const auto* tag : {&b.source, &b.target})
      if (*tag && !is_unit[p.index(**tag)]) throw DomainError("vertex tag '" + **tag + "' on " + b.name + " is not a unit idempotent");

  std::vector<Vec> products(n * n, zero_vec(f, n));
  std::vector<bool> set(n * n, false);
  if (auto it = p.m.find(2); it != p.m.end()) {
    for (const auto& e : it->second) {
      if (e.args.size() != 2) throw DomainError("m2 entry with " + std::to_string(e.args.size()) + " arguments");
      std::size_t k = p.index(e.args[0]) * n + p.index(e.args[1]);
      if (set[k]) throw DomainError("duplicate m2 entry for (" + e.args[0] + "," + e.args[1] + ")");
      products[k] = p.vector(e.value);
      set[k] = true;
    }
  }

  const bool single_vertex = p.unit.size() == 1;
  for (std::size_t u = 0; u < n; ++u) {
    if (!is_unit[u]) continue;
    for (std::size_t x = 0; x < n; ++x) {
      const auto& bx = p.basis[x];
      const std::string& un = p.basis[u].name;
      auto implied = [&](bool left) -> Vec {
        if (is_unit[x]) return x == u ? unit_vec(f, n, x) : zero_vec(f, n);
        const auto& tag = left ? bx.source : bx.target;
        if (!tag) {
          if (single_vertex) return unit_vec(f, n, x);
          throw DomainError("element '" + bx.name + "' needs source/target tags (several unit idempotents)");
        }
        return *tag == un ? unit_vec(f, n, x) : zero_vec(f, n);
      };
      if (!set[u * n + x]) products[u * n + x] = implied(true);
      if (!set[x * n + u]) products[x * n + u] = implied(false);
      set[u * n + x] = set[x * n + u] = true;
    }
  }
  return GradedAlgebra(f, p.basis, std::move(products), std::move(idempotents));
}

}  // namespace ainf
