#pragma once

#include <ainf/dg.hpp>
#include <ainf/io.hpp>

#include <algorithm>
#include <random>
#include <string>

inline std::string corpus_path(const std::string& name) { return std::string(AINF_CORPUS_DIR) + "/" + name + ".alg"; }

inline ainf::Presentation corpus(const std::string& name) { return ainf::load_presentation(corpus_path(name)); }

inline ainf::GradedAlgebra corpus_algebra(const std::string& name) { return ainf::build_algebra(corpus(name)); }

inline ainf::Scalar small_scalar(ainf::Field f, std::mt19937& rng, int range = 3) {
  return ainf::Scalar(f, static_cast<long>(std::uniform_int_distribution<int>(-range, range)(rng)));
}

// Path algebra of a random quiver modulo paths of length >= max_len, arrows in degrees min_degree..0.
inline ainf::GradedAlgebra random_truncated_path_algebra(ainf::Field f, std::mt19937& rng, std::size_t max_len = 3,
                                                         int min_degree = -2) {
  using namespace ainf;
  std::uniform_int_distribution<int> nv(1, 3), na(1, 4), deg(min_degree, 0);
  const int vertices = nv(rng), arrows = na(rng);
  struct Arrow {
    int s, t, d;
  };
  std::vector<Arrow> arr;
  for (int k = 0; k < arrows; ++k)
    arr.push_back({std::uniform_int_distribution<int>(0, vertices - 1)(rng), std::uniform_int_distribution<int>(0, vertices - 1)(rng),
                   deg(rng)});
  struct Path {
    int s, t, d;
    std::vector<int> word;
  };
  std::vector<Path> paths;
  for (int v = 0; v < vertices; ++v) paths.push_back({v, v, 0, {}});
  std::vector<Path> frontier;
  for (int k = 0; k < arrows; ++k) frontier.push_back({arr[k].s, arr[k].t, arr[k].d, {k}});
  while (!frontier.empty() && frontier.front().word.size() < max_len) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      paths.push_back(p);
      for (int k = 0; k < arrows; ++k)
        if (arr[k].s == p.t) {
          Path q = p;
          q.t = arr[k].t;
          q.d += arr[k].d;
          q.word.push_back(k);
          next.push_back(q);
        }
    }
    frontier = std::move(next);
  }
  const std::size_t n = paths.size();
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < n; ++i) {
    std::string name = paths[i].word.empty() ? "e" + std::to_string(paths[i].s) : "p";
    for (int k : paths[i].word) name += "_" + std::to_string(k);
    basis.push_back({name, paths[i].d, std::nullopt, std::nullopt});
  }
  std::vector<Vec> products(n * n, zero_vec(f, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (paths[i].t != paths[j].s) continue;
      if (paths[i].word.empty()) {
        products[i * n + j] = unit_vec(f, n, j);
        continue;
      }
      if (paths[j].word.empty()) {
        products[i * n + j] = unit_vec(f, n, i);
        continue;
      }
      std::vector<int> w = paths[i].word;
      w.insert(w.end(), paths[j].word.begin(), paths[j].word.end());
      for (std::size_t k = 0; k < n; ++k)
        if (paths[k].word == w && paths[k].s == paths[i].s) products[i * n + j] = unit_vec(f, n, k);
    }
  std::vector<Vec> idem;
  for (int v = 0; v < vertices; ++v) idem.push_back(unit_vec(f, n, static_cast<std::size_t>(v)));
  return GradedAlgebra(f, std::move(basis), std::move(products), std::move(idem));
}

// B (x) k[y]/(y^2) with |y| = -1, y graded-central and d(y) = z for a random degree-0 central z of B.
inline ainf::DgAlgebra random_connective_dga(ainf::Field f, std::mt19937& rng) {
  using namespace ainf;
  GradedAlgebra b = random_truncated_path_algebra(f, rng, 3, -1);
  const std::size_t n = b.dim();
  // mostly z in the radical, so that cohomology survives; sometimes anywhere in the center
  const bool radical_only = std::uniform_int_distribution<int>(0, 3)(rng) != 0;
  std::vector<std::size_t> zero;
  for (auto i : b.indices_in_degree(0)) {
    bool vertex = std::find(b.idempotents().begin(), b.idempotents().end(), b.element(i)) != b.idempotents().end();
    if (!(radical_only && vertex)) zero.push_back(i);
  }
  // degree-0 center: z b_j = b_j z for every basis element
  std::vector<Vec> rows;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t out = 0; out < n; ++out) {
      Vec r = zero_vec(f, zero.size());
      for (std::size_t k = 0; k < zero.size(); ++k) r[k] = b.product(zero[k], j)[out] - b.product(j, zero[k])[out];
      rows.push_back(std::move(r));
    }
  Vec z = zero_vec(f, n);
  for (const auto& c : kernel_basis(Matrix::from_rows(f, rows, zero.size())))
    axpy(z, small_scalar(f, rng, 2), [&] {
      Vec v = zero_vec(f, n);
      for (std::size_t k = 0; k < zero.size(); ++k) v[zero[k]] = c[k];
      return v;
    }());

  // index i: b_i, index n + i: b_i y
  std::vector<BasisElement> basis = b.basis();
  for (std::size_t i = 0; i < n; ++i) basis.push_back({b.basis()[i].name + "y", b.degree(i) - 1, std::nullopt, std::nullopt});
  std::vector<Vec> products(4 * n * n, zero_vec(f, 2 * n));
  for (std::size_t e1 = 0; e1 < 2; ++e1)
    for (std::size_t e2 = 0; e2 < 2; ++e2) {
      if (e1 && e2) continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Vec v = zero_vec(f, 2 * n);
          Scalar sign = sign_scalar(f, e1 ? b.degree(j) : 0);
          for (std::size_t k = 0; k < n; ++k) v[k + (e1 + e2) * n] = sign * b.product(i, j)[k];
          products[(i + e1 * n) * 2 * n + (j + e2 * n)] = std::move(v);
        }
    }
  std::vector<Vec> idem;
  for (const auto& e : b.idempotents()) {
    Vec v = zero_vec(f, 2 * n);
    for (std::size_t k = 0; k < n; ++k) v[k] = e[k];
    idem.push_back(std::move(v));
  }
  Matrix d(f, 2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec bz = b.multiply(b.element(i), z);
    for (std::size_t k = 0; k < n; ++k) d(k, n + i) = sign_scalar(f, b.degree(i)) * bz[k];
  }
  return DgAlgebra(GradedAlgebra(f, std::move(basis), std::move(products), std::move(idem)), std::move(d));
}
