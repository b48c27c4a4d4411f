#pragma once

// Univariate polynomials over a Field, used only to find roots of minimal polynomials.

#include <ainf/scalar.hpp>

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <vector>

namespace ainf {

/// Coefficients in increasing degree; trailing zeros trimmed.
class Polynomial {
 public:
  Polynomial(Field f, std::vector<Scalar> coeffs) : field_(f), c_(std::move(coeffs)) { trim(); }

  static Polynomial x_minus(Field f, const Scalar& a) { return Polynomial(f, {-a, Scalar::one(f)}); }

  [[nodiscard]] Field field() const { return field_; }
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] const std::vector<Scalar>& coeffs() const { return c_; }
  [[nodiscard]] const Scalar& lead() const { return c_.back(); }

  [[nodiscard]] Scalar eval(const Scalar& x) const {
    Scalar acc = Scalar::zero(field_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  [[nodiscard]] Polynomial monic() const {
    if (is_zero()) return *this;
    Scalar inv = lead().inverse();
    std::vector<Scalar> c = c_;
    for (auto& s : c) s *= inv;
    return Polynomial(field_, std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial(a.field_, {});
    std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, Scalar::zero(a.field_));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(a.field_, std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()), Scalar::zero(a.field_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return Polynomial(a.field_, std::move(c));
  }

  /// Quotient and remainder of division by a nonzero polynomial.
  [[nodiscard]] std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    std::vector<Scalar> r = c_;
    int dd = d.degree();
    if (degree() < dd) return {Polynomial(field_, {}), *this};
    std::vector<Scalar> q(static_cast<std::size_t>(degree() - dd + 1), Scalar::zero(field_));
    Scalar inv = d.lead().inverse();
    for (int k = degree(); k >= dd; --k) {
      Scalar coef = r[static_cast<std::size_t>(k)] * inv;
      q[static_cast<std::size_t>(k - dd)] = coef;
      if (coef.is_zero()) continue;
      for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k - dd + j)] -= coef * d.c_[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(dd));
    return {Polynomial(field_, std::move(q)), Polynomial(field_, std::move(r))};
  }

  friend Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      auto r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  Field field_;
  std::vector<Scalar> c_;
};

namespace detail {

inline Polynomial powmod(Polynomial base, mpz_class e, const Polynomial& mod) {
  const Field f = base.field();
  Polynomial acc(f, {Scalar::one(f)});
  base = base.divmod(mod).second;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = (acc * base).divmod(mod).second;
    base = (base * base).divmod(mod).second;
    e /= 2;
  }
  return acc;
}

/// Splits a squarefree product of distinct linear factors over GF(p), p odd.
inline void equal_degree_split(const Polynomial& g, std::vector<Scalar>& roots, std::uint64_t& seed) {
  const Field f = g.field();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    roots.push_back(-g.coeffs()[0] / g.coeffs()[1]);
    return;
  }
  const std::uint64_t p = f.characteristic();
  for (int attempt = 0; attempt < 200; ++attempt) {
    seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    Scalar a(f, static_cast<long>((seed >> 17) % p));
    Polynomial t = Polynomial::x_minus(f, -a);  // x + a
    Polynomial h = powmod(t, mpz_class(static_cast<unsigned long>((p - 1) / 2)), g) - Polynomial(f, {Scalar::one(f)});
    Polynomial d = gcd(g, h);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      equal_degree_split(d, roots, seed);
      equal_degree_split(g.divmod(d).first.monic(), roots, seed);
      return;
    }
  }
  throw DomainError("root splitting over the prime field did not converge");
}

inline std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
    if (d > 10'000'000) throw DomainError("coefficients too large for rational root search");
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

/// Distinct roots in the base field.
inline std::vector<Scalar> roots_in_field(const Polynomial& poly) {
  const Field f = poly.field();
  std::vector<Scalar> roots;
  if (poly.degree() <= 0) return roots;
  Polynomial p = poly.monic();
  // strip the root 0
  if (p.coeffs()[0].is_zero()) {
    roots.push_back(Scalar::zero(f));
    std::size_t k = 0;
    while (p.coeffs()[k].is_zero()) ++k;
    p = Polynomial(f, std::vector<Scalar>(p.coeffs().begin() + static_cast<std::ptrdiff_t>(k), p.coeffs().end()));
  }
  if (p.degree() <= 0) return roots;

  if (f.is_rational()) {
    mpz_class lcm = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.rational().get_den().get_mpz_t());
    std::vector<mpz_class> ints;
    for (const auto& c : p.coeffs()) ints.push_back(mpz_class(c.rational() * lcm));
    for (const auto& num : detail::divisors(ints.front()))
      for (const auto& den : detail::divisors(ints.back()))
        for (int sgn : {1, -1}) {
          Scalar cand(f, mpq_class(sgn * num, den));
          if (!p.eval(cand).is_zero()) continue;
          bool seen = false;
          for (const auto& r : roots) seen |= (r == cand);
          if (!seen) roots.push_back(cand);
        }
    return roots;
  }

  const std::uint64_t q = f.characteristic();
  if (q <= 200'000) {
    for (std::uint64_t v = 1; v < q; ++v) {
      Scalar cand(f, static_cast<long>(v));
      if (p.eval(cand).is_zero()) roots.push_back(cand);
    }
    return roots;
  }
  // gcd with x^q - x isolates the linear factors
  Polynomial x(f, {Scalar::zero(f), Scalar::one(f)});
  Polynomial xq = detail::powmod(x, mpz_class(static_cast<unsigned long>(q)), p);
  Polynomial g = gcd(p, xq - x);
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  detail::equal_degree_split(g, roots, seed);
  return roots;
}

}  // namespace ainf
