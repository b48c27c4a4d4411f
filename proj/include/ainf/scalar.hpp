#pragma once

// Exact field elements: arbitrary-precision rationals or residues modulo a prime.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ainf {

/// Raised for violated mathematical preconditions (bad input algebra, wrong field, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Field descriptor. p == 0 denotes the rationals.
class Field {
 public:
  constexpr Field() = default;

  static constexpr Field rationals() { return Field{}; }
  static Field prime(std::uint64_t p) {
    if (p < 2 || !is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 32)) throw DomainError("prime fields are limited to p < 2^32");
    Field f;
    f.p_ = p;
    return f;
  }

  [[nodiscard]] constexpr bool is_rational() const { return p_ == 0; }
  [[nodiscard]] constexpr std::uint64_t characteristic() const { return p_; }

  [[nodiscard]] std::string to_string() const {
    return is_rational() ? std::string("Q") : "GF(" + std::to_string(p_) + ")";
  }

  /// Accepts "Q" or "GF(p)".
  static Field parse(std::string_view s) {
    if (s == "Q") return rationals();
    if (s.size() > 4 && s.substr(0, 3) == "GF(" && s.back() == ')') {
      std::string digits(s.substr(3, s.size() - 4));
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("malformed field descriptor '" + std::string(s) + "'");
      return prime(std::stoull(digits));
    }
    throw DomainError("unknown field descriptor '" + std::string(s) + "' (expected Q or GF(p))");
  }

  friend constexpr bool operator==(Field a, Field b) { return a.p_ == b.p_; }

 private:
  static bool is_prime(std::uint64_t n) {
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  std::uint64_t p_ = 0;
};

/// An element of a Field. Rationals are kept reduced with positive denominator,
/// residues in [0, p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(Field f, long v) : field_(f) {
    if (f.is_rational()) {
      q_ = v;
    } else {
      auto p = static_cast<long long>(f.characteristic());
      long long r = static_cast<long long>(v) % p;
      v_ = static_cast<std::uint64_t>(r < 0 ? r + p : r);
    }
  }
  Scalar(Field f, const mpq_class& q) : field_(f) {
    if (f.is_rational()) {
      q_ = q;
      q_.canonicalize();
    } else {
      mpz_class p(static_cast<unsigned long>(f.characteristic()));
      mpz_class num = q.get_num() % p;
      if (num < 0) num += p;
      mpz_class den = q.get_den() % p;
      if (den == 0) throw DomainError("denominator divisible by the characteristic");
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
      mpz_class r = (num * inv) % p;
      v_ = r.get_ui();
    }
  }

  static Scalar zero(Field f) { return Scalar(f, 0L); }
  static Scalar one(Field f) { return Scalar(f, 1L); }

  /// Parses "a", "-a" or "a/b"; in a prime field the value is reduced mod p.
  static Scalar parse(Field f, std::string_view text) {
    std::string s(text);
    if (s.empty()) throw DomainError("empty coefficient");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw DomainError("malformed coefficient '" + s + "'");
    if (q.get_den() == 0) throw DomainError("zero denominator in coefficient '" + s + "'");
    q.canonicalize();
    return Scalar(f, q);
  }

  [[nodiscard]] Field field() const { return field_; }
  [[nodiscard]] bool is_zero() const { return field_.is_rational() ? sgn(q_) == 0 : v_ == 0; }
  [[nodiscard]] bool is_one() const { return field_.is_rational() ? q_ == 1 : v_ == 1; }

  [[nodiscard]] const mpq_class& rational() const { return q_; }
  [[nodiscard]] std::uint64_t residue() const { return v_; }

  [[nodiscard]] std::string to_string() const {
    if (field_.is_rational()) return q_.get_str();
    return std::to_string(v_);
  }

  Scalar& operator+=(const Scalar& o) {
    check(o);
    if (field_.is_rational()) {
      q_ += o.q_;
    } else {
      v_ += o.v_;
      if (v_ >= field_.characteristic()) v_ -= field_.characteristic();
    }
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    check(o);
    if (field_.is_rational()) {
      q_ -= o.q_;
    } else {
      v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + field_.characteristic() - o.v_;
    }
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    check(o);
    if (field_.is_rational()) {
      q_ *= o.q_;
    } else {
      v_ = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v_) * o.v_ % field_.characteristic());
    }
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  [[nodiscard]] Scalar operator-() const {
    Scalar r = *this;
    if (field_.is_rational()) {
      r.q_ = -q_;
    } else if (v_ != 0) {
      r.v_ = field_.characteristic() - v_;
    }
    return r;
  }

  [[nodiscard]] Scalar inverse() const {
    if (is_zero()) throw DomainError("division by zero");
    Scalar r = *this;
    if (field_.is_rational()) {
      r.q_ = 1 / q_;
    } else {
      // Fermat: v^(p-2)
      std::uint64_t p = field_.characteristic(), e = p - 2, b = v_, acc = 1;
      while (e) {
        if (e & 1) acc = static_cast<std::uint64_t>(static_cast<unsigned __int128>(acc) * b % p);
        b = static_cast<std::uint64_t>(static_cast<unsigned __int128>(b) * b % p);
        e >>= 1;
      }
      r.v_ = acc;
    }
    return r;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (!(a.field_ == b.field_)) return false;
    return a.field_.is_rational() ? a.q_ == b.q_ : a.v_ == b.v_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

  [[nodiscard]] std::size_t hash() const {
    if (field_.is_rational()) {
      return std::hash<std::string>{}(q_.get_str());
    }
    return std::hash<std::uint64_t>{}(v_);
  }

 private:
  void check(const Scalar& o) const {
    if (!(field_ == o.field_))
      throw DomainError("mixed-field arithmetic: " + field_.to_string() + " vs " + o.field_.to_string());
  }

  Field field_{};
  mpq_class q_{};
  std::uint64_t v_ = 0;
};

/// (-1)^e as a scalar.
inline Scalar sign_scalar(Field f, long e) { return Scalar(f, (e % 2 == 0) ? 1L : -1L); }

}  // namespace ainf
