#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>

#include "lienil/error.hpp"

namespace lienil {

/// Field descriptor: the rationals or a prime field F_p.
class Field {
 public:
  enum class Kind : std::uint8_t { rational, prime };

  static Field rationals() { return Field(Kind::rational, 0); }

  /// Any prime p >= 2; primality is checked by trial division. p must fit in
  /// 32 bits so residue products fit in 64.
  static Field prime(std::uint64_t p) {
    if (p < 2 || p > 0xffffffffULL || !is_prime(p))
      throw InputError("F_p requires a prime p < 2^32, got " +
                       std::to_string(p));
    return Field(Kind::prime, p);
  }

  Kind kind() const noexcept { return kind_; }
  bool is_rational() const noexcept { return kind_ == Kind::rational; }
  bool is_prime() const noexcept { return kind_ == Kind::prime; }
  std::uint64_t characteristic() const noexcept { return p_; }
  std::uint64_t modulus() const noexcept { return p_; }

  std::string name() const {
    return is_rational() ? std::string("Q") : "F" + std::to_string(p_);
  }

  friend bool operator==(const Field&, const Field&) = default;

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  Field(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint64_t p_;
};

inline void require_same_field(const Field& a, const Field& b) {
  if (a != b)
    throw InputError("field mismatch: " + a.name() + " vs " + b.name());
}

/// Exact field element. Rationals are kept canonical (lowest terms, positive
/// denominator); residues are reduced into [0, p).
class Scalar {
 public:
  explicit Scalar(Field field) : field_(field) {
    if (field.is_rational())
      value_ = mpq_class(0);
    else
      value_ = std::uint64_t{0};
  }

  Scalar(Field field, long value) : field_(field) {
    if (field.is_rational()) {
      value_ = mpq_class(value);
    } else {
      const auto p = static_cast<std::int64_t>(field.modulus());
      std::int64_t r = value % p;
      if (r < 0) r += p;
      value_ = static_cast<std::uint64_t>(r);
    }
  }

  /// Rational num/den from arbitrary-precision integers. Over F_p the
  /// denominator is inverted modulo p.
  Scalar(Field field, const mpz_class& num, const mpz_class& den)
      : field_(field) {
    if (den == 0) throw InputError("zero denominator");
    if (field.is_rational()) {
      mpq_class q(num, den);
      q.canonicalize();
      value_ = std::move(q);
    } else {
      const mpz_class p(static_cast<unsigned long>(field.modulus()));
      mpz_class n = num % p, d = den % p;
      if (n < 0) n += p;
      if (d < 0) d += p;
      if (d == 0) throw InputError("denominator divisible by p");
      value_ = std::uint64_t{n.get_ui()};
      *this = *this / Scalar(field, static_cast<long>(d.get_ui()));
    }
  }

  static Scalar zero(Field f) { return Scalar(f); }
  static Scalar one(Field f) { return Scalar(f, 1L); }

  /// Parses "a", "-a" or "a/b".
  static Scalar parse(Field f, const std::string& text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return Scalar(f, mpz_class(text), 1);
      return Scalar(f, mpz_class(text.substr(0, slash)),
                    mpz_class(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw InputError("not a number: '" + text + "'");
    }
  }

  const Field& field() const noexcept { return field_; }

  bool is_zero() const {
    if (auto* r = std::get_if<std::uint64_t>(&value_)) return *r == 0;
    return sgn(std::get<mpq_class>(value_)) == 0;
  }
  bool is_one() const {
    if (auto* r = std::get_if<std::uint64_t>(&value_)) return *r == 1;
    return std::get<mpq_class>(value_) == 1;
  }

  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }

  Scalar operator-() const {
    Scalar out(*this);
    if (auto* r = std::get_if<std::uint64_t>(&out.value_)) {
      if (*r != 0) *r = field_.modulus() - *r;
    } else {
      auto& q = std::get<mpq_class>(out.value_);
      q = -q;
    }
    return out;
  }

  Scalar& operator+=(const Scalar& o) {
    check(o);
    if (auto* r = std::get_if<std::uint64_t>(&value_)) {
      *r += o.residue();
      if (*r >= field_.modulus()) *r -= field_.modulus();
    } else {
      std::get<mpq_class>(value_) += o.rational();
    }
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    check(o);
    if (auto* r = std::get_if<std::uint64_t>(&value_)) {
      *r += field_.modulus() - o.residue();
      if (*r >= field_.modulus()) *r -= field_.modulus();
    } else {
      std::get<mpq_class>(value_) -= o.rational();
    }
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    check(o);
    if (auto* r = std::get_if<std::uint64_t>(&value_))
      *r = (*r * o.residue()) % field_.modulus();
    else
      std::get<mpq_class>(value_) *= o.rational();
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  Scalar inverse() const {
    if (is_zero()) throw InputError("division by zero");
    Scalar out(*this);
    if (auto* r = std::get_if<std::uint64_t>(&out.value_)) {
      *r = pow_mod(*r, field_.modulus() - 2, field_.modulus());
    } else {
      auto& q = std::get<mpq_class>(out.value_);
      q = 1 / q;
      q.canonicalize();
    }
    return out;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  /// Decimal "n" or "n/d" over Q, the reduced residue over F_p.
  std::string to_string() const {
    if (auto* r = std::get_if<std::uint64_t>(&value_))
      return std::to_string(*r);
    return std::get<mpq_class>(value_).get_str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.to_string();
  }

 private:
  void check(const Scalar& o) const { require_same_field(field_, o.field_); }

  static std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e,
                               std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    b %= m;
    while (e) {
      if (e & 1) acc = acc * b % m;
      b = b * b % m;
      e >>= 1;
    }
    return acc;
  }

  Field field_;
  std::variant<mpq_class, std::uint64_t> value_;
};

}  // namespace lienil
