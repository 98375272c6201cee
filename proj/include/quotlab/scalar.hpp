#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

#include "quotlab/errors.hpp"

namespace quotlab {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Coefficient domain: exact rationals (prime == 0) or the prime field F_p.
// Rationals are the default everywhere; F_p is an opt-in accelerator and
// results over F_p are reported as char-p evidence, not verification.
struct Field {
  std::uint64_t prime = 0;

  bool isRational() const { return prime == 0; }
  bool operator==(const Field&) const = default;

  static Field rationals() { return Field{}; }
  static Field mod(std::uint64_t p) { return Field{p}; }

  std::string describe() const;
};

// Immutable exact scalar. Rational values are kept in lowest terms with
// positive denominator (GMP canonical form); prime-field values in [0, p).
class Scalar {
 public:
  Scalar() = default;  // rational zero

  static Scalar zero(const Field& f);
  static Scalar one(const Field& f);
  static Scalar fromInt(long v, const Field& f = Field{});
  static Scalar fromRational(Rational q);
  static Scalar ratio(long num, long den);
  // Parses "123" or "-2/7"; lowest terms enforced by construction.
  static Scalar parse(const std::string& text, const Field& f = Field{});

  Field field() const { return Field{p_}; }
  bool isZero() const;
  bool isOne() const;
  // Rational: -1, 0, +1. Prime field: 0 for zero, +1 otherwise.
  int sign() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Total order within one field: by value (rationals) or residue (F_p).
  int compare(const Scalar& o) const;

  // Reduction into F_p; denominators divisible by p are refused.
  Scalar toField(const Field& f) const;

  const Rational& rat() const;
  std::uint64_t residue() const;

  std::string str() const;

 private:
  Rational q_;            // rational payload (p_ == 0)
  std::uint64_t v_ = 0;   // residue payload (p_ != 0)
  std::uint64_t p_ = 0;

  void requireSameField(const Scalar& o) const;
};

}  // namespace quotlab
