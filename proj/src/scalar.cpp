#include "quotlab/scalar.hpp"

namespace quotlab {

namespace {

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;  // p < 2^63 assumed, no overflow
  return s >= p ? s - p : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  while (e) {
    if (e & 1) acc = mulmod(acc, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return acc;
}

}  // namespace

std::string Field::describe() const {
  if (isRational()) return "rational";
  return "mod " + std::to_string(prime);
}

Scalar Scalar::zero(const Field& f) { return fromInt(0, f); }

Scalar Scalar::one(const Field& f) { return fromInt(1, f); }

Scalar Scalar::fromInt(long v, const Field& f) {
  Scalar s;
  s.p_ = f.prime;
  if (f.isRational()) {
    s.q_ = Rational(BigInt(v));
  } else {
    long r = v % static_cast<long>(f.prime);
    if (r < 0) r += static_cast<long>(f.prime);
    s.v_ = static_cast<std::uint64_t>(r);
  }
  return s;
}

Scalar Scalar::fromRational(Rational q) {
  Scalar s;
  s.q_ = std::move(q);
  return s;
}

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) throw ArithmeticDomainError("zero denominator");
  Scalar s;
  s.q_ = Rational(BigInt(num)) / BigInt(den);
  return s;
}

Scalar Scalar::parse(const std::string& text, const Field& f) {
  auto slash = text.find('/');
  if (f.isRational()) {
    Scalar s;
    if (slash == std::string::npos) {
      s.q_ = Rational(BigInt(text));
    } else {
      BigInt num(text.substr(0, slash));
      BigInt den(text.substr(slash + 1));
      if (den == 0) throw ArithmeticDomainError("zero denominator in \"" + text + "\"");
      s.q_ = Rational(num) / den;
    }
    return s;
  }
  if (slash != std::string::npos) {
    Scalar num = parse(text.substr(0, slash), f);
    Scalar den = parse(text.substr(slash + 1), f);
    return num / den;
  }
  BigInt v(text);
  BigInt p(static_cast<unsigned long>(f.prime));
  BigInt r = v % p;
  if (r < 0) r += p;
  Scalar s;
  s.p_ = f.prime;
  s.v_ = static_cast<std::uint64_t>(r);
  return s;
}

bool Scalar::isZero() const { return p_ == 0 ? q_ == 0 : v_ == 0; }

bool Scalar::isOne() const { return p_ == 0 ? q_ == 1 : v_ == 1 % p_; }

int Scalar::sign() const {
  if (p_ != 0) return v_ == 0 ? 0 : 1;
  if (q_ == 0) return 0;
  return q_ < 0 ? -1 : 1;
}

void Scalar::requireSameField(const Scalar& o) const {
  if (p_ != o.p_) {
    throw ArithmeticDomainError("mixed coefficient domains: " +
                                field().describe() + " vs " + o.field().describe());
  }
}

Scalar Scalar::operator+(const Scalar& o) const {
  requireSameField(o);
  Scalar s;
  s.p_ = p_;
  if (p_ == 0) s.q_ = q_ + o.q_;
  else s.v_ = addmod(v_, o.v_, p_);
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
  requireSameField(o);
  Scalar s;
  s.p_ = p_;
  if (p_ == 0) s.q_ = q_ - o.q_;
  else s.v_ = submod(v_, o.v_, p_);
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  requireSameField(o);
  Scalar s;
  s.p_ = p_;
  if (p_ == 0) s.q_ = q_ * o.q_;
  else s.v_ = mulmod(v_, o.v_, p_);
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar s;
  s.p_ = p_;
  if (p_ == 0) s.q_ = -q_;
  else s.v_ = v_ == 0 ? 0 : p_ - v_;
  return s;
}

Scalar Scalar::inverse() const {
  if (isZero()) throw ArithmeticDomainError("division by zero");
  Scalar s;
  s.p_ = p_;
  if (p_ == 0) s.q_ = 1 / q_;
  else s.v_ = powmod(v_, p_ - 2, p_);  // p prime
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  if (p_ != o.p_) return false;
  return p_ == 0 ? q_ == o.q_ : v_ == o.v_;
}

int Scalar::compare(const Scalar& o) const {
  requireSameField(o);
  if (p_ == 0) {
    if (q_ < o.q_) return -1;
    return q_ == o.q_ ? 0 : 1;
  }
  if (v_ < o.v_) return -1;
  return v_ == o.v_ ? 0 : 1;
}

Scalar Scalar::toField(const Field& f) const {
  if (f.prime == p_) return *this;
  if (p_ != 0) throw ArithmeticDomainError("cannot convert " + field().describe() +
                                           " to " + f.describe());
  BigInt p(static_cast<unsigned long>(f.prime));
  BigInt num = boost::multiprecision::numerator(q_) % p;
  BigInt den = boost::multiprecision::denominator(q_) % p;
  if (den == 0) throw ArithmeticDomainError("denominator divisible by modulus");
  if (num < 0) num += p;
  Scalar n;
  n.p_ = f.prime;
  n.v_ = static_cast<std::uint64_t>(num);
  Scalar d;
  d.p_ = f.prime;
  d.v_ = static_cast<std::uint64_t>(den);
  return n / d;
}

const Rational& Scalar::rat() const {
  if (p_ != 0) throw ArithmeticDomainError("not a rational value");
  return q_;
}

std::uint64_t Scalar::residue() const {
  if (p_ == 0) throw ArithmeticDomainError("not a prime-field value");
  return v_;
}

std::string Scalar::str() const {
  if (p_ != 0) return std::to_string(v_);
  std::string num = boost::multiprecision::numerator(q_).str();
  BigInt den = boost::multiprecision::denominator(q_);
  if (den == 1) return num;
  return num + "/" + den.str();
}

}  // namespace quotlab
