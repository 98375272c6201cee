#pragma once

#include <string>
#include <vector>

namespace quotlab {

// Exponent vector of a monomial in y_1..y_n (or z_1..z_n on the dual side).
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exps);
  static Monomial unit(int n);
  static Monomial variable(int n, int i);  // y_i, 0-based

  int vars() const { return static_cast<int>(exps_.size()); }
  int degree() const;
  int exp(int i) const { return exps_[i]; }
  const std::vector<int>& exps() const { return exps_; }

  Monomial times(const Monomial& o) const;
  Monomial timesVariable(int i) const;
  bool divisibleByVariable(int i) const { return exps_[i] > 0; }
  Monomial dividedByVariable(int i) const;

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  bool operator!=(const Monomial& o) const { return exps_ != o.exps_; }

  std::string str(const std::string& letter = "y") const;

 private:
  std::vector<int> exps_;
};

// True when a is listed before b in the canonical order: ascending total
// degree, then graded reverse-lexicographic (largest first) within a degree.
bool monomial_before(const Monomial& a, const Monomial& b);

inline bool operator<(const Monomial& a, const Monomial& b) { return monomial_before(a, b); }

// All degree-k monomials in n variables in canonical order; C(n+k-1, k) of them.
std::vector<Monomial> monomial_basis(int n, int k);

}  // namespace quotlab
