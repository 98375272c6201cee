#include "quotlab/monomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace quotlab {

Monomial::Monomial(std::vector<int> exps) : exps_(std::move(exps)) {
  for (int e : exps_) {
    if (e < 0) throw std::invalid_argument("negative exponent");
  }
}

Monomial Monomial::unit(int n) { return Monomial(std::vector<int>(n, 0)); }

Monomial Monomial::variable(int n, int i) {
  std::vector<int> e(n, 0);
  e[i] = 1;
  return Monomial(std::move(e));
}

int Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), 0);
}

Monomial Monomial::times(const Monomial& o) const {
  std::vector<int> e(exps_);
  for (size_t i = 0; i < e.size(); ++i) e[i] += o.exps_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::timesVariable(int i) const {
  std::vector<int> e(exps_);
  ++e[i];
  return Monomial(std::move(e));
}

Monomial Monomial::dividedByVariable(int i) const {
  std::vector<int> e(exps_);
  --e[i];
  return Monomial(std::move(e));
}

std::string Monomial::str(const std::string& letter) const {
  std::string out;
  for (size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += letter + std::to_string(i + 1);
    if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
  }
  return out.empty() ? "1" : out;
}

bool monomial_before(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // Reverse-lexicographic within the degree: a first iff the last index
  // where the exponents differ has a smaller exponent in a.
  for (int i = a.vars() - 1; i >= 0; --i) {
    if (a.exp(i) != b.exp(i)) return a.exp(i) < b.exp(i);
  }
  return false;
}

namespace {

void enumerate(int pos, int n, int remaining, std::vector<int>& cur,
               std::vector<Monomial>& out) {
  if (pos == n - 1) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    enumerate(pos + 1, n, remaining - e, cur, out);
  }
}

}  // namespace

std::vector<Monomial> monomial_basis(int n, int k) {
  if (n < 1) throw std::invalid_argument("need at least one variable");
  std::vector<Monomial> out;
  std::vector<int> cur(n, 0);
  enumerate(0, n, k, cur, out);
  std::sort(out.begin(), out.end(), monomial_before);
  return out;
}

}  // namespace quotlab
