#include "quotlab/free_element.hpp"

#include <algorithm>

namespace quotlab {

DualElement contract(int i, const DualElement& sigma) {
  DualElement out(sigma.n(), sigma.genDegrees());
  for (const Term& t : sigma.terms()) {
    if (!t.mon.divisibleByVariable(i)) continue;
    out.addTerm(t.coeff, t.gen, t.mon.dividedByVariable(i));
  }
  return out;
}

BasisWindow::BasisWindow(int n, std::vector<int> genDegrees, int lo, int hi)
    : n_(n), genDegrees_(std::move(genDegrees)), lo_(lo), hi_(hi) {
  for (int e = lo_; e <= hi_; ++e) {
    for (int g = 0; g < rank(); ++g) {
      int monDeg = e - genDegrees_[g];
      if (monDeg < 0) continue;
      for (const Monomial& m : monomial_basis(n_, monDeg)) {
        elems_.emplace_back(g, m);
      }
    }
  }
  for (int i = 0; i < size(); ++i) {
    index_[{elems_[i].first, elems_[i].second.exps()}] = i;
  }
}

int BasisWindow::find(int g, const Monomial& m) const {
  auto it = index_.find({g, m.exps()});
  return it == index_.end() ? -1 : it->second;
}

std::pair<int, int> BasisWindow::degreeRange(int e) const {
  int first = 0;
  while (first < size() && degreeOf(first) < e) ++first;
  int last = first;
  while (last < size() && degreeOf(last) == e) ++last;
  return {first, last};
}

ExactMatrix multiply_by_variable_map(int i, int k, int n,
                                     const std::vector<int>& genDegrees,
                                     const Field& f) {
  BasisWindow source(n, genDegrees, k, k);
  BasisWindow target(n, genDegrees, k + 1, k + 1);
  ExactMatrix m = ExactMatrix::sparseZeros(target.size(), source.size(), f);
  for (int c = 0; c < source.size(); ++c) {
    int r = target.find(source.gen(c), source.mon(c).timesVariable(i));
    m.set(r, c, Scalar::one(f));
  }
  return m;
}

}  // namespace quotlab
