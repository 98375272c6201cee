#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quotlab/matrix.hpp"
#include "quotlab/monomial.hpp"
#include "quotlab/scalar.hpp"

namespace quotlab {

// One term c * y^mon * e_gen (or c * z^mon * e_gen* on the dual side).
struct Term {
  Scalar coeff;
  int gen = 0;  // 0-based generator index
  Monomial mon;
};

// Element of a free module F = ⊕_t S·e_t with generator degrees γ_t, or of
// its restricted dual (z-monomials against the dual basis e_t*). Terms are
// kept sorted by (degree, generator, monomial) with no zero coefficients;
// the degree of a term is γ_gen + |mon| on both sides (deg z_i = +1).
template <typename Tag>
class BasicElement {
 public:
  BasicElement() = default;
  BasicElement(int n, std::vector<int> genDegrees)
      : n_(n), genDegrees_(std::move(genDegrees)) {}

  static BasicElement single(int n, std::vector<int> genDegrees, Scalar c,
                             int gen, Monomial mon) {
    BasicElement e(n, std::move(genDegrees));
    e.addTerm(std::move(c), gen, std::move(mon));
    return e;
  }

  int n() const { return n_; }
  int rank() const { return static_cast<int>(genDegrees_.size()); }
  const std::vector<int>& genDegrees() const { return genDegrees_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }

  int termDegree(const Term& t) const { return genDegrees_[t.gen] + t.mon.degree(); }
  // Terms are sorted by degree, so min/max are the ends; zero has none.
  int minDegree() const { return termDegree(terms_.front()); }
  int maxDegree() const { return termDegree(terms_.back()); }
  bool homogeneous() const {
    return terms_.empty() || minDegree() == maxDegree();
  }

  void addTerm(Scalar c, int gen, Monomial mon) {
    if (c.isZero()) return;
    Term t{std::move(c), gen, std::move(mon)};
    auto pos = std::lower_bound(terms_.begin(), terms_.end(), t,
                                [this](const Term& a, const Term& b) { return before(a, b); });
    if (pos != terms_.end() && pos->gen == t.gen && pos->mon == t.mon) {
      pos->coeff += t.coeff;
      if (pos->coeff.isZero()) terms_.erase(pos);
    } else {
      terms_.insert(pos, std::move(t));
    }
  }

  BasicElement operator+(const BasicElement& o) const {
    BasicElement out(*this);
    for (const Term& t : o.terms_) out.addTerm(t.coeff, t.gen, t.mon);
    return out;
  }

  BasicElement operator-(const BasicElement& o) const {
    BasicElement out(*this);
    for (const Term& t : o.terms_) out.addTerm(-t.coeff, t.gen, t.mon);
    return out;
  }

  BasicElement scaled(const Scalar& c) const {
    BasicElement out(n_, genDegrees_);
    if (c.isZero()) return out;
    out.terms_ = terms_;
    for (Term& t : out.terms_) t.coeff *= c;
    return out;
  }

  BasicElement timesMonomial(const Monomial& m) const {
    BasicElement out(n_, genDegrees_);
    for (const Term& t : terms_) out.addTerm(t.coeff, t.gen, t.mon.times(m));
    return out;
  }

  BasicElement timesVariable(int i) const {
    return timesMonomial(Monomial::variable(n_, i));
  }

  BasicElement homogeneousPart(int degree) const {
    BasicElement out(n_, genDegrees_);
    for (const Term& t : terms_) {
      if (termDegree(t) == degree) out.addTerm(t.coeff, t.gen, t.mon);
    }
    return out;
  }

  BasicElement truncated(int maxDeg) const {
    BasicElement out(n_, genDegrees_);
    for (const Term& t : terms_) {
      if (termDegree(t) <= maxDeg) out.addTerm(t.coeff, t.gen, t.mon);
    }
    return out;
  }

  bool operator==(const BasicElement& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].gen != o.terms_[i].gen || terms_[i].mon != o.terms_[i].mon ||
          terms_[i].coeff != o.terms_[i].coeff) {
        return false;
      }
    }
    return true;
  }
  bool operator!=(const BasicElement& o) const { return !(*this == o); }

  std::string str(const std::string& letter) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const Term& t : terms_) {
      if (!out.empty()) out += " + ";
      std::string c = t.coeff.str();
      std::string m = t.mon.str(letter);
      if (m == "1") out += c;
      else if (c == "1") out += m;
      else out += c + "*" + m;
      if (rank() > 1 || genDegrees_[t.gen] != 0) {
        out += "*e" + std::to_string(t.gen + 1);
      }
    }
    return out;
  }

 private:
  bool before(const Term& a, const Term& b) const {
    int da = termDegree(a), db = termDegree(b);
    if (da != db) return da < db;
    if (a.gen != b.gen) return a.gen < b.gen;
    return monomial_before(a.mon, b.mon);
  }

  int n_ = 0;
  std::vector<int> genDegrees_;
  std::vector<Term> terms_;
};

using FreeModuleElement = BasicElement<struct FreeSideTag>;
using DualElement = BasicElement<struct DualSideTag>;

// Contraction action y_i ∘ σ: z^a e_t* ↦ z^(a - e_i) e_t* when a_i > 0,
// dropped otherwise (no multiplicity factor).
DualElement contract(int i, const DualElement& sigma);

// Enumerated basis of F (equivalently of its dual) across degrees lo..hi,
// ordered by (degree, generator index, monomial). The index set is shared
// by F and F* so the duality pairing is the plain dot product.
class BasisWindow {
 public:
  BasisWindow(int n, std::vector<int> genDegrees, int lo, int hi);

  int n() const { return n_; }
  int rank() const { return static_cast<int>(genDegrees_.size()); }
  const std::vector<int>& genDegrees() const { return genDegrees_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int size() const { return static_cast<int>(elems_.size()); }

  int gen(int idx) const { return elems_[idx].first; }
  const Monomial& mon(int idx) const { return elems_[idx].second; }
  int degreeOf(int idx) const { return genDegrees_[gen(idx)] + mon(idx).degree(); }
  // -1 when the pair lies outside the window.
  int find(int g, const Monomial& m) const;
  // Index range [first, last) of the degree-e slice.
  std::pair<int, int> degreeRange(int e) const;

  template <typename Tag>
  std::vector<Scalar> coords(const BasicElement<Tag>& el, const Field& f) const {
    std::vector<Scalar> v(size(), Scalar::zero(f));
    for (const Term& t : el.terms()) {
      int idx = find(t.gen, t.mon);
      if (idx < 0) throw ShapeError("element does not fit the degree window");
      v[idx] = t.coeff;
    }
    return v;
  }

  template <typename Tag>
  BasicElement<Tag> fromCoords(const std::vector<Scalar>& v) const {
    BasicElement<Tag> el(n_, genDegrees_);
    for (int i = 0; i < size(); ++i) {
      if (!v[i].isZero()) el.addTerm(v[i], gen(i), mon(i));
    }
    return el;
  }

 private:
  int n_;
  std::vector<int> genDegrees_;
  int lo_, hi_;
  std::vector<std::pair<int, Monomial>> elems_;
  std::map<std::pair<int, std::vector<int>>, int> index_;
};

// Matrix of multiplication by y_i from the degree-k slice of F to the
// degree-(k+1) slice; one unit entry per source basis element.
ExactMatrix multiply_by_variable_map(int i, int k, int n,
                                     const std::vector<int>& genDegrees,
                                     const Field& f = Field{});

}  // namespace quotlab
