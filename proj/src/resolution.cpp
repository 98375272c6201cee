#include "quotlab/resolution.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quotlab/errors.hpp"
#include "quotlab/matrix.hpp"

namespace quotlab {
namespace {

void requireInternal(bool ok, const char* msg) {
  if (!ok) throw std::logic_error(std::string("internal invariant violated: ") + msg);
}

bool isZeroVector(const std::vector<Scalar>& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& c) { return c.isZero(); });
}

void normalizeLead(std::vector<Scalar>& v) {
  for (const Scalar& c : v) {
    if (!c.isZero()) {
      Scalar inv = c.inverse();
      for (Scalar& e : v) e *= inv;
      return;
    }
  }
}

using SparseImage = std::function<std::vector<std::pair<int, Scalar>>(int, const Monomial&)>;

FreeModuleElement sliceElement(const BasisWindow& src, int first,
                               const std::vector<Scalar>& v) {
  FreeModuleElement el(src.n(), src.genDegrees());
  for (int c = 0; c < static_cast<int>(v.size()); ++c) {
    if (!v[c].isZero()) el.addTerm(v[c], src.gen(first + c), src.mon(first + c));
  }
  return el;
}

// Minimal homogeneous generators, in degrees <= maxDegree, of the kernel of
// the degree-preserving map sending the source basis element y^a·e_g to
// image(g, a), given as sparse coordinates in some fixed target basis.
// Works one degree at a time: the degree-e kernel is the nullspace of the
// matrix of images over the degree-e source slice, and the new generators
// are a complement of the variable multiples of the previous degree's
// kernel, each normalized to lead with coefficient one.
std::vector<FreeModuleElement> minimalKernelGens(int n, const std::vector<int>& srcDegrees,
                                                 int maxDegree, const Field& f,
                                                 const SparseImage& image) {
  std::vector<FreeModuleElement> gens;
  if (srcDegrees.empty()) return gens;
  const int lo = *std::min_element(srcDegrees.begin(), srcDegrees.end());
  const int srcTop = *std::max_element(srcDegrees.begin(), srcDegrees.end());
  if (maxDegree < lo) return gens;
  BasisWindow src(n, srcDegrees, lo, maxDegree);
  std::vector<FreeModuleElement> prevKernel;
  bool prevFull = false;
  for (int e = lo; e <= maxDegree; ++e) {
    // Once a whole slice is kernel and every later slice is spanned by
    // variable multiples of it, no further generators can appear.
    if (prevFull && e > srcTop) break;
    auto [first, last] = src.degreeRange(e);
    const int count = last - first;
    if (count == 0) {
      prevKernel.clear();
      prevFull = false;
      continue;
    }

    // Images of the slice basis, compacted to the rows that actually occur.
    std::vector<std::vector<std::pair<int, Scalar>>> cols(count);
    std::map<int, int> rowIds;
    for (int c = 0; c < count; ++c) {
      cols[c] = image(src.gen(first + c), src.mon(first + c));
      for (const auto& rv : cols[c]) rowIds.emplace(rv.first, 0);
    }
    int nrows = 0;
    for (auto& kv : rowIds) kv.second = nrows++;
    ExactMatrix mat = ExactMatrix::sparseZeros(std::max(nrows, 1), count, f);
    for (int c = 0; c < count; ++c) {
      for (const auto& [row, val] : cols[c]) mat.set(rowIds[row], c, val);
    }
    std::vector<std::vector<Scalar>> kernel = kernel_basis(mat);

    RowSpace grown(count, f);
    for (const FreeModuleElement& k : prevKernel) {
      for (int i = 0; i < n; ++i) {
        std::vector<Scalar> full = src.coords(k.timesVariable(i), f);
        grown.insert(std::vector<Scalar>(full.begin() + first, full.begin() + last));
      }
    }
    std::vector<FreeModuleElement> curKernel;
    curKernel.reserve(kernel.size());
    for (std::vector<Scalar>& kv : kernel) {
      curKernel.push_back(sliceElement(src, first, kv));
      std::vector<Scalar> red = grown.reduce(std::move(kv));
      if (!isZeroVector(red)) {
        normalizeLead(red);
        gens.push_back(sliceElement(src, first, red));
        grown.insert(std::move(red));
      }
    }
    prevFull = (static_cast<int>(kernel.size()) == count);
    prevKernel = std::move(curKernel);
  }
  return gens;
}

long long monomialCount(long long degree, int vars) {
  // C(degree + vars - 1, vars - 1); zero below degree zero.
  if (degree < 0) return 0;
  long long a = degree + vars - 1;
  long long r = 1;
  for (int t = 1; t <= vars - 1; ++t) r = r * (a - (vars - 1) + t) / t;
  return r;
}

}  // namespace

GradedFreeMap::GradedFreeMap(int n, std::vector<int> targetDegrees,
                             std::vector<int> sourceDegrees,
                             std::vector<FreeModuleElement> columns, Field f)
    : n_(n),
      targetDegrees_(std::move(targetDegrees)),
      sourceDegrees_(std::move(sourceDegrees)),
      columns_(std::move(columns)),
      field_(f) {
  if (n_ < 1) throw ShapeError("a graded map needs at least one variable");
  if (targetDegrees_.empty() || sourceDegrees_.empty()) {
    throw ShapeError("a graded map needs nonzero source and target ranks");
  }
  if (columns_.size() != sourceDegrees_.size()) {
    throw ShapeError("one column per source generator is required");
  }
  for (const FreeModuleElement& c : columns_) {
    if (c.isZero()) continue;
    if (c.n() != n_ || c.genDegrees() != targetDegrees_) {
      throw ShapeError("column does not match the target free module");
    }
    for (const Term& t : c.terms()) {
      if (!(t.coeff.field() == field_)) {
        throw ArithmeticDomainError("column has coefficients in the wrong field");
      }
    }
  }
}

FreeModuleElement GradedFreeMap::entry(int target, int source) const {
  if (target < 0 || target >= static_cast<int>(targetDegrees_.size()) || source < 0 ||
      source >= static_cast<int>(sourceDegrees_.size())) {
    throw ShapeError("entry position out of range");
  }
  FreeModuleElement out(n_, std::vector<int>{targetDegrees_[target]});
  for (const Term& t : columns_[source].terms()) {
    if (t.gen == target) out.addTerm(t.coeff, 0, t.mon);
  }
  return out;
}

bool GradedFreeMap::isZero() const {
  return std::all_of(columns_.begin(), columns_.end(),
                     [](const FreeModuleElement& c) { return c.isZero(); });
}

bool GradedFreeMap::homogeneous() const {
  for (size_t s = 0; s < columns_.size(); ++s) {
    const FreeModuleElement& c = columns_[s];
    if (c.isZero()) continue;
    if (!c.homogeneous() || c.minDegree() != sourceDegrees_[s]) return false;
  }
  return true;
}

bool GradedFreeMap::minimalEntries() const {
  for (const FreeModuleElement& c : columns_) {
    for (const Term& t : c.terms()) {
      if (t.mon.degree() == 0) return false;
    }
  }
  return true;
}

FreeModuleElement GradedFreeMap::apply(const FreeModuleElement& v) const {
  if (!v.isZero() && (v.n() != n_ || v.genDegrees() != sourceDegrees_)) {
    throw ShapeError("element does not match the source free module");
  }
  FreeModuleElement out(n_, targetDegrees_);
  for (const Term& t : v.terms()) {
    out = out + columns_[t.gen].timesMonomial(t.mon).scaled(t.coeff);
  }
  return out;
}

GradedFreeMap GradedFreeMap::compose(const GradedFreeMap& rhs) const {
  if (!(rhs.field() == field_)) {
    throw ArithmeticDomainError("maps over different fields do not compose");
  }
  if (rhs.n() != n_ || rhs.targetDegrees() != sourceDegrees_) {
    throw ShapeError("maps do not compose: target of the right factor must be the source of the left");
  }
  std::vector<FreeModuleElement> cols;
  cols.reserve(rhs.columns().size());
  for (const FreeModuleElement& c : rhs.columns()) cols.push_back(apply(c));
  return GradedFreeMap(n_, targetDegrees_, rhs.sourceDegrees(), std::move(cols), field_);
}

void BettiTable::add(int i, int j, int count) {
  if (i < 0) throw ShapeError("homological step must be nonnegative");
  if (count < 0) throw ShapeError("generator count must be nonnegative");
  if (count == 0) return;
  entries_[{i, j}] += count;
}

int BettiTable::beta(int i, int j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? 0 : it->second;
}

int BettiTable::maxStep() const {
  int best = -1;
  for (const auto& [ij, c] : entries_) best = std::max(best, ij.first);
  return best;
}

std::string BettiTable::str() const {
  if (entries_.empty()) return "(empty)";
  const int steps = maxStep();
  int minD = INT_MAX, maxD = INT_MIN;
  for (const auto& [ij, c] : entries_) {
    minD = std::min(minD, ij.second - ij.first);
    maxD = std::max(maxD, ij.second - ij.first);
  }
  size_t cellW = 1;
  for (int i = 0; i <= steps; ++i) cellW = std::max(cellW, std::to_string(i).size());
  for (const auto& [ij, c] : entries_) cellW = std::max(cellW, std::to_string(c).size());
  size_t labelW = 0;
  for (int d = minD; d <= maxD; ++d) {
    labelW = std::max(labelW, std::to_string(d).size() + 1);
  }
  std::ostringstream os;
  os << std::string(labelW, ' ');
  for (int i = 0; i <= steps; ++i) {
    os << "  " << std::setw(static_cast<int>(cellW)) << i;
  }
  for (int d = minD; d <= maxD; ++d) {
    os << '\n' << std::setw(static_cast<int>(labelW)) << (std::to_string(d) + ":");
    for (int i = 0; i <= steps; ++i) {
      int b = beta(i, i + d);
      os << "  " << std::setw(static_cast<int>(cellW)) << (b == 0 ? "." : std::to_string(b));
    }
  }
  return os.str();
}

Json betti_to_json(const BettiTable& b) {
  Json arr = Json::array();
  for (const auto& [ij, c] : b.entries()) {
    Json e;
    e["i"] = ij.first;
    e["j"] = ij.second;
    e["beta"] = c;
    arr.push_back(std::move(e));
  }
  return arr;
}

BettiTable betti_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of graded generator counts");
  BettiTable out;
  for (const Json& e : j) {
    if (!e.is_object() || !e.contains("i") || !e.contains("j") || !e.contains("beta")) {
      throw InputError("each entry needs \"i\", \"j\" and \"beta\"");
    }
    if (!e["i"].is_number_integer() || !e["j"].is_number_integer() ||
        !e["beta"].is_number_integer()) {
      throw InputError("\"i\", \"j\" and \"beta\" must be integers");
    }
    int i = e["i"].get<int>();
    int jj = e["j"].get<int>();
    int c = e["beta"].get<int>();
    if (i < 0) throw InputError("homological step must be nonnegative");
    if (c < 0) throw InputError("generator count must be nonnegative");
    if (out.beta(i, jj) != 0) throw InputError("duplicate entry in the table");
    out.add(i, jj, c);
  }
  return out;
}

const std::vector<int>& ResolutionData::degreesOf(int i) const {
  if (i < 0 || i > static_cast<int>(steps.size())) throw ShapeError("no such homological step");
  return i == 0 ? generatorDegrees : steps[i - 1].sourceDegrees();
}

std::vector<FreeModuleElement> graded_kernel_generators(const GradedFreeMap& phi,
                                                        int maxDegree) {
  if (!phi.homogeneous()) {
    throw GradingError("kernel generators need a homogeneous map");
  }
  const int n = phi.n();
  const Field f = phi.field();
  const std::vector<int>& tdeg = phi.targetDegrees();
  const int tlo = *std::min_element(tdeg.begin(), tdeg.end());
  BasisWindow tgt(n, tdeg, tlo, std::max(maxDegree, tlo));
  auto image = [&](int g, const Monomial& a) {
    std::vector<std::pair<int, Scalar>> out;
    FreeModuleElement img = phi.column(g).timesMonomial(a);
    if (img.isZero()) return out;
    std::vector<Scalar> full = tgt.coords(img, f);
    for (int i = 0; i < static_cast<int>(full.size()); ++i) {
      if (!full[i].isZero()) out.emplace_back(i, full[i]);
    }
    return out;
  };
  return minimalKernelGens(n, phi.sourceDegrees(), maxDegree, f, image);
}

std::vector<FreeModuleElement> graded_kernel_generators(
    const ModulePresentation& m, const std::vector<int>& sourceDegrees,
    const std::vector<FreeModuleElement>& columns, int maxDegree) {
  if (!m.graded()) {
    throw GradingError("kernel generators need a graded quotient");
  }
  if (columns.size() != sourceDegrees.size()) {
    throw ShapeError("one image per source generator is required");
  }
  const Field f = m.field();
  for (size_t s = 0; s < columns.size(); ++s) {
    const FreeModuleElement& c = columns[s];
    if (c.isZero()) continue;
    if (c.n() != m.n() || c.genDegrees() != m.generatorDegrees()) {
      throw ShapeError("image does not match the ambient free module");
    }
    for (const Term& t : c.terms()) {
      if (!(t.coeff.field() == f)) {
        throw ArithmeticDomainError("image has coefficients in the wrong field");
      }
    }
    if (!c.homogeneous() || c.minDegree() != sourceDegrees[s]) {
      throw GradingError("image is not homogeneous of its source degree");
    }
  }
  const BasisWindow& w = m.window();
  auto image = [&](int g, const Monomial& a) {
    std::vector<std::pair<int, Scalar>> out;
    const int e = sourceDegrees[g] + a.degree();
    if (e > m.windowTop() || columns[g].isZero()) return out;
    std::vector<Scalar> cls =
        m.kernelFull().reduce(w.coords(columns[g].timesMonomial(a), f));
    for (int i = 0; i < static_cast<int>(cls.size()); ++i) {
      if (!cls[i].isZero()) out.emplace_back(i, cls[i]);
    }
    return out;
  };
  return minimalKernelGens(m.n(), sourceDegrees, maxDegree, f, image);
}

ResolutionData minimal_free_resolution(const ModulePresentation& m, int throughStep) {
  if (throughStep < 0 || throughStep > m.n()) {
    throw ShapeError("resolution step must lie between 0 and the number of variables");
  }
  if (!m.graded()) {
    throw GradingError("cannot resolve an inhomogeneous presentation");
  }
  ResolutionData out;
  if (m.degree() == 0) return out;
  const Field f = m.field();
  const int n = m.n();
  const BasisWindow& w = m.window();

  // Minimal generators of the quotient: walk the quotient basis classes by
  // ascending degree and keep those not covered by the span of variable
  // multiples of earlier classes.
  RowSpace covered(w.size(), f);
  for (int idx : m.quotientCoords()) {
    for (int i = 0; i < n; ++i) {
      FreeModuleElement mult =
          FreeModuleElement::single(n, m.generatorDegrees(), Scalar::one(f), w.gen(idx),
                                    w.mon(idx).timesVariable(i));
      covered.insert(m.kernelFull().reduce(w.coords(mult, f)));
    }
  }
  for (int idx : m.quotientCoords()) {
    std::vector<Scalar> unit(w.size(), Scalar::zero(f));
    unit[idx] = Scalar::one(f);
    std::vector<Scalar> red = covered.reduce(std::move(unit));
    if (!isZeroVector(red)) {
      covered.insert(std::move(red));
      out.generatorDegrees.push_back(w.degreeOf(idx));
      out.augmentation.push_back(FreeModuleElement::single(
          n, m.generatorDegrees(), Scalar::one(f), w.gen(idx), w.mon(idx)));
      out.betti.add(0, w.degreeOf(idx), 1);
    }
  }
  requireInternal(!out.generatorDegrees.empty(), "nonzero quotient has no generators");
  if (throughStep == 0) return out;

  const std::vector<int> qd = m.quotientDegrees();
  const int top = *std::max_element(qd.begin(), qd.end());
  std::vector<int> prevDegrees = out.generatorDegrees;
  std::vector<FreeModuleElement> gens =
      graded_kernel_generators(m, out.generatorDegrees, out.augmentation, top + 2);
  int i = 1;
  while (!gens.empty()) {
    std::vector<int> gdeg;
    gdeg.reserve(gens.size());
    for (const FreeModuleElement& g : gens) {
      requireInternal(!g.isZero() && g.homogeneous(), "syzygy generator is not homogeneous");
      requireInternal(g.maxDegree() <= top + i, "syzygy generator at the degree search boundary");
      gdeg.push_back(g.maxDegree());
    }
    out.steps.emplace_back(n, prevDegrees, gdeg, gens, f);
    for (int d : gdeg) out.betti.add(i, d, 1);
    if (i == throughStep) break;
    gens = graded_kernel_generators(out.steps.back(), top + i + 2);
    prevDegrees = std::move(gdeg);
    ++i;
  }

  for (size_t s = 0; s + 1 < out.steps.size(); ++s) {
    requireInternal(out.steps[s].compose(out.steps[s + 1]).isZero(),
                    "consecutive resolution steps do not compose to zero");
  }
  for (const GradedFreeMap& d : out.steps) {
    requireInternal(d.minimalEntries(), "resolution step has a constant entry");
  }
  if (!out.steps.empty()) {
    for (const FreeModuleElement& col : out.steps.front().columns()) {
      FreeModuleElement lifted(n, m.generatorDegrees());
      for (const Term& t : col.terms()) {
        lifted = lifted + out.augmentation[t.gen].timesMonomial(t.mon).scaled(t.coeff);
      }
      requireInternal(m.kernelFull().contains(w.coords(lifted, f)),
                      "first resolution step does not land in the presentation kernel");
    }
  }
  return out;
}

ModulePresentation dual_presentation(const ModulePresentation& m) {
  if (!m.graded()) {
    throw GradingError("dual presentation requires a homogeneous presentation");
  }
  const Field f = m.field();
  const int n = m.n();
  if (m.degree() == 0) {
    FreeModuleElement unitEl = FreeModuleElement::single(n, std::vector<int>{0},
                                                         Scalar::one(f), 0, Monomial::unit(n));
    return ModulePresentation(n, {0}, {unitEl}, f);
  }
  std::vector<DualElement> basis = dual_gens_of_module(m);
  std::vector<DualElement> mins = minimal_dual_gens(n, m.generatorDegrees(), basis, f);
  requireInternal(!basis.empty() && !mins.empty(), "nonzero module has no dual generators");
  std::vector<int> gd;
  gd.reserve(mins.size());
  for (const DualElement& s : mins) {
    requireInternal(!s.isZero() && s.homogeneous(), "dual generator is not homogeneous");
    gd.push_back(-s.maxDegree());
  }
  int bmin = basis.front().minDegree();
  for (const DualElement& s : basis) bmin = std::min(bmin, s.minDegree());
  const BasisWindow& w = m.window();
  auto image = [&](int g, const Monomial& a) {
    DualElement img = mins[g];
    for (int i = 0; i < n && !img.isZero(); ++i) {
      for (int k = 0; k < a.exp(i) && !img.isZero(); ++k) img = contract(i, img);
    }
    std::vector<std::pair<int, Scalar>> out;
    if (img.isZero()) return out;
    std::vector<Scalar> full = w.coords(img, f);
    for (int i = 0; i < static_cast<int>(full.size()); ++i) {
      if (!full[i].isZero()) out.emplace_back(i, full[i]);
    }
    return out;
  };
  std::vector<FreeModuleElement> kgens = minimalKernelGens(n, gd, -bmin + 1, f, image);
  ModulePresentation dual(n, gd, kgens, f);
  requireInternal(dual.degree() == m.degree(), "dual module has the wrong total dimension");
  return dual;
}

bool dual_resolution_check(const ModulePresentation& m) {
  ResolutionData a = minimal_free_resolution(m, m.n());
  ModulePresentation dual = dual_presentation(m);
  ResolutionData b = minimal_free_resolution(dual, m.n());
  if (m.degree() == 0) return a.length() == 0 && b.length() == 0;
  const int n = m.n();
  if (a.length() != n || b.length() != n) return false;
  for (const auto& [ij, c] : a.betti.entries()) {
    if (b.betti.beta(n - ij.first, n - ij.second) != c) return false;
  }
  for (const auto& [ij, c] : b.betti.entries()) {
    if (a.betti.beta(n - ij.first, n - ij.second) != c) return false;
  }
  return true;
}

bool euler_identity_holds(const ResolutionData& res, const ModulePresentation& m) {
  if (!m.graded()) {
    throw GradingError("graded dimensions need a homogeneous presentation");
  }
  std::map<int, long long> dims;
  for (int e : m.quotientDegrees()) ++dims[e];
  if (res.betti.entries().empty() && dims.empty()) return true;
  int lo = INT_MAX, hi = INT_MIN;
  for (const auto& [ij, c] : res.betti.entries()) {
    lo = std::min(lo, ij.second);
    hi = std::max(hi, ij.second);
  }
  for (const auto& [e, c] : dims) {
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  const int n = m.n();
  for (int e = lo; e <= hi + n + 2; ++e) {
    long long sum = 0;
    for (const auto& [ij, c] : res.betti.entries()) {
      long long cnt = monomialCount(static_cast<long long>(e) - ij.second, n);
      sum += (ij.first % 2 == 0 ? 1LL : -1LL) * c * cnt;
    }
    auto it = dims.find(e);
    long long want = it == dims.end() ? 0 : it->second;
    if (sum != want) return false;
  }
  return true;
}

}  // namespace quotlab
