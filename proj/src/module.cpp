#include "quotlab/module.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quotlab/errors.hpp"

namespace quotlab {
namespace {

// Degree past the largest generator degree up to which the construction is
// willing to search for the quotient to close up.
constexpr int kClosureCap = 40;

void requireInternal(bool ok, const char* msg) {
  if (!ok) throw std::logic_error(std::string("internal invariant violated: ") + msg);
}

template <typename Tag>
void requireElementShape(const BasicElement<Tag>& el, int n,
                         const std::vector<int>& genDegrees, const Field& f,
                         const char* what) {
  if (el.isZero()) return;
  if (el.n() != n || el.genDegrees() != genDegrees) {
    throw ShapeError(std::string(what) + " does not match the ambient free module");
  }
  for (const Term& t : el.terms()) {
    if (!(t.coeff.field() == f)) {
      throw ArithmeticDomainError(std::string(what) + " has coefficients in the wrong field");
    }
  }
}

// Span of all truncations τ_{≤N}(y^a · g) inside the window coordinates.
// Whenever every homogeneous piece of F above N sits inside the submodule
// generated by the gens, this span equals (submodule) ∩ F_{≤N}.
RowSpace truncatedMultiples(const BasisWindow& w, int N,
                            const std::vector<FreeModuleElement>& gens,
                            const Field& f) {
  RowSpace space(w.size(), f);
  for (const FreeModuleElement& g : gens) {
    if (g.isZero()) continue;
    for (int k = 0; k + g.minDegree() <= N; ++k) {
      for (const Monomial& a : monomial_basis(w.n(), k)) {
        FreeModuleElement el = g.timesMonomial(a).truncated(N);
        if (!el.isZero()) space.insert(w.coords(el, f));
      }
    }
  }
  return space;
}

std::vector<Scalar> unitVector(int size, int idx, const Field& f) {
  std::vector<Scalar> v(size, Scalar::zero(f));
  v[idx] = Scalar::one(f);
  return v;
}

bool topSliceContained(const BasisWindow& w, const RowSpace& space, const Field& f) {
  auto [first, last] = w.degreeRange(w.hi());
  for (int idx = first; idx < last; ++idx) {
    if (!space.contains(unitVector(w.size(), idx, f))) return false;
  }
  return true;
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

// Minimal generators of the submodule K from its two window slices: a
// canonical complement of Σ_i y_i·(K ∩ F_{≤top}) inside K ∩ F_{≤top+1},
// which is a basis of K/𝔪K. Rows come out in ascending canonical order
// with the lowest-degree part leading with coefficient one.
std::vector<FreeModuleElement> extractMinGenerators(const BasisWindow& w, int top,
                                                    const RowSpace& vLow,
                                                    const Field& f) {
  RowSpace shifted(w.size(), f);
  for (const std::vector<Scalar>& row : vLow.rows()) {
    for (int i = 0; i < w.n(); ++i) {
      std::vector<Scalar> out(w.size(), Scalar::zero(f));
      for (int c = 0; c < w.size(); ++c) {
        if (row[c].isZero()) continue;
        int target = w.find(w.gen(c), w.mon(c).timesVariable(i));
        requireInternal(target >= 0, "variable shift left the window");
        out[target] = row[c];
      }
      shifted.insert(std::move(out));
    }
  }
  RowSpace vFull = vLow;
  auto [first, last] = w.degreeRange(top + 1);
  for (int idx = first; idx < last; ++idx) {
    vFull.insert(unitVector(w.size(), idx, f));
  }
  std::vector<FreeModuleElement> gens;
  RowSpace seen = std::move(shifted);
  for (const std::vector<Scalar>& row : vFull.rows()) {
    std::vector<Scalar> red = seen.reduce(row);
    if (isZeroVector(red)) continue;
    normalizeLead(red);
    gens.push_back(w.fromCoords<FreeSideTag>(red));
    seen.insert(std::move(red));
  }
  return gens;
}

}  // namespace

ActionModule module_from_tuple(const CommTuple& t) { return ActionModule{t.matrices()}; }

CommTuple tuple_from_module(const ActionModule& m) { return CommTuple(m.actions); }

bool is_stable(const StablePair& p) {
  const CommTuple& t = p.tuple;
  const int d = t.d();
  const Field f = t.field();
  RowSpace span(d, f);
  std::deque<std::vector<Scalar>> work;
  for (const std::vector<Scalar>& v : p.vectors) {
    if (static_cast<int>(v.size()) != d) {
      throw ShapeError("marked vector length does not match the tuple size");
    }
    for (const Scalar& c : v) {
      if (!(c.field() == f)) {
        throw ArithmeticDomainError("marked vector has coefficients in the wrong field");
      }
    }
    if (span.insert(v)) work.push_back(v);
  }
  while (!work.empty() && span.dim() < d) {
    std::vector<Scalar> v = std::move(work.front());
    work.pop_front();
    for (int i = 0; i < t.n(); ++i) {
      std::vector<Scalar> next = t.x(i).apply(v);
      if (span.insert(next)) work.push_back(std::move(next));
    }
  }
  return span.dim() == d;
}

HilbertFunction::HilbertFunction(std::vector<int> values) : h_(std::move(values)) {
  for (int v : h_) {
    if (v < 0) throw ShapeError("negative value in a dimension sequence");
  }
  while (!h_.empty() && h_.back() == 0) h_.pop_back();
}

int HilbertFunction::total() const {
  return std::accumulate(h_.begin(), h_.end(), 0);
}

std::string HilbertFunction::str() const {
  std::string out = "(";
  for (size_t i = 0; i < h_.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(h_[i]);
  }
  return out + ")";
}

ModulePresentation::ModulePresentation(int n, std::vector<int> generatorDegrees,
                                       std::vector<FreeModuleElement> kGenerators,
                                       Field f)
    : n_(n),
      generatorDegrees_(std::move(generatorDegrees)),
      kGenerators_(std::move(kGenerators)),
      field_(f),
      window_(n, generatorDegrees_, 0, -1),
      kernelLow_(0, f),
      kernelFull_(0, f) {
  if (n_ < 1) throw ShapeError("need at least one variable");
  if (r() < 1) throw ShapeError("need at least one free generator");
  for (const FreeModuleElement& g : kGenerators_) {
    requireElementShape(g, n_, generatorDegrees_, field_, "kernel generator");
  }
  graded_ = std::all_of(kGenerators_.begin(), kGenerators_.end(),
                        [](const FreeModuleElement& g) { return g.homogeneous(); });
  const int gmin = *std::min_element(generatorDegrees_.begin(), generatorDegrees_.end());
  const int gmax = *std::max_element(generatorDegrees_.begin(), generatorDegrees_.end());

  bool closed = false;
  for (int N = gmax + 1; N <= gmax + kClosureCap; ++N) {
    BasisWindow w(n_, generatorDegrees_, gmin, N);
    RowSpace space = truncatedMultiples(w, N, kGenerators_, field_);
    if (!topSliceContained(w, space, field_)) continue;
    windowTop_ = N - 1;
    window_ = std::move(w);
    kernelFull_ = std::move(space);
    closed = true;
    break;
  }
  if (!closed) {
    throw InputError(
        "kernel generators do not cut out a finite quotient supported at the origin "
        "(no closure through degree " + std::to_string(gmax + kClosureCap) + ")");
  }
  kernelLow_ = truncatedMultiples(window_, windowTop_, kGenerators_, field_);
  const int lowCount = window_.degreeRange(window_.hi()).first;
  requireInternal(kernelFull_.dim() ==
                      kernelLow_.dim() + (window_.size() - lowCount),
                  "window slices of the kernel are inconsistent");

  std::vector<char> isPivot(window_.size(), 0);
  for (const std::vector<Scalar>& row : kernelFull_.rows()) {
    int p = 0;
    while (row[p].isZero()) ++p;
    isPivot[p] = 1;
  }
  for (int idx = 0; idx < window_.size(); ++idx) {
    if (isPivot[idx]) continue;
    requireInternal(idx < lowCount, "quotient basis escaped the window");
    quotientCoords_.push_back(idx);
  }
  degree_ = static_cast<int>(quotientCoords_.size());

  // dim 𝔪^k M, read off as the span growth of the monomial slices of
  // y-degree ≥ k over the kernel window.
  std::vector<int> q;
  for (int k = 0;; ++k) {
    RowSpace tmp = kernelLow_;
    int grow = 0;
    for (int idx = 0; idx < lowCount; ++idx) {
      if (window_.mon(idx).degree() < k) continue;
      if (tmp.insert(unitVector(window_.size(), idx, field_))) ++grow;
    }
    q.push_back(grow);
    if (grow == 0) break;
  }
  truncation_ = static_cast<int>(q.size()) - 1;
  requireInternal(q.front() == degree_, "filtration does not start at the full dimension");
  for (int k = 0; k + 1 < static_cast<int>(q.size()); ++k) {
    filtered_.push_back(q[k] - q[k + 1]);
  }
}

std::vector<int> ModulePresentation::quotientDegrees() const {
  std::vector<int> out;
  out.reserve(quotientCoords_.size());
  for (int idx : quotientCoords_) out.push_back(window_.degreeOf(idx));
  return out;
}

ModulePresentation quot_point(const StablePair& p) {
  const CommTuple& t = p.tuple;
  const Field f = t.field();
  const int d = t.d();
  const int n = t.n();
  const int r = p.r();
  if (r < 1) throw ShapeError("a framed module needs at least one marked vector");
  if (!is_stable(p)) {
    throw StabilityError("marked vectors do not generate under the tuple action");
  }
  if (!is_nilpotent_tuple(t)) {
    throw SupportNotSplit("support is away from the origin; translate the tuple first");
  }
  const int D = nilpotency_bound(t);

  // Generator degree (D-1) - depth, where depth is the longest product of
  // the operators that does not kill the vector; this makes the kernel of a
  // gradable framed module come out homogeneous.
  std::vector<int> gdeg(r, 0);
  for (int j = 0; j < r; ++j) {
    int depth = 0;
    std::vector<std::vector<Scalar>> cur = {p.vectors[j]};
    for (int k = 1; k < D; ++k) {
      RowSpace next(d, f);
      for (const std::vector<Scalar>& v : cur) {
        for (int i = 0; i < n; ++i) next.insert(t.x(i).apply(v));
      }
      if (next.dim() == 0) break;
      depth = k;
      cur = next.rows();
    }
    gdeg[j] = (D - 1) - depth;
  }

  const int gmin = *std::min_element(gdeg.begin(), gdeg.end());
  const int gmax = *std::max_element(gdeg.begin(), gdeg.end());
  const int top = D + gmax - 1;
  BasisWindow w(n, gdeg, gmin, top + 1);
  const int lowCount = w.degreeRange(top + 1).first;

  // Evaluate e_j ↦ v_j on every window monomial, reusing the one-variable
  // parent of each monomial (windows are ordered by ascending degree).
  std::vector<std::vector<Scalar>> val(lowCount);
  for (int idx = 0; idx < lowCount; ++idx) {
    int j = w.gen(idx);
    const Monomial& a = w.mon(idx);
    if (a.degree() == 0) {
      val[idx] = p.vectors[j];
      continue;
    }
    int i = 0;
    while (a.exp(i) == 0) ++i;
    int parent = w.find(j, a.dividedByVariable(i));
    requireInternal(parent >= 0 && parent < idx, "monomial parent missing from the window");
    val[idx] = t.x(i).apply(val[parent]);
  }
  ExactMatrix eval = ExactMatrix::zeros(d, lowCount, f);
  for (int c = 0; c < lowCount; ++c) {
    for (int row = 0; row < d; ++row) {
      if (!val[c][row].isZero()) eval.set(row, c, val[c][row]);
    }
  }
  RowSpace vLow(w.size(), f);
  for (std::vector<Scalar>& ker : kernel_basis(eval)) {
    ker.resize(w.size(), Scalar::zero(f));
    vLow.insert(std::move(ker));
  }
  std::vector<FreeModuleElement> gens = extractMinGenerators(w, top, vLow, f);
  ModulePresentation m(n, std::move(gdeg), std::move(gens), f);
  requireInternal(m.degree() == d, "presented quotient has the wrong dimension");
  return m;
}

HilbertFunction hilbert_function(const ModulePresentation& m) {
  if (!m.graded()) {
    throw GradingError("presentation kernel is not homogeneous");
  }
  return HilbertFunction(m.filteredValues());
}

CommTuple dual_tuple(const CommTuple& t) {
  std::vector<ExactMatrix> out;
  out.reserve(t.n());
  for (int i = 0; i < t.n(); ++i) out.push_back(t.x(i).transpose());
  return CommTuple(std::move(out));
}

int min_generators(const CommTuple& t) {
  const int d = t.d();
  ExactMatrix stacked = ExactMatrix::sparseZeros(t.n() * d, d, t.field());
  for (int i = 0; i < t.n(); ++i) {
    const int base = i * d;
    t.x(i).forEachNonzero([&](int r, int c, const Scalar& v) {
      stacked.set(base + c, r, v);
    });
  }
  return d - rank_of(stacked);
}

ModulePresentation perp_of_dual_gens(int n, std::vector<int> generatorDegrees,
                                     const std::vector<DualElement>& sigmas,
                                     Field f) {
  if (n < 1) throw ShapeError("need at least one variable");
  if (generatorDegrees.empty()) throw ShapeError("need at least one free generator");
  for (const DualElement& s : sigmas) {
    requireElementShape(s, n, generatorDegrees, f, "dual generator");
  }
  const int gmin = *std::min_element(generatorDegrees.begin(), generatorDegrees.end());
  const int gmax = *std::max_element(generatorDegrees.begin(), generatorDegrees.end());
  int top = gmax;
  for (const DualElement& s : sigmas) {
    if (!s.isZero()) top = std::max(top, s.maxDegree());
  }
  BasisWindow w(n, generatorDegrees, gmin, top + 1);
  const int lowCount = w.degreeRange(top + 1).first;

  // Close the dual span under contraction by every variable.
  RowSpace span(w.size(), f);
  std::deque<DualElement> work(sigmas.begin(), sigmas.end());
  while (!work.empty()) {
    DualElement s = std::move(work.front());
    work.pop_front();
    if (s.isZero()) continue;
    if (!span.insert(w.coords(s, f))) continue;
    for (int i = 0; i < n; ++i) work.push_back(contract(i, s));
  }

  // The annihilator of the span inside the low window is the kernel slice.
  ExactMatrix pairing = ExactMatrix::zeros(span.dim(), lowCount, f);
  for (int rowIdx = 0; rowIdx < span.dim(); ++rowIdx) {
    const std::vector<Scalar>& row = span.rows()[rowIdx];
    for (int c = 0; c < lowCount; ++c) {
      if (!row[c].isZero()) pairing.set(rowIdx, c, row[c]);
    }
  }
  RowSpace vLow(w.size(), f);
  for (std::vector<Scalar>& ker : kernel_basis(pairing)) {
    ker.resize(w.size(), Scalar::zero(f));
    vLow.insert(std::move(ker));
  }
  std::vector<FreeModuleElement> gens = extractMinGenerators(w, top, vLow, f);
  ModulePresentation m(n, std::move(generatorDegrees), std::move(gens), f);
  requireInternal(m.degree() == span.dim(), "perp quotient dimension differs from the dual span");
  return m;
}

std::vector<DualElement> dual_gens_of_module(const ModulePresentation& m) {
  const BasisWindow& w = m.window();
  const Field f = m.field();
  const int lowCount = w.degreeRange(w.hi()).first;
  const RowSpace& vLow = m.kernelLow();
  ExactMatrix pairing = ExactMatrix::zeros(vLow.dim(), lowCount, f);
  for (int rowIdx = 0; rowIdx < vLow.dim(); ++rowIdx) {
    const std::vector<Scalar>& row = vLow.rows()[rowIdx];
    for (int c = 0; c < lowCount; ++c) {
      if (!row[c].isZero()) pairing.set(rowIdx, c, row[c]);
    }
  }
  RowSpace duals(lowCount, f);
  for (std::vector<Scalar>& ker : kernel_basis(pairing)) duals.insert(std::move(ker));
  requireInternal(duals.dim() == m.degree(), "dual space dimension differs from the degree");
  std::vector<DualElement> out;
  out.reserve(duals.dim());
  for (const std::vector<Scalar>& row : duals.rows()) {
    std::vector<Scalar> padded = row;
    padded.resize(w.size(), Scalar::zero(f));
    out.push_back(w.fromCoords<DualSideTag>(padded));
  }
  return out;
}

std::vector<DualElement> minimal_dual_gens(int n,
                                           const std::vector<int>& generatorDegrees,
                                           const std::vector<DualElement>& span,
                                           Field f) {
  if (n < 1) throw ShapeError("need at least one variable");
  if (generatorDegrees.empty()) throw ShapeError("need at least one free generator");
  for (const DualElement& s : span) {
    requireElementShape(s, n, generatorDegrees, f, "dual element");
  }
  const int gmin = *std::min_element(generatorDegrees.begin(), generatorDegrees.end());
  int top = gmin;
  for (const DualElement& s : span) {
    if (!s.isZero()) top = std::max(top, s.maxDegree());
  }
  BasisWindow w(n, generatorDegrees, gmin, top);
  RowSpace full(w.size(), f);
  for (const DualElement& s : span) {
    if (!s.isZero()) full.insert(w.coords(s, f));
  }
  RowSpace seen(w.size(), f);
  for (const DualElement& s : span) {
    for (int i = 0; i < n; ++i) {
      DualElement c = contract(i, s);
      if (!c.isZero()) seen.insert(w.coords(c, f));
    }
  }
  std::vector<DualElement> gens;
  for (const std::vector<Scalar>& row : full.rows()) {
    std::vector<Scalar> red = seen.reduce(row);
    if (isZeroVector(red)) continue;
    normalizeLead(red);
    gens.push_back(w.fromCoords<DualSideTag>(red));
    seen.insert(std::move(red));
  }
  return gens;
}

StablePair pair_from_presentation(const ModulePresentation& m) {
  const BasisWindow& w = m.window();
  const Field f = m.field();
  const std::vector<int>& coordsM = m.quotientCoords();
  const int d = m.degree();
  std::vector<int> pos(w.size(), -1);
  for (int row = 0; row < d; ++row) pos[coordsM[row]] = row;
  const RowSpace& vFull = m.kernelFull();

  auto classOf = [&](int idx) {
    std::vector<Scalar> red = vFull.reduce(unitVector(w.size(), idx, f));
    std::vector<Scalar> out(d, Scalar::zero(f));
    for (int c = 0; c < w.size(); ++c) {
      if (red[c].isZero()) continue;
      requireInternal(pos[c] >= 0, "quotient class escaped the chosen basis");
      out[pos[c]] = red[c];
    }
    return out;
  };

  std::vector<ExactMatrix> actions(m.n(), ExactMatrix::zeros(d, d, f));
  for (int col = 0; col < d; ++col) {
    const int idx = coordsM[col];
    for (int i = 0; i < m.n(); ++i) {
      int target = w.find(w.gen(idx), w.mon(idx).timesVariable(i));
      requireInternal(target >= 0, "variable shift left the window");
      std::vector<Scalar> cls = classOf(target);
      for (int row = 0; row < d; ++row) {
        if (!cls[row].isZero()) actions[i].set(row, col, cls[row]);
      }
    }
  }
  std::vector<std::vector<Scalar>> vectors;
  vectors.reserve(m.r());
  for (int j = 0; j < m.r(); ++j) {
    int idx = w.find(j, Monomial::unit(m.n()));
    requireInternal(idx >= 0, "free generator missing from the window");
    vectors.push_back(classOf(idx));
  }
  return StablePair{CommTuple(std::move(actions)), std::move(vectors)};
}

Json module_to_json(const ModulePresentation& m) {
  Json j;
  j["n"] = m.n();
  j["r"] = m.r();
  j["generatorDegrees"] = m.generatorDegrees();
  j["field"] = field_to_json(m.field());
  Json arr = Json::array();
  for (const FreeModuleElement& g : m.kGenerators()) arr.push_back(element_to_json(g));
  j["kGenerators"] = std::move(arr);
  return j;
}

namespace {

struct FreeModuleHeader {
  int n = 0;
  std::vector<int> generatorDegrees;
  Field field;
};

FreeModuleHeader headerFromJson(const Json& j, const Field& defaultField,
                                const char* what) {
  if (!j.is_object()) {
    throw InputError(std::string(what) + " document must be a JSON object");
  }
  for (const char* key : {"n", "generatorDegrees"}) {
    if (!j.contains(key)) {
      throw InputError(std::string(what) + " document needs \"" + key + "\"");
    }
  }
  FreeModuleHeader h;
  if (!j["n"].is_number_integer()) throw InputError("\"n\" must be an integer");
  h.n = j["n"].get<int>();
  if (!j["generatorDegrees"].is_array()) {
    throw InputError("\"generatorDegrees\" must be an array of integers");
  }
  for (const Json& e : j["generatorDegrees"]) {
    if (!e.is_number_integer()) {
      throw InputError("\"generatorDegrees\" must be an array of integers");
    }
    h.generatorDegrees.push_back(e.get<int>());
  }
  if (j.contains("r")) {
    if (!j["r"].is_number_integer() ||
        j["r"].get<int>() != static_cast<int>(h.generatorDegrees.size())) {
      throw InputError("\"r\" does not match the number of generator degrees");
    }
  }
  h.field = j.contains("field") ? field_from_json(j["field"]) : defaultField;
  return h;
}

}  // namespace

ModulePresentation module_from_json(const Json& j, const Field& defaultField) {
  FreeModuleHeader h = headerFromJson(j, defaultField, "module");
  if (!j.contains("kGenerators") || !j["kGenerators"].is_array()) {
    throw InputError("module document needs a \"kGenerators\" array");
  }
  std::vector<FreeModuleElement> gens;
  for (const Json& e : j["kGenerators"]) {
    gens.push_back(element_from_json<FreeSideTag>(e, h.n, h.generatorDegrees, h.field));
  }
  return ModulePresentation(h.n, std::move(h.generatorDegrees), std::move(gens), h.field);
}

Json dual_gens_to_json(int n, const std::vector<int>& generatorDegrees,
                       const std::vector<DualElement>& gens, const Field& f) {
  Json j;
  j["n"] = n;
  j["r"] = static_cast<int>(generatorDegrees.size());
  j["generatorDegrees"] = generatorDegrees;
  j["field"] = field_to_json(f);
  Json arr = Json::array();
  for (const DualElement& g : gens) arr.push_back(element_to_json(g));
  j["dualGenerators"] = std::move(arr);
  return j;
}

DualGensData dual_gens_from_json(const Json& j, const Field& defaultField) {
  FreeModuleHeader h = headerFromJson(j, defaultField, "dual generator");
  if (!j.contains("dualGenerators") || !j["dualGenerators"].is_array()) {
    throw InputError("dual generator document needs a \"dualGenerators\" array");
  }
  DualGensData out;
  out.n = h.n;
  out.generatorDegrees = h.generatorDegrees;
  out.field = h.field;
  for (const Json& e : j["dualGenerators"]) {
    out.gens.push_back(element_from_json<DualSideTag>(e, h.n, h.generatorDegrees, h.field));
  }
  return out;
}

}  // namespace quotlab
