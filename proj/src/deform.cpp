#include "quotlab/deform.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quotlab/errors.hpp"
#include "quotlab/matrix.hpp"
#include "quotlab/monomial.hpp"
#include "quotlab/resolution.hpp"

namespace quotlab {
namespace {

void requireInternal(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("internal invariant violated: ") + what);
}

bool isZeroVector(const std::vector<Scalar>& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.isZero(); });
}

void normalizeLead(std::vector<Scalar>& v) {
  for (const Scalar& s : v) {
    if (s.isZero()) continue;
    const Scalar inv = s.inverse();
    for (Scalar& t : v) t *= inv;
    return;
  }
}

std::vector<std::vector<Scalar>> unitVectors(int count, const Field& f) {
  std::vector<std::vector<Scalar>> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    std::vector<Scalar> v(count, Scalar::zero(f));
    v[i] = Scalar::one(f);
    out.push_back(std::move(v));
  }
  return out;
}

struct CoverBounds {
  int top;       // largest degree with a nonzero quotient piece
  int genBound;  // minimal kernel generators live in degrees <= genBound
};

// For 0 -> K -> F -> M -> 0 with M of finite length, the regularity of K is
// at most max(max generator degree, top + 1); minimal generators of K sit in
// degrees up to that bound and each further syzygy step adds one.
CoverBounds coverBounds(const ModulePresentation& m) {
  const std::vector<int>& gd = m.generatorDegrees();
  const int gmax = *std::max_element(gd.begin(), gd.end());
  if (m.degree() == 0) return {gmax - 1, gmax};  // kernel is the whole cover
  const std::vector<int>& qd = m.quotientDegrees();
  const int top = *std::max_element(qd.begin(), qd.end());
  return {top, std::max(gmax, top + 1)};
}

std::vector<FreeModuleElement> unitColumns(const ModulePresentation& m) {
  std::vector<FreeModuleElement> cols;
  cols.reserve(m.r());
  for (int j = 0; j < m.r(); ++j) {
    cols.push_back(FreeModuleElement::single(m.n(), m.generatorDegrees(),
                                             Scalar::one(m.field()), j,
                                             Monomial::unit(m.n())));
  }
  return cols;
}

struct KernelSteps {
  std::vector<int> g1d;
  std::vector<FreeModuleElement> g1;
  std::vector<int> g2d;
  std::vector<FreeModuleElement> g2;
  std::vector<int> g3d;
  std::vector<FreeModuleElement> g3;
};

void computeG1(KernelSteps& ks, const ModulePresentation& m) {
  const CoverBounds b = coverBounds(m);
  ks.g1 = graded_kernel_generators(m, m.generatorDegrees(), unitColumns(m),
                                   b.genBound + 1);
  requireInternal(!ks.g1.empty(), "a finite quotient always has kernel generators");
  ks.g1d.reserve(ks.g1.size());
  for (const FreeModuleElement& g : ks.g1) {
    requireInternal(g.homogeneous() && g.maxDegree() <= b.genBound,
                    "kernel generator beyond the degree bound");
    ks.g1d.push_back(g.maxDegree());
  }
}

// Syzygies of degree g can only be observed through quotient pieces at
// degree g + e, so callers pass the largest degree they can see; the step is
// computed through that degree only.
void computeG2(KernelSteps& ks, const ModulePresentation& m, int through) {
  const GradedFreeMap d1(m.n(), m.generatorDegrees(), ks.g1d, ks.g1, m.field());
  ks.g2 = graded_kernel_generators(d1, through);
  ks.g2d.reserve(ks.g2.size());
  for (const FreeModuleElement& g : ks.g2) ks.g2d.push_back(g.maxDegree());
}

void computeG3(KernelSteps& ks, const ModulePresentation& m, int through) {
  if (ks.g2.empty()) return;
  const GradedFreeMap d2(m.n(), ks.g1d, ks.g2d, ks.g2, m.field());
  ks.g3 = graded_kernel_generators(d2, through);
  ks.g3d.reserve(ks.g3.size());
  for (const FreeModuleElement& g : ks.g3) ks.g3d.push_back(g.maxDegree());
}

struct ClassTable {
  std::map<int, std::vector<int>> byDegree;  // class degree -> window indices
};

ClassTable classTable(const ModulePresentation& m) {
  ClassTable t;
  const BasisWindow& w = m.window();
  for (int idx : m.quotientCoords()) t.byDegree[w.degreeOf(idx)].push_back(idx);
  return t;
}

// Basis of the degree-e value assignments on free generators of the given
// degrees: pairs (generator, class window index).
std::vector<std::pair<int, int>> valueBasis(const ClassTable& classes,
                                            const std::vector<int>& genDegrees,
                                            int e) {
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k < static_cast<int>(genDegrees.size()); ++k) {
    auto it = classes.byDegree.find(genDegrees[k] + e);
    if (it == classes.byDegree.end()) continue;
    for (int idx : it->second) out.emplace_back(k, idx);
  }
  return out;
}

// Matrix of "value assignment on the source generators -> its pullback along
// the columns", in the degree-e value bases.  Column module generators whose
// shifted degree has no quotient piece contribute nothing.
ExactMatrix pullbackMatrix(const ModulePresentation& m, const ClassTable& classes,
                           const std::vector<FreeModuleElement>& cols,
                           const std::vector<int>& colDegrees,
                           const std::vector<std::pair<int, int>>& srcBasis,
                           const std::vector<std::pair<int, int>>& tgtBasis,
                           int e) {
  const Field f = m.field();
  const BasisWindow& w = m.window();
  std::map<std::pair<int, int>, int> rowOf;
  for (int r = 0; r < static_cast<int>(tgtBasis.size()); ++r) rowOf.emplace(tgtBasis[r], r);
  ExactMatrix mat = ExactMatrix::sparseZeros(std::max<int>(static_cast<int>(tgtBasis.size()), 1),
                                             static_cast<int>(srcBasis.size()), f);
  for (int c = 0; c < static_cast<int>(srcBasis.size()); ++c) {
    const auto [k, idxS] = srcBasis[c];
    for (int l = 0; l < static_cast<int>(cols.size()); ++l) {
      if (classes.byDegree.find(colDegrees[l] + e) == classes.byDegree.end()) continue;
      FreeModuleElement value(m.n(), m.generatorDegrees());
      for (const auto& t : cols[l].terms()) {
        if (t.gen != k) continue;
        value = value + FreeModuleElement::single(m.n(), m.generatorDegrees(), t.coeff,
                                                  w.gen(idxS), w.mon(idxS).times(t.mon));
      }
      if (value.isZero()) continue;
      const std::vector<Scalar> cls = m.kernelFull().reduce(w.coords(value, f));
      for (int p = 0; p < static_cast<int>(cls.size()); ++p) {
        if (cls[p].isZero()) continue;
        const auto it = rowOf.find({l, p});
        requireInternal(it != rowOf.end(), "pullback landed outside its degree block");
        mat.set(it->second, c, cls[p]);
      }
    }
  }
  return mat;
}

std::vector<FreeModuleElement> valuesOnGenerators(const ModulePresentation& m, int genCount,
                                                  const std::vector<std::pair<int, int>>& basisPairs,
                                                  const std::vector<Scalar>& v) {
  const BasisWindow& w = m.window();
  std::vector<FreeModuleElement> values(genCount, FreeModuleElement(m.n(), m.generatorDegrees()));
  for (int c = 0; c < static_cast<int>(basisPairs.size()); ++c) {
    if (v[c].isZero()) continue;
    const auto [k, idx] = basisPairs[c];
    values[k] = values[k] + FreeModuleElement::single(m.n(), m.generatorDegrees(), v[c],
                                                      w.gen(idx), w.mon(idx));
  }
  return values;
}

GradedExtSpace extImpl(const ModulePresentation& m, bool nonnegativeOnly) {
  if (!m.graded()) throw GradingError("graded obstruction spaces need a homogeneous presentation");
  const Field f = m.field();
  const CoverBounds b = coverBounds(m);
  const ClassTable classes = classTable(m);
  KernelSteps ks;
  computeG1(ks, m);
  GradedExtSpace out;
  const int g2Full = b.genBound + 1;
  computeG2(ks, m, nonnegativeOnly ? std::min(g2Full, b.top) : g2Full);
  out.syzygyDegrees = ks.g2d;
  if (classes.byDegree.empty() || ks.g2.empty()) return out;

  std::set<int> candidates;
  for (int g : ks.g2d) {
    for (const auto& kv : classes.byDegree) {
      const int e = kv.first - g;
      if (!nonnegativeOnly || e >= 0) candidates.insert(e);
    }
  }
  if (candidates.empty()) return out;
  computeG3(ks, m, std::min(b.genBound + 2, b.top - *candidates.begin()));

  for (const int e : candidates) {
    const auto c2 = valueBasis(classes, ks.g2d, e);
    if (c2.empty()) continue;

    std::vector<std::vector<Scalar>> cocycles;
    if (ks.g3.empty()) {
      cocycles = unitVectors(static_cast<int>(c2.size()), f);
    } else {
      const auto c3 = valueBasis(classes, ks.g3d, e);
      cocycles = kernel_basis(pullbackMatrix(m, classes, ks.g3, ks.g3d, c2, c3, e));
    }
    if (cocycles.empty()) continue;

    RowSpace seen(static_cast<int>(c2.size()), f);
    const auto c1 = valueBasis(classes, ks.g1d, e);
    if (!c1.empty()) {
      std::vector<std::vector<Scalar>> columns(
          c1.size(), std::vector<Scalar>(c2.size(), Scalar::zero(f)));
      pullbackMatrix(m, classes, ks.g2, ks.g2d, c1, c2, e)
          .forEachNonzero([&](int r, int c, const Scalar& v) { columns[c][r] = v; });
      for (std::vector<Scalar>& col : columns) seen.insert(std::move(col));
    }

    int count = 0;
    std::vector<std::vector<FreeModuleElement>> reps;
    for (std::vector<Scalar>& z : cocycles) {
      std::vector<Scalar> red = seen.reduce(std::move(z));
      if (isZeroVector(red)) continue;
      normalizeLead(red);
      reps.push_back(valuesOnGenerators(m, static_cast<int>(ks.g2d.size()), c2, red));
      seen.insert(std::move(red));
      ++count;
    }
    if (count > 0) {
      out.dims[e] = count;
      out.reps[e] = std::move(reps);
    }
  }
  return out;
}

}  // namespace

int GradedHomSpace::dim(int e) const {
  const auto it = dims.find(e);
  return it == dims.end() ? 0 : it->second;
}

int GradedHomSpace::total() const {
  int s = 0;
  for (const auto& kv : dims) s += kv.second;
  return s;
}

int GradedExtSpace::dim(int e) const {
  const auto it = dims.find(e);
  return it == dims.end() ? 0 : it->second;
}

int GradedExtSpace::total() const {
  int s = 0;
  for (const auto& kv : dims) s += kv.second;
  return s;
}

int BBGradedData::tangentTotal() const {
  int s = 0;
  for (const auto& kv : tangentDims) s += kv.second;
  return s;
}

int BBGradedData::obstructionTotal() const {
  int s = 0;
  for (const auto& kv : obstructionDims) s += kv.second;
  return s;
}

CoverResolution cover_resolution(const ModulePresentation& m) {
  if (!m.graded()) throw GradingError("cover resolutions need a homogeneous presentation");
  const CoverBounds b = coverBounds(m);
  KernelSteps ks;
  computeG1(ks, m);
  computeG2(ks, m, b.genBound + 1);
  computeG3(ks, m, b.genBound + 2);
  return CoverResolution{std::move(ks.g1d), std::move(ks.g1), std::move(ks.g2d),
                         std::move(ks.g2),  std::move(ks.g3d), std::move(ks.g3)};
}

GradedHomSpace hom_graded(const ModulePresentation& m) {
  if (!m.graded()) throw GradingError("graded homomorphism spaces need a homogeneous presentation");
  const Field f = m.field();
  const CoverBounds b = coverBounds(m);
  const ClassTable classes = classTable(m);
  KernelSteps ks;
  computeG1(ks, m);
  GradedHomSpace out;
  out.kernelDegrees = ks.g1d;
  if (classes.byDegree.empty()) return out;

  std::set<int> candidates;
  for (int g : ks.g1d) {
    for (const auto& kv : classes.byDegree) candidates.insert(kv.first - g);
  }
  computeG2(ks, m, std::min(b.genBound + 1, b.top - *candidates.begin()));

  for (const int e : candidates) {
    const auto c1 = valueBasis(classes, ks.g1d, e);
    if (c1.empty()) continue;
    std::vector<std::vector<Scalar>> kernel;
    if (ks.g2.empty()) {
      kernel = unitVectors(static_cast<int>(c1.size()), f);
    } else {
      const auto c2 = valueBasis(classes, ks.g2d, e);
      kernel = kernel_basis(pullbackMatrix(m, classes, ks.g2, ks.g2d, c1, c2, e));
    }
    if (kernel.empty()) continue;
    out.dims[e] = static_cast<int>(kernel.size());
    auto& homs = out.basis[e];
    for (const std::vector<Scalar>& kv : kernel) {
      homs.push_back(valuesOnGenerators(m, static_cast<int>(ks.g1d.size()), c1, kv));
    }
  }
  return out;
}

GradedExtSpace ext1_graded(const ModulePresentation& m) { return extImpl(m, false); }

bool quot_tangent_consistency(const ModulePresentation& m, const CommTuple& t) {
  const long d = m.degree();
  const long matrixSide = static_cast<long>(m.r()) * d - d * d + tangent_dimension(t);
  return hom_graded(m).total() == matrixSide;
}

bool has_trivial_negative_tangents(const ModulePresentation& m) {
  // A homomorphism preserves order when it maps K ∩ 𝔪^j F into 𝔪^j M for
  // every j; the coordinate translations always lower order.  The verdict is
  // whether the order-lowering quotient of Hom(K, M) is exactly their span,
  // of dimension n.  When every generator sits in a single degree the
  // order-preserving part is the sum of the nonnegative-degree pieces, so
  // this reduces to counting negative-degree homomorphisms.
  const GradedHomSpace h = hom_graded(m);
  const CoverResolution cov = cover_resolution(m);
  const BasisWindow& w = m.window();
  const Field& f = m.field();
  const int width = w.size();
  const int n = m.n();

  int topDeg = -1;
  for (int deg : m.quotientDegrees()) topDeg = std::max(topDeg, deg);
  int minE = 0;
  for (const auto& kv : h.dims) minE = std::min(minE, kv.first);

  // 𝔪^j M as row spaces of canonical class vectors; empty above the window.
  const int levels = m.windowTop() + 2;
  std::vector<RowSpace> mj;
  for (int j = 0; j <= levels; ++j) {
    RowSpace s(width, f);
    for (int idx = 0; idx < width; ++idx) {
      if (w.mon(idx).degree() < j) continue;
      std::vector<Scalar> u(width, Scalar::zero(f));
      u[idx] = Scalar::one(f);
      s.insert(m.kernelFull().reduce(u));
    }
    mj.push_back(std::move(s));
  }

  struct HomEntry {
    int deg;
    const std::vector<FreeModuleElement>* values;
  };
  std::vector<HomEntry> homs;
  for (const auto& kv : h.basis) {
    for (const auto& vals : kv.second) homs.push_back({kv.first, &vals});
  }
  const int homCount = static_cast<int>(homs.size());

  // Constraint rows over the hom-basis coefficients: the class of φ(u) must
  // stay in 𝔪^j M for each kernel element u of degree d lying in 𝔪^j F.
  std::vector<std::map<int, Scalar>> rows;
  for (int d = 1; d <= topDeg - minE; ++d) {
    struct SpanCol {
      int gen;
      Monomial mono;
    };
    std::vector<SpanCol> cols;
    std::vector<std::vector<Scalar>> colCoords;
    for (std::size_t g = 0; g < cov.g1.size(); ++g) {
      const int k = d - cov.g1Degrees[g];
      if (k < 0) continue;
      for (const Monomial& b : monomial_basis(n, k)) {
        cols.push_back({static_cast<int>(g), b});
        colCoords.push_back(w.coords(cov.g1[g].timesMonomial(b), f));
      }
    }
    for (int j = 1; j <= std::min(d, levels); ++j) {
      std::vector<int> lowRows;
      for (int idx = 0; idx < width; ++idx) {
        if (w.mon(idx).degree() < j) lowRows.push_back(idx);
      }
      ExactMatrix sub = ExactMatrix::sparseZeros(
          static_cast<int>(lowRows.size()), static_cast<int>(cols.size()), f);
      for (std::size_t c = 0; c < cols.size(); ++c) {
        for (std::size_t lr = 0; lr < lowRows.size(); ++lr) {
          if (!colCoords[c][lowRows[lr]].isZero()) {
            sub.set(static_cast<int>(lr), static_cast<int>(c), colCoords[c][lowRows[lr]]);
          }
        }
      }
      for (const auto& combo : kernel_basis(sub)) {
        std::vector<std::vector<Scalar>> residuals(homCount);
        bool any = false;
        for (int s = 0; s < homCount; ++s) {
          if (d + homs[s].deg > topDeg) continue;  // value class is zero
          FreeModuleElement val(n, m.generatorDegrees());
          for (std::size_t i = 0; i < combo.size(); ++i) {
            if (combo[i].isZero()) continue;
            val = val + (*homs[s].values)[cols[i].gen].timesMonomial(cols[i].mono).scaled(combo[i]);
          }
          if (val.isZero()) continue;
          const std::vector<Scalar> cls = m.kernelFull().reduce(w.coords(val, f));
          residuals[s] = mj[j].reduce(cls);
          for (const Scalar& x : residuals[s]) {
            if (!x.isZero()) any = true;
          }
        }
        if (!any) continue;
        for (int coord = 0; coord < width; ++coord) {
          std::map<int, Scalar> row;
          for (int s = 0; s < homCount; ++s) {
            if (!residuals[s].empty() && !residuals[s][coord].isZero()) {
              row[s] = residuals[s][coord];
            }
          }
          if (!row.empty()) rows.push_back(std::move(row));
        }
      }
    }
  }

  ExactMatrix cond =
      ExactMatrix::sparseZeros(static_cast<int>(rows.size()), homCount, f);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& kv : rows[r]) cond.set(static_cast<int>(r), kv.first, kv.second);
  }
  return rank_of(cond) == n;
}

SmoothnessVerdict elementary_smoothness(const ModulePresentation& m) {
  if (!has_trivial_negative_tangents(m)) return SmoothnessVerdict::Inconclusive;
  const GradedExtSpace pos = extImpl(m, true);
  for (const auto& kv : pos.dims) {
    if (kv.second > 0) return SmoothnessVerdict::Inconclusive;
  }
  return SmoothnessVerdict::SmoothOnElementary;
}

BBGradedData bb_graded_data(const ModulePresentation& m, HalfSign sign) {
  BBGradedData out;
  const GradedHomSpace h = hom_graded(m);
  for (const auto& kv : h.dims) {
    if ((sign == HalfSign::Plus && kv.first >= 0) || (sign == HalfSign::Minus && kv.first <= 0)) {
      out.tangentDims[kv.first] = kv.second;
    }
  }
  const GradedExtSpace x = extImpl(m, sign == HalfSign::Plus);
  for (const auto& kv : x.dims) {
    if ((sign == HalfSign::Plus && kv.first >= 0) || (sign == HalfSign::Minus && kv.first <= 0)) {
      out.obstructionDims[kv.first] = kv.second;
    }
  }
  return out;
}

Json graded_dims_to_json(const std::map<int, int>& dims) {
  Json obj = Json::object();
  for (const auto& kv : dims) obj[std::to_string(kv.first)] = kv.second;
  return obj;
}

std::string graded_dims_str(const std::map<int, int>& dims) {
  std::string out;
  for (const auto& kv : dims) {
    if (!out.empty()) out += '\n';
    out += std::to_string(kv.first) + ": " + std::to_string(kv.second);
  }
  return out;
}

}  // namespace quotlab
