#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quotlab/free_element.hpp"
#include "quotlab/json_io.hpp"
#include "quotlab/module.hpp"

namespace quotlab {

// Degree-preserving map between graded free modules, stored column-wise:
// column s is the image of the s-th source generator inside the target
// module (an element over the target generator degrees).
class GradedFreeMap {
 public:
  GradedFreeMap(int n, std::vector<int> targetDegrees, std::vector<int> sourceDegrees,
                std::vector<FreeModuleElement> columns, Field f = Field{});

  int n() const { return n_; }
  const std::vector<int>& targetDegrees() const { return targetDegrees_; }
  const std::vector<int>& sourceDegrees() const { return sourceDegrees_; }
  const std::vector<FreeModuleElement>& columns() const { return columns_; }
  const FreeModuleElement& column(int s) const { return columns_[s]; }
  const Field& field() const { return field_; }

  // The polynomial in position (target row, source column), as an element of
  // a rank-one free module on the target generator.
  FreeModuleElement entry(int target, int source) const;

  bool isZero() const;
  // Every column is zero or homogeneous of its source degree.
  bool homogeneous() const;
  // No entry has a constant term.
  bool minimalEntries() const;

  // Image of an element of the source module.
  FreeModuleElement apply(const FreeModuleElement& v) const;
  // this ∘ rhs, where rhs maps into this map's source module.
  GradedFreeMap compose(const GradedFreeMap& rhs) const;

 private:
  int n_ = 0;
  std::vector<int> targetDegrees_;
  std::vector<int> sourceDegrees_;
  std::vector<FreeModuleElement> columns_;
  Field field_;
};

// Sparse table of graded generator counts: (homological step i, internal
// degree j) -> count.
class BettiTable {
 public:
  BettiTable() = default;

  void add(int i, int j, int count);
  int beta(int i, int j) const;
  const std::map<std::pair<int, int>, int>& entries() const { return entries_; }
  // Largest homological step present, -1 when empty.
  int maxStep() const;

  bool operator==(const BettiTable& o) const { return entries_ == o.entries_; }
  bool operator!=(const BettiTable& o) const { return !(*this == o); }

  // Grid rendering: rows are j - i, columns are homological steps.
  std::string str() const;

 private:
  std::map<std::pair<int, int>, int> entries_;
};

Json betti_to_json(const BettiTable& b);
BettiTable betti_from_json(const Json& j);

// Minimal free resolution prefix of a finite graded quotient:
//   0 <- M <- F_0 <- F_1 <- ... with steps[i] : F_{i+1} -> F_i.
// generatorDegrees lists the F_0 generators; augmentation lifts them to the
// ambient free module of the presentation that was resolved.
struct ResolutionData {
  std::vector<int> generatorDegrees;
  std::vector<FreeModuleElement> augmentation;
  std::vector<GradedFreeMap> steps;
  BettiTable betti;

  int length() const { return static_cast<int>(steps.size()); }
  // Generator degrees of F_i (i = 0 is generatorDegrees).
  const std::vector<int>& degreesOf(int i) const;
};

// Minimal generators, found in degrees <= maxDegree, of the kernel of a
// homogeneous map between free modules.  Throws GradingError when a column
// is not homogeneous of its source degree.
std::vector<FreeModuleElement> graded_kernel_generators(const GradedFreeMap& phi,
                                                        int maxDegree);

// Same for a map into a finite quotient: column s is the image in the
// ambient free module of m of the s-th source generator.
std::vector<FreeModuleElement> graded_kernel_generators(
    const ModulePresentation& m, const std::vector<int>& sourceDegrees,
    const std::vector<FreeModuleElement>& columns, int maxDegree);

// Minimal graded free resolution of the quotient presented by m, computed
// through homological step throughStep (at most n; the full resolution has
// length exactly n whenever the quotient is nonzero).  Throws GradingError
// for inhomogeneous presentations and ShapeError for throughStep out of
// range.
ResolutionData minimal_free_resolution(const ModulePresentation& m, int throughStep);

// Presentation of the dual module (functionals with the contraction action),
// on its minimal generators; generator degrees are negated, so the dual of a
// quotient living in degrees [a, b] lives in degrees [-b, -a].
ModulePresentation dual_presentation(const ModulePresentation& m);

// Full-resolution duality: beta_{i,j}(M) = beta_{n-i,n-j}(M-dual) with both
// tables computed independently, and both resolutions of length n.
bool dual_resolution_check(const ModulePresentation& m);

// Exact alternating-sum identity between a full resolution and the graded
// dimensions of the quotient:
//   dim M_e = sum_i (-1)^i sum_j beta_{ij} * C(e - j + n - 1, n - 1).
bool euler_identity_holds(const ResolutionData& res, const ModulePresentation& m);

}  // namespace quotlab
