#pragma once

#include <map>
#include <string>
#include <vector>

#include "quotlab/json_io.hpp"
#include "quotlab/module.hpp"
#include "quotlab/tuple.hpp"

namespace quotlab {

// Free resolution of the quotient that keeps the presentation's own free
// cover F:  F <- G1 <- G2 <- G3, with the image of G1 -> F equal to the
// presentation kernel and every step minimal.  Ranks may shrink to zero; an
// absent step is an empty column list.
struct CoverResolution {
  std::vector<int> g1Degrees;
  std::vector<FreeModuleElement> g1;  // columns in the ambient free module
  std::vector<int> g2Degrees;
  std::vector<FreeModuleElement> g2;  // columns over the G1 generators
  std::vector<int> g3Degrees;
  std::vector<FreeModuleElement> g3;  // columns over the G2 generators
};
CoverResolution cover_resolution(const ModulePresentation& m);

// Graded space of module homomorphisms from the presentation kernel to the
// quotient.  Only degrees of nonzero dimension are stored; a basis
// homomorphism is the list of its values on the minimal kernel generators
// (canonical representatives in the ambient module, CoverResolution order).
struct GradedHomSpace {
  std::vector<int> kernelDegrees;  // G1 generator degrees
  std::map<int, int> dims;
  std::map<int, std::vector<std::vector<FreeModuleElement>>> basis;

  int dim(int e) const;
  int total() const;
};

// Graded first Ext of the kernel into the quotient.  Representatives are
// cocycle values on the G2 generators, in echelon form modulo coboundaries.
struct GradedExtSpace {
  std::vector<int> syzygyDegrees;  // G2 generator degrees
  std::map<int, int> dims;
  std::map<int, std::vector<std::vector<FreeModuleElement>>> reps;

  int dim(int e) const;
  int total() const;
};

// Hom(K, M) degree by degree, as the kernel of the map sending a value
// assignment on the G1 generators to its defect on the G2 syzygies.
GradedHomSpace hom_graded(const ModulePresentation& m);

// Ext¹(K, M) degree by degree: cocycles on G2 modulo values pushed forward
// from G1.
GradedExtSpace ext1_graded(const ModulePresentation& m);

// Total homomorphism dimension against the matrix-side count:
// dim Hom(K, M) = r·d − d² + (commuting-tuple tangent dimension).
bool quot_tangent_consistency(const ModulePresentation& m, const CommTuple& t);

// True when the homomorphisms K → M that lower order along the
// maximal-ideal filtration span exactly n dimensions, the part accounted
// for by the coordinate translations.  When every generator sits in a
// single degree this equals the total dimension in negative degrees.
bool has_trivial_negative_tangents(const ModulePresentation& m);

enum class SmoothnessVerdict { SmoothOnElementary, Inconclusive };

// Certificate combining trivial negative tangents with vanishing of the
// nonnegative part of Ext¹; Inconclusive carries no information.
SmoothnessVerdict elementary_smoothness(const ModulePresentation& m);

enum class HalfSign { Plus, Minus };

// Tangent/obstruction dimensions truncated to one half of the grading:
// Plus keeps degrees >= 0, Minus keeps degrees <= 0 (degree 0 in both).
struct BBGradedData {
  std::map<int, int> tangentDims;
  std::map<int, int> obstructionDims;

  int tangentTotal() const;
  int obstructionTotal() const;
};
BBGradedData bb_graded_data(const ModulePresentation& m, HalfSign sign);

// {"degree": dim} object with the degree keys rendered in decimal.
Json graded_dims_to_json(const std::map<int, int>& dims);
// "e: dim" lines sorted by degree, one per entry.
std::string graded_dims_str(const std::map<int, int>& dims);

}  // namespace quotlab
