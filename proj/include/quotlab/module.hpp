#pragma once

#include <string>
#include <vector>

#include "quotlab/free_element.hpp"
#include "quotlab/json_io.hpp"
#include "quotlab/matrix.hpp"
#include "quotlab/tuple.hpp"

namespace quotlab {

// A finite-dimensional vector space carrying n commuting operators, viewed
// as a module over S = k[y_1..y_n] with y_i acting as the i-th operator.
struct ActionModule {
  std::vector<ExactMatrix> actions;

  int dimension() const {
    return actions.empty() ? 0 : actions.front().rows();
  }
};

ActionModule module_from_tuple(const CommTuple& t);
CommTuple tuple_from_module(const ActionModule& m);

// A commuting tuple together with r marked vectors in k^d, i.e. a framed
// module with a chosen generating candidate (the columns need not generate).
struct StablePair {
  CommTuple tuple;
  std::vector<std::vector<Scalar>> vectors;

  int r() const { return static_cast<int>(vectors.size()); }
};

// True when the marked vectors generate k^d under the action, i.e. the
// smallest subspace containing them and preserved by every x_i is k^d.
bool is_stable(const StablePair& p);

// Dimension sequence (h_0, h_1, ...) with trailing zeros trimmed.
class HilbertFunction {
 public:
  HilbertFunction() = default;
  explicit HilbertFunction(std::vector<int> values);

  const std::vector<int>& values() const { return h_; }
  int total() const;
  bool operator==(const HilbertFunction& o) const { return h_ == o.h_; }
  bool operator!=(const HilbertFunction& o) const { return !(*this == o); }
  std::string str() const;  // "(2, 2, 3)"

 private:
  std::vector<int> h_;
};

// Presentation M = F/K of a finite-length module supported at the origin,
// where F = ⊕_{t=1}^{r} S·e_t with generator degrees γ_t and K is the
// submodule generated by kGenerators. Construction verifies, by growing a
// truncation window degree by degree, that the generators really cut out a
// finite-dimensional quotient; InputError otherwise. The stored window runs
// one degree past the largest degree still meeting the quotient, which is
// enough to read off minimal generators of K and the first syzygy data.
class ModulePresentation {
 public:
  ModulePresentation(int n, std::vector<int> generatorDegrees,
                     std::vector<FreeModuleElement> kGenerators,
                     Field f = Field{});

  int n() const { return n_; }
  int r() const { return static_cast<int>(generatorDegrees_.size()); }
  const std::vector<int>& generatorDegrees() const { return generatorDegrees_; }
  const std::vector<FreeModuleElement>& kGenerators() const { return kGenerators_; }
  Field field() const { return field_; }

  // dim_k F/K.
  int degree() const { return degree_; }
  // Least D with 𝔪^D·(F/K) = 0.
  int truncationBound() const { return truncation_; }
  // All presentation generators homogeneous.
  bool graded() const { return graded_; }
  // dim 𝔪^k M − dim 𝔪^{k+1} M for k = 0..D−1.
  const std::vector<int>& filteredValues() const { return filtered_; }

  // Truncation window: basis of F through degree windowTop()+1, with
  // K ∩ F_{≤windowTop()} and K ∩ F_{≤windowTop()+1} in window coordinates.
  // Every homogeneous piece of F above windowTop() lies inside K.
  int windowTop() const { return windowTop_; }
  const BasisWindow& window() const { return window_; }
  const RowSpace& kernelLow() const { return kernelLow_; }
  const RowSpace& kernelFull() const { return kernelFull_; }
  // Window indices whose classes form a basis of M (all of degree ≤ windowTop).
  const std::vector<int>& quotientCoords() const { return quotientCoords_; }
  // Window degree of each quotient basis class, in quotientCoords order.
  std::vector<int> quotientDegrees() const;

 private:
  int n_ = 0;
  std::vector<int> generatorDegrees_;
  std::vector<FreeModuleElement> kGenerators_;
  Field field_;
  int degree_ = 0;
  int truncation_ = 0;
  bool graded_ = true;
  std::vector<int> filtered_;
  int windowTop_ = 0;
  BasisWindow window_;
  RowSpace kernelLow_;
  RowSpace kernelFull_;
  std::vector<int> quotientCoords_;
};

// Kernel presentation of the framed module of a stable pair: M = k^d with
// one free generator per marked vector, Spec'd so the module map F → k^d,
// e_t ↦ v_t, y_i ↦ x_i is surjective; K is its kernel, returned through a
// presentation whose stored generators are minimal (a basis of K/𝔪K, each
// normalized so its lowest-degree part leads with coefficient one).
// Generator degrees are assigned from nilpotency depth so that gradable
// modules come out with homogeneous kernels. Throws StabilityError when the
// vectors do not generate and SupportNotSplit when the tuple is
// not nilpotent (support away from the origin must be translated first).
ModulePresentation quot_point(const StablePair& p);

// Filtration dimension sequence dim 𝔪^k M/𝔪^{k+1} M. Requires a graded
// presentation (homogeneous kernel generators); GradingError otherwise.
HilbertFunction hilbert_function(const ModulePresentation& m);

// Transposed tuple: the action on the dual space M^∨.
CommTuple dual_tuple(const CommTuple& t);

// dim M/𝔪M for the module of t, i.e. the common kernel dimension of the
// transposed operators; the minimal number of module generators of k^d.
int min_generators(const CommTuple& t);

// Presentation of F/M^⊥ where M ⊆ F^∨ is the S-span (under contraction) of
// the given dual elements. The resulting degree equals dim_k M.
ModulePresentation perp_of_dual_gens(int n, std::vector<int> generatorDegrees,
                                     const std::vector<DualElement>& sigmas,
                                     Field f = Field{});

// Reduced echelon basis of K^⊥ ⊆ F^∨, the subspace pairing to zero with
// the kernel of the presentation; its dimension equals degree().
std::vector<DualElement> dual_gens_of_module(const ModulePresentation& m);

// Minimal S-module generators of the span of the given dual elements
// (assumed closed under contraction): a canonical complement of the span of
// all single contractions.
std::vector<DualElement> minimal_dual_gens(int n,
                                           const std::vector<int>& generatorDegrees,
                                           const std::vector<DualElement>& span,
                                           Field f = Field{});

// Inverse of quot_point up to conjugacy: the action on the chosen quotient
// basis together with the classes of the free generators.
StablePair pair_from_presentation(const ModulePresentation& m);

Json module_to_json(const ModulePresentation& m);
ModulePresentation module_from_json(const Json& j, const Field& defaultField = Field{});

struct DualGensData {
  int n = 0;
  std::vector<int> generatorDegrees;
  Field field;
  std::vector<DualElement> gens;
};

Json dual_gens_to_json(int n, const std::vector<int>& generatorDegrees,
                       const std::vector<DualElement>& gens, const Field& f);
DualGensData dual_gens_from_json(const Json& j, const Field& defaultField = Field{});

}  // namespace quotlab
