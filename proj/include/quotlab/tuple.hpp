#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "quotlab/json_io.hpp"
#include "quotlab/matrix.hpp"

namespace quotlab {

// Tuple of n pairwise-commuting d×d matrices. Commutativity is enforced at
// construction; unchecked matrix lists exist only inside is_commuting.
class CommTuple {
 public:
  explicit CommTuple(std::vector<ExactMatrix> matrices);

  int n() const { return static_cast<int>(matrices_.size()); }
  int d() const { return matrices_.empty() ? 0 : matrices_[0].rows(); }
  Field field() const { return matrices_[0].field(); }
  const ExactMatrix& x(int i) const { return matrices_[i]; }
  const std::vector<ExactMatrix>& matrices() const { return matrices_; }

  bool operator==(const CommTuple& o) const { return matrices_ == o.matrices_; }

 private:
  std::vector<ExactMatrix> matrices_;
};

bool is_commuting(const std::vector<ExactMatrix>& matrices);
// The lexicographically first (i, j), 1-based, with [x_i, x_j] != 0.
std::optional<std::pair<int, int>> first_noncommuting_pair(
    const std::vector<ExactMatrix>& matrices);

// First-order deformation (z_1, .., z_n) at a commuting tuple:
// [x_i, z_j] + [z_i, x_j] = 0 for all i, j.
struct TangentVector {
  std::vector<ExactMatrix> z;
};

struct TangentSpace {
  int dimension = 0;
  std::vector<TangentVector> basis;
};

// Kernel of the commutator linearization: n·d² unknowns ordered by
// (matrix index, row, column); constraints by (pair i<j, row, column).
TangentSpace tangent_space(const CommTuple& t);
int tangent_dimension(const CommTuple& t);

CommTuple translate(const CommTuple& t, const std::vector<Scalar>& alpha);
CommTuple linear_change(const CommTuple& t, const ExactMatrix& a);
CommTuple conjugate(const CommTuple& t, const ExactMatrix& g);
// g · blockdiag(x_i, x'_i) · g^{-1}
CommTuple concat(const ExactMatrix& g, const CommTuple& t, const CommTuple& tp);

struct CubeZeroInvariants {
  int a = 0;       // dim of the common kernel of the x_i
  int aPlusB = 0;  // dim of the common kernel of all products x_i x_j
  int aPlusC = 0;  // dim of (sum of images + common kernel)
  int aT = 0;      // dim of the common kernel of the transposes
};

CubeZeroInvariants cube_zero_invariants(const CommTuple& t);

// Points λ with M/(y-λ)M ≠ 0, via simultaneous generalized eigenspaces;
// sorted lexicographically. Non-split spectra raise SupportNotSplit.
std::vector<std::vector<Scalar>> support_points(const CommTuple& t);

// Requires x_1 to be the canonical nilpotent Jordan matrix with weakly
// decreasing block sizes; true iff every other x_i is block
// upper-triangular Toeplitz relative to that block structure.
bool is_toeplitz_relative(const CommTuple& t);

bool is_nilpotent_tuple(const CommTuple& t);
// Least D such that every degree-D product of the x_i vanishes.
int nilpotency_bound(const CommTuple& t);

Json tuple_to_json(const CommTuple& t);
CommTuple tuple_from_json(const Json& j, const Field& defaultField = Field{});

}  // namespace quotlab
