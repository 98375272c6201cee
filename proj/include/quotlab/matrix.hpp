#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "quotlab/scalar.hpp"

namespace quotlab {

// Exact matrix over a fixed coefficient field with dense (row-major grid)
// or coordinate-sparse storage. Sparse storage never holds explicit zeros.
// Equality is mathematical: storage kind does not matter.
class ExactMatrix {
 public:
  ExactMatrix() : ExactMatrix(0, 0, Field{}, false) {}
  static ExactMatrix zeros(int rows, int cols, const Field& f);
  static ExactMatrix sparseZeros(int rows, int cols, const Field& f);
  static ExactMatrix identity(int n, const Field& f);
  static ExactMatrix fromRows(const std::vector<std::vector<Scalar>>& rows,
                              const Field& f, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Field field() const { return field_; }
  bool sparseStorage() const { return sparse_; }
  int nonzeroCount() const;
  double density() const;

  Scalar at(int r, int c) const;
  void set(int r, int c, const Scalar& v);

  ExactMatrix toDense() const;
  ExactMatrix toSparse() const;

  ExactMatrix transpose() const;
  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  ExactMatrix scaled(const Scalar& c) const;
  bool isZero() const;
  bool operator==(const ExactMatrix& o) const;
  bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
  ExactMatrix mapField(const Field& f) const;

  void forEachNonzero(const std::function<void(int, int, const Scalar&)>& fn) const;

 private:
  ExactMatrix(int rows, int cols, const Field& f, bool sparse);

  int rows_, cols_;
  Field field_;
  bool sparse_;
  std::vector<Scalar> dense_;
  std::map<std::pair<int, int>, Scalar> entries_;
};

struct RrefResult {
  ExactMatrix reduced;
  std::vector<int> pivotColumns;
  int rank = 0;
};

// Reduced row echelon form. Sparse elimination is used when the input is
// stored sparse with density below 10%; the RREF is unique, so both paths
// agree entrywise.
RrefResult rref(const ExactMatrix& m);

int rank_of(const ExactMatrix& m);

// Basis of the right null space, one vector per free column, in ascending
// free-column order; each has a 1 in its free column.
std::vector<std::vector<Scalar>> kernel_basis(const ExactMatrix& m);

// One solution of M x = b (free variables set to zero), if consistent.
std::optional<std::vector<Scalar>> solve(const ExactMatrix& m,
                                         const std::vector<Scalar>& b);

ExactMatrix invert(const ExactMatrix& m);

// Incrementally maintained row-reduced spanning set of a subspace of k^N.
// Rows are kept in reduced echelon form, so the row list is canonical for
// the subspace and doubles as a reduced echelon basis.
class RowSpace {
 public:
  RowSpace(int width, const Field& f) : width_(width), field_(f) {}

  int width() const { return width_; }
  Field field() const { return field_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<Scalar>>& rows() const { return rows_; }

  std::vector<Scalar> reduce(std::vector<Scalar> v) const;
  bool contains(const std::vector<Scalar>& v) const;
  // Inserts v when independent of the current rows; true iff dim grew.
  bool insert(std::vector<Scalar> v);

 private:
  int width_;
  Field field_;
  std::vector<std::vector<Scalar>> rows_;  // RREF, ascending pivot columns
  std::vector<int> pivots_;
};

}  // namespace quotlab
