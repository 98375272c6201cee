#include "quotlab/matrix.hpp"

#include <algorithm>

namespace quotlab {

ExactMatrix::ExactMatrix(int rows, int cols, const Field& f, bool sparse)
    : rows_(rows), cols_(cols), field_(f), sparse_(sparse) {
  if (!sparse_) dense_.assign(static_cast<size_t>(rows) * cols, Scalar::zero(f));
}

ExactMatrix ExactMatrix::zeros(int rows, int cols, const Field& f) {
  return ExactMatrix(rows, cols, f, false);
}

ExactMatrix ExactMatrix::sparseZeros(int rows, int cols, const Field& f) {
  return ExactMatrix(rows, cols, f, true);
}

ExactMatrix ExactMatrix::identity(int n, const Field& f) {
  ExactMatrix m = zeros(n, n, f);
  for (int i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
  return m;
}

ExactMatrix ExactMatrix::fromRows(const std::vector<std::vector<Scalar>>& rows,
                                  const Field& f, int cols) {
  ExactMatrix m = zeros(static_cast<int>(rows.size()), cols, f);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != cols) throw ShapeError("ragged row list");
    for (int c = 0; c < cols; ++c) m.set(static_cast<int>(r), c, rows[r][c]);
  }
  return m;
}

int ExactMatrix::nonzeroCount() const {
  if (sparse_) return static_cast<int>(entries_.size());
  int count = 0;
  for (const Scalar& s : dense_) {
    if (!s.isZero()) ++count;
  }
  return count;
}

double ExactMatrix::density() const {
  if (rows_ == 0 || cols_ == 0) return 0.0;
  return static_cast<double>(nonzeroCount()) /
         (static_cast<double>(rows_) * cols_);
}

Scalar ExactMatrix::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw ShapeError("index out of range");
  if (!sparse_) return dense_[static_cast<size_t>(r) * cols_ + c];
  auto it = entries_.find({r, c});
  return it == entries_.end() ? Scalar::zero(field_) : it->second;
}

void ExactMatrix::set(int r, int c, const Scalar& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw ShapeError("index out of range");
  if (!(v.field() == field_)) throw ArithmeticDomainError("entry field mismatch");
  if (!sparse_) {
    dense_[static_cast<size_t>(r) * cols_ + c] = v;
    return;
  }
  if (v.isZero()) entries_.erase({r, c});
  else entries_[{r, c}] = v;
}

ExactMatrix ExactMatrix::toDense() const {
  if (!sparse_) return *this;
  ExactMatrix m = zeros(rows_, cols_, field_);
  for (const auto& [rc, v] : entries_) m.set(rc.first, rc.second, v);
  return m;
}

ExactMatrix ExactMatrix::toSparse() const {
  if (sparse_) return *this;
  ExactMatrix m = sparseZeros(rows_, cols_, field_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      Scalar v = at(r, c);
      if (!v.isZero()) m.set(r, c, v);
    }
  }
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix m = sparse_ ? sparseZeros(cols_, rows_, field_) : zeros(cols_, rows_, field_);
  forEachNonzero([&m](int r, int c, const Scalar& v) { m.set(c, r, v); });
  return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_) throw ShapeError("product shape mismatch");
  if (!(field_ == o.field_)) throw ArithmeticDomainError("field mismatch");
  ExactMatrix m = zeros(rows_, o.cols_, field_);
  // Accumulate via nonzeros of the left factor; fine for both storages.
  forEachNonzero([&](int r, int k, const Scalar& v) {
    for (int c = 0; c < o.cols_; ++c) {
      Scalar rhs = o.at(k, c);
      if (!rhs.isZero()) m.set(r, c, m.at(r, c) + v * rhs);
    }
  });
  return sparse_ && o.sparse_ ? m.toSparse() : m;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("sum shape mismatch");
  ExactMatrix m = toDense();
  o.forEachNonzero([&m](int r, int c, const Scalar& v) { m.set(r, c, m.at(r, c) + v); });
  return sparse_ && o.sparse_ ? m.toSparse() : m;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
  return *this + o.scaled(Scalar::fromInt(-1, field_));
}

ExactMatrix ExactMatrix::scaled(const Scalar& c) const {
  ExactMatrix m = sparse_ ? sparseZeros(rows_, cols_, field_) : zeros(rows_, cols_, field_);
  forEachNonzero([&m, &c](int r, int col, const Scalar& v) { m.set(r, col, v * c); });
  return m;
}

bool ExactMatrix::isZero() const { return nonzeroCount() == 0; }

bool ExactMatrix::operator==(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_)) return false;
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (at(r, c) != o.at(r, c)) return false;
    }
  }
  return true;
}

std::vector<Scalar> ExactMatrix::apply(const std::vector<Scalar>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw ShapeError("vector length mismatch");
  std::vector<Scalar> out(rows_, Scalar::zero(field_));
  forEachNonzero([&](int r, int c, const Scalar& a) { out[r] += a * v[c]; });
  return out;
}

ExactMatrix ExactMatrix::mapField(const Field& f) const {
  ExactMatrix m = sparse_ ? sparseZeros(rows_, cols_, f) : zeros(rows_, cols_, f);
  forEachNonzero([&m, &f](int r, int c, const Scalar& v) { m.set(r, c, v.toField(f)); });
  return m;
}

void ExactMatrix::forEachNonzero(
    const std::function<void(int, int, const Scalar&)>& fn) const {
  if (sparse_) {
    for (const auto& [rc, v] : entries_) fn(rc.first, rc.second, v);
    return;
  }
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      const Scalar& v = dense_[static_cast<size_t>(r) * cols_ + c];
      if (!v.isZero()) fn(r, c, v);
    }
  }
}

namespace {

RrefResult rrefDense(const ExactMatrix& input) {
  ExactMatrix m = input.toDense();
  const Field f = m.field();
  RrefResult res{ExactMatrix::zeros(0, 0, f), {}, 0};
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = -1;
    for (int r = row; r < m.rows(); ++r) {
      if (!m.at(r, col).isZero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) {
      for (int c = 0; c < m.cols(); ++c) {
        Scalar tmp = m.at(row, c);
        m.set(row, c, m.at(pivot, c));
        m.set(pivot, c, tmp);
      }
    }
    Scalar inv = m.at(row, col).inverse();
    for (int c = col; c < m.cols(); ++c) m.set(row, c, m.at(row, c) * inv);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      Scalar factor = m.at(r, col);
      if (factor.isZero()) continue;
      for (int c = col; c < m.cols(); ++c) {
        m.set(r, c, m.at(r, c) - factor * m.at(row, c));
      }
    }
    res.pivotColumns.push_back(col);
    ++row;
  }
  res.rank = row;
  res.reduced = std::move(m);
  return res;
}

using SparseRow = std::map<int, Scalar>;

void axpyRow(SparseRow& target, const Scalar& factor, const SparseRow& src) {
  for (const auto& [c, v] : src) {
    auto it = target.find(c);
    if (it == target.end()) {
      Scalar nv = factor * v;
      if (!nv.isZero()) target.emplace(c, std::move(nv));
    } else {
      it->second += factor * v;
      if (it->second.isZero()) target.erase(it);
    }
  }
}

RrefResult rrefSparse(const ExactMatrix& input) {
  const Field f = input.field();
  std::vector<SparseRow> rowsData(input.rows());
  input.forEachNonzero([&rowsData](int r, int c, const Scalar& v) { rowsData[r][c] = v; });

  RrefResult res{ExactMatrix::zeros(0, 0, f), {}, 0};
  int row = 0;
  for (int col = 0; col < input.cols() && row < input.rows(); ++col) {
    int pivot = -1;
    for (int r = row; r < input.rows(); ++r) {
      auto it = rowsData[r].begin();
      if (it != rowsData[r].end() && it->first == col) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rowsData[row], rowsData[pivot]);
    Scalar inv = rowsData[row].at(col).inverse();
    if (!inv.isOne()) {
      for (auto& [c, v] : rowsData[row]) v *= inv;
    }
    for (int r = 0; r < input.rows(); ++r) {
      if (r == row) continue;
      auto it = rowsData[r].find(col);
      if (it == rowsData[r].end()) continue;
      Scalar factor = -it->second;
      axpyRow(rowsData[r], factor, rowsData[row]);
    }
    res.pivotColumns.push_back(col);
    ++row;
  }
  res.rank = row;
  ExactMatrix out = ExactMatrix::sparseZeros(input.rows(), input.cols(), f);
  for (int r = 0; r < input.rows(); ++r) {
    for (const auto& [c, v] : rowsData[r]) out.set(r, c, v);
  }
  res.reduced = std::move(out);
  return res;
}

}  // namespace

RrefResult rref(const ExactMatrix& m) {
  if (m.sparseStorage() && m.density() < 0.10) return rrefSparse(m);
  return rrefDense(m);
}

int rank_of(const ExactMatrix& m) { return rref(m).rank; }

std::vector<std::vector<Scalar>> kernel_basis(const ExactMatrix& m) {
  RrefResult r = rref(m);
  const Field f = m.field();
  std::vector<bool> isPivot(m.cols(), false);
  for (int p : r.pivotColumns) isPivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (isPivot[free]) continue;
    std::vector<Scalar> v(m.cols(), Scalar::zero(f));
    v[free] = Scalar::one(f);
    for (size_t i = 0; i < r.pivotColumns.size(); ++i) {
      v[r.pivotColumns[i]] = -r.reduced.at(static_cast<int>(i), free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Scalar>> solve(const ExactMatrix& m,
                                         const std::vector<Scalar>& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw ShapeError("rhs length mismatch");
  const Field f = m.field();
  ExactMatrix aug = ExactMatrix::zeros(m.rows(), m.cols() + 1, f);
  m.forEachNonzero([&aug](int r, int c, const Scalar& v) { aug.set(r, c, v); });
  for (int r = 0; r < m.rows(); ++r) aug.set(r, m.cols(), b[r]);
  RrefResult rr = rref(aug);
  for (int p : rr.pivotColumns) {
    if (p == m.cols()) return std::nullopt;  // pivot in the rhs column
  }
  std::vector<Scalar> x(m.cols(), Scalar::zero(f));
  for (size_t i = 0; i < rr.pivotColumns.size(); ++i) {
    x[rr.pivotColumns[i]] = rr.reduced.at(static_cast<int>(i), m.cols());
  }
  return x;
}

ExactMatrix invert(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("inverse of a non-square matrix");
  const int n = m.rows();
  const Field f = m.field();
  ExactMatrix aug = ExactMatrix::zeros(n, 2 * n, f);
  m.forEachNonzero([&aug](int r, int c, const Scalar& v) { aug.set(r, c, v); });
  for (int i = 0; i < n; ++i) aug.set(i, n + i, Scalar::one(f));
  RrefResult rr = rref(aug);
  if (rr.rank < n || rr.pivotColumns[n - 1] >= n) {
    if (rr.rank < n) throw SingularMatrixError("matrix is singular");
  }
  for (size_t i = 0; i < rr.pivotColumns.size(); ++i) {
    if (rr.pivotColumns[i] != static_cast<int>(i)) {
      throw SingularMatrixError("matrix is singular");
    }
  }
  ExactMatrix inv = ExactMatrix::zeros(n, n, f);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) inv.set(r, c, rr.reduced.at(r, n + c));
  }
  return inv;
}

std::vector<Scalar> RowSpace::reduce(std::vector<Scalar> v) const {
  if (static_cast<int>(v.size()) != width_) throw ShapeError("vector width mismatch");
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Scalar& c = v[pivots_[i]];
    if (c.isZero()) continue;
    Scalar factor = c;  // pivot entries are 1
    for (int j = pivots_[i]; j < width_; ++j) v[j] -= factor * rows_[i][j];
  }
  return v;
}

bool RowSpace::contains(const std::vector<Scalar>& v) const {
  std::vector<Scalar> r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return s.isZero(); });
}

bool RowSpace::insert(std::vector<Scalar> v) {
  v = reduce(std::move(v));
  int lead = -1;
  for (int j = 0; j < width_; ++j) {
    if (!v[j].isZero()) {
      lead = j;
      break;
    }
  }
  if (lead < 0) return false;
  Scalar inv = v[lead].inverse();
  for (int j = lead; j < width_; ++j) v[j] *= inv;
  // Back-substitute into existing rows to keep the set fully reduced.
  for (size_t i = 0; i < rows_.size(); ++i) {
    Scalar factor = rows_[i][lead];
    if (factor.isZero()) continue;
    for (int j = lead; j < width_; ++j) rows_[i][j] -= factor * v[j];
  }
  auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), lead);
  size_t idx = static_cast<size_t>(pos - pivots_.begin());
  pivots_.insert(pos, lead);
  rows_.insert(rows_.begin() + idx, std::move(v));
  return true;
}

}  // namespace quotlab
