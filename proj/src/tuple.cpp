#include "quotlab/tuple.hpp"

#include <algorithm>
#include <map>

#include "quotlab/errors.hpp"

namespace quotlab {

namespace {

void requireSquareSameSize(const std::vector<ExactMatrix>& matrices) {
  if (matrices.empty()) throw ShapeError("empty tuple");
  int d = matrices[0].rows();
  for (const ExactMatrix& m : matrices) {
    if (m.rows() != m.cols() || m.rows() != d) {
      throw ShapeError("tuple matrices must all be square of equal size");
    }
    if (!(m.field() == matrices[0].field())) {
      throw ArithmeticDomainError("tuple matrices must share one field");
    }
  }
}

ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b) {
  return a * b - b * a;
}

// Rows of several matrices stacked vertically.
ExactMatrix stack(const std::vector<ExactMatrix>& parts) {
  int rows = 0;
  for (const ExactMatrix& p : parts) rows += p.rows();
  ExactMatrix out = ExactMatrix::zeros(rows, parts[0].cols(), parts[0].field());
  int at = 0;
  for (const ExactMatrix& p : parts) {
    p.forEachNonzero([&out, at](int r, int c, const Scalar& v) { out.set(at + r, c, v); });
    at += p.rows();
  }
  return out;
}

int commonKernelDim(const std::vector<ExactMatrix>& parts) {
  return parts[0].cols() - rank_of(stack(parts));
}

}  // namespace

CommTuple::CommTuple(std::vector<ExactMatrix> matrices) : matrices_(std::move(matrices)) {
  requireSquareSameSize(matrices_);
  if (auto bad = first_noncommuting_pair(matrices_)) {
    throw PreconditionError("matrices " + std::to_string(bad->first) + " and " +
                            std::to_string(bad->second) + " do not commute");
  }
}

bool is_commuting(const std::vector<ExactMatrix>& matrices) {
  requireSquareSameSize(matrices);
  return !first_noncommuting_pair(matrices).has_value();
}

std::optional<std::pair<int, int>> first_noncommuting_pair(
    const std::vector<ExactMatrix>& matrices) {
  for (size_t i = 0; i < matrices.size(); ++i) {
    for (size_t j = i + 1; j < matrices.size(); ++j) {
      if (!commutator(matrices[i], matrices[j]).isZero()) {
        return std::make_pair(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
      }
    }
  }
  return std::nullopt;
}

TangentSpace tangent_space(const CommTuple& t) {
  const int n = t.n(), d = t.d();
  const Field f = t.field();
  const int unknowns = n * d * d;
  const int pairs = n * (n - 1) / 2;
  // Unknown z_k[r][c] sits at column k*d*d + r*d + c.
  auto col = [d](int k, int r, int c) { return (k * d + r) * d + c; };
  ExactMatrix sys = ExactMatrix::sparseZeros(pairs * d * d, unknowns, f);
  auto add = [&sys](int row, int column, const Scalar& v) {
    sys.set(row, column, sys.at(row, column) + v);
  };
  int pairIdx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++pairIdx) {
      const ExactMatrix& xi = t.x(i);
      const ExactMatrix& xj = t.x(j);
      for (int p = 0; p < d; ++p) {
        for (int qq = 0; qq < d; ++qq) {
          int row = (pairIdx * d + p) * d + qq;
          // ([x_i, z_j] + [z_i, x_j])[p][q] = 0
          for (int m = 0; m < d; ++m) {
            Scalar xipm = xi.at(p, m);
            if (!xipm.isZero()) add(row, col(j, m, qq), xipm);
            Scalar ximq = xi.at(m, qq);
            if (!ximq.isZero()) add(row, col(j, p, m), -ximq);
            Scalar xjmq = xj.at(m, qq);
            if (!xjmq.isZero()) add(row, col(i, p, m), xjmq);
            Scalar xjpm = xj.at(p, m);
            if (!xjpm.isZero()) add(row, col(i, m, qq), -xjpm);
          }
        }
      }
    }
  }
  TangentSpace out;
  if (pairs == 0) {
    out.dimension = unknowns;
    ExactMatrix zero = ExactMatrix::zeros(d, d, f);
    for (int u = 0; u < unknowns; ++u) {
      TangentVector v{std::vector<ExactMatrix>(n, zero)};
      v.z[u / (d * d)].set((u / d) % d, u % d, Scalar::one(f));
      out.basis.push_back(std::move(v));
    }
    return out;
  }
  auto kernel = kernel_basis(sys);
  out.dimension = static_cast<int>(kernel.size());
  for (const auto& vec : kernel) {
    TangentVector v{std::vector<ExactMatrix>(n, ExactMatrix::zeros(d, d, f))};
    for (int u = 0; u < unknowns; ++u) {
      if (!vec[u].isZero()) v.z[u / (d * d)].set((u / d) % d, u % d, vec[u]);
    }
    out.basis.push_back(std::move(v));
  }
  return out;
}

int tangent_dimension(const CommTuple& t) { return tangent_space(t).dimension; }

CommTuple translate(const CommTuple& t, const std::vector<Scalar>& alpha) {
  if (static_cast<int>(alpha.size()) != t.n()) throw ShapeError("need n translation scalars");
  std::vector<ExactMatrix> out;
  for (int i = 0; i < t.n(); ++i) {
    out.push_back(t.x(i) + ExactMatrix::identity(t.d(), t.field()).scaled(alpha[i]));
  }
  return CommTuple(std::move(out));
}

CommTuple linear_change(const CommTuple& t, const ExactMatrix& a) {
  if (a.rows() != t.n() || a.cols() != t.n()) throw ShapeError("change matrix must be n×n");
  invert(a);  // SingularMatrixError when not invertible
  std::vector<ExactMatrix> out;
  for (int i = 0; i < t.n(); ++i) {
    ExactMatrix acc = ExactMatrix::zeros(t.d(), t.d(), t.field());
    for (int j = 0; j < t.n(); ++j) acc = acc + t.x(j).scaled(a.at(i, j));
    out.push_back(std::move(acc));
  }
  return CommTuple(std::move(out));
}

CommTuple conjugate(const CommTuple& t, const ExactMatrix& g) {
  if (g.rows() != t.d() || g.cols() != t.d()) throw ShapeError("conjugator must be d×d");
  ExactMatrix gInv = invert(g);
  std::vector<ExactMatrix> out;
  for (int i = 0; i < t.n(); ++i) out.push_back(g * t.x(i) * gInv);
  return CommTuple(std::move(out));
}

CommTuple concat(const ExactMatrix& g, const CommTuple& t, const CommTuple& tp) {
  if (t.n() != tp.n()) throw ShapeError("tuples must have the same number of matrices");
  const int d = t.d(), dp = tp.d();
  if (g.rows() != d + dp || g.cols() != d + dp) {
    throw ShapeError("conjugator must be (d+d')×(d+d')");
  }
  ExactMatrix gInv = invert(g);
  std::vector<ExactMatrix> out;
  for (int i = 0; i < t.n(); ++i) {
    ExactMatrix block = ExactMatrix::zeros(d + dp, d + dp, t.field());
    t.x(i).forEachNonzero([&block](int r, int c, const Scalar& v) { block.set(r, c, v); });
    tp.x(i).forEachNonzero(
        [&block, d](int r, int c, const Scalar& v) { block.set(d + r, d + c, v); });
    out.push_back(g * block * gInv);
  }
  return CommTuple(std::move(out));
}

CubeZeroInvariants cube_zero_invariants(const CommTuple& t) {
  const int d = t.d();
  const Field f = t.field();
  CubeZeroInvariants inv;
  inv.a = commonKernelDim(t.matrices());

  std::vector<ExactMatrix> products;
  for (int i = 0; i < t.n(); ++i) {
    for (int j = i; j < t.n(); ++j) products.push_back(t.x(i) * t.x(j));
  }
  inv.aPlusB = commonKernelDim(products);

  std::vector<ExactMatrix> transposes;
  for (const ExactMatrix& m : t.matrices()) transposes.push_back(m.transpose());
  inv.aT = commonKernelDim(transposes);

  // im(x) + K_1 as a column span: columns of all x_i plus a kernel basis.
  RowSpace span(d, f);
  for (const ExactMatrix& m : t.matrices()) {
    for (int c = 0; c < d; ++c) {
      std::vector<Scalar> column(d, Scalar::zero(f));
      for (int r = 0; r < d; ++r) column[r] = m.at(r, c);
      span.insert(std::move(column));
    }
  }
  for (const auto& v : kernel_basis(stack(t.matrices()))) span.insert(v);
  inv.aPlusC = span.dim();
  return inv;
}

namespace {

// Characteristic polynomial coefficients c_0..c_d of det(λI − x), monic,
// by evaluation at λ = 0..d and Lagrange interpolation.
std::vector<Scalar> charPoly(const ExactMatrix& x) {
  const int d = x.rows();
  const Field f = x.field();
  if (!f.isRational() && f.prime <= static_cast<std::uint64_t>(d)) {
    throw SupportNotSplit("modulus too small for eigenvalue interpolation");
  }
  auto det = [&](const Scalar& lambda) {
    ExactMatrix m = ExactMatrix::identity(d, f).scaled(lambda) - x;
    // Gaussian elimination determinant.
    Scalar result = Scalar::one(f);
    ExactMatrix a = m.toDense();
    for (int col = 0, row = 0; col < d && row < d; ++col, ++row) {
      int pivot = -1;
      for (int r = row; r < d; ++r) {
        if (!a.at(r, col).isZero()) {
          pivot = r;
          break;
        }
      }
      if (pivot < 0) return Scalar::zero(f);
      if (pivot != row) {
        for (int c = 0; c < d; ++c) {
          Scalar tmp = a.at(row, c);
          a.set(row, c, a.at(pivot, c));
          a.set(pivot, c, tmp);
        }
        result = -result;
      }
      result = result * a.at(row, col);
      Scalar inv = a.at(row, col).inverse();
      for (int r = row + 1; r < d; ++r) {
        Scalar factor = a.at(r, col) * inv;
        if (factor.isZero()) continue;
        for (int c = col; c < d; ++c) a.set(r, c, a.at(r, c) - factor * a.at(row, c));
      }
    }
    return result;
  };
  // Interpolate the degree-d polynomial from d+1 sample points.
  std::vector<Scalar> xs, ys;
  for (int k = 0; k <= d; ++k) {
    xs.push_back(Scalar::fromInt(k, f));
    ys.push_back(det(xs.back()));
  }
  // Newton form, then expand to coefficients.
  std::vector<std::vector<Scalar>> divided(d + 1);
  divided[0] = ys;
  for (int level = 1; level <= d; ++level) {
    divided[level].resize(d + 1 - level, Scalar::zero(f));
    for (int k = 0; k + level <= d; ++k) {
      divided[level][k] = (divided[level - 1][k + 1] - divided[level - 1][k]) /
                          (xs[k + level] - xs[k]);
    }
  }
  std::vector<Scalar> coeffs(d + 1, Scalar::zero(f));
  std::vector<Scalar> basis{Scalar::one(f)};  // running Π (λ − x_k)
  for (int level = 0; level <= d; ++level) {
    for (size_t i = 0; i < basis.size(); ++i) {
      coeffs[i] += divided[level][0] * basis[i];
    }
    if (level < d) {
      basis.push_back(Scalar::zero(f));
      for (int i = static_cast<int>(basis.size()) - 1; i > 0; --i) {
        basis[i] = basis[i - 1] - xs[level] * basis[i];
      }
      basis[0] = -xs[level] * basis[0];
    }
  }
  return coeffs;
}

Scalar evalPoly(const std::vector<Scalar>& coeffs, const Scalar& at) {
  Scalar acc = Scalar::zero(at.field());
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) acc = acc * at + coeffs[i];
  return acc;
}

// Divides by (λ − root); assumes the remainder is zero.
std::vector<Scalar> deflate(const std::vector<Scalar>& coeffs, const Scalar& root) {
  std::vector<Scalar> out(coeffs.size() - 1, Scalar::zero(root.field()));
  Scalar carry = Scalar::zero(root.field());
  for (int i = static_cast<int>(coeffs.size()) - 1; i > 0; --i) {
    carry = coeffs[i] + carry * root;
    out[i - 1] = carry;
  }
  return out;
}

std::vector<BigInt> divisorsWithCap(BigInt v) {
  if (v < 0) v = -v;
  const long cap = 2000000;
  std::vector<BigInt> divs;
  BigInt i = 1;
  while (i * i <= v) {
    if (i > cap) {
      throw SupportNotSplit("constant term too large for rational root search");
    }
    if (v % i == 0) {
      divs.push_back(i);
      divs.push_back(v / i);
    }
    ++i;
  }
  return divs;
}

// All roots with multiplicity; SupportNotSplit when the polynomial does not
// split over the base field.
std::vector<Scalar> splitRoots(std::vector<Scalar> coeffs, const Field& f) {
  std::vector<Scalar> roots;
  // Strip zero roots first.
  size_t shift = 0;
  while (shift < coeffs.size() - 1 && coeffs[shift].isZero()) ++shift;
  for (size_t k = 0; k < shift; ++k) roots.push_back(Scalar::zero(f));
  coeffs.erase(coeffs.begin(), coeffs.begin() + shift);

  if (!f.isRational()) {
    // Small-field scan of all residues.
    while (coeffs.size() > 1) {
      bool found = false;
      for (std::uint64_t r = 0; r < f.prime; ++r) {
        Scalar cand = Scalar::fromInt(static_cast<long>(r), f);
        if (evalPoly(coeffs, cand).isZero()) {
          roots.push_back(cand);
          coeffs = deflate(coeffs, cand);
          found = true;
          break;
        }
      }
      if (!found) throw SupportNotSplit("characteristic polynomial has no root in F_p");
    }
    return roots;
  }

  while (coeffs.size() > 1) {
    // Clear denominators: candidate roots p/q need p | constant, q | leading.
    BigInt lcm = 1;
    for (const Scalar& c : coeffs) {
      BigInt den = boost::multiprecision::denominator(c.rat());
      lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
    std::vector<BigInt> ints;
    for (const Scalar& c : coeffs) {
      ints.push_back(boost::multiprecision::numerator(c.rat() * Rational(lcm)));
    }
    BigInt constant = ints.front(), leading = ints.back();
    bool found = false;
    if (constant == 0) {
      roots.push_back(Scalar::zero(f));
      coeffs = deflate(coeffs, roots.back());
      continue;
    }
    for (const BigInt& p : divisorsWithCap(constant)) {
      for (const BigInt& q : divisorsWithCap(leading)) {
        for (int s : {1, -1}) {
          Scalar cand = Scalar::fromRational(Rational(p * s) / Rational(q));
          if (evalPoly(coeffs, cand).isZero()) {
            roots.push_back(cand);
            coeffs = deflate(coeffs, cand);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) {
      throw SupportNotSplit("characteristic polynomial has an irrational root");
    }
  }
  return roots;
}

std::vector<Scalar> distinctValues(const std::vector<Scalar>& values) {
  std::vector<Scalar> out;
  for (const Scalar& v : values) {
    bool seen = false;
    for (const Scalar& w : out) {
      if (w == v) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(v);
  }
  std::sort(out.begin(), out.end(),
            [](const Scalar& a, const Scalar& b) { return a.compare(b) < 0; });
  return out;
}

}  // namespace

std::vector<std::vector<Scalar>> support_points(const CommTuple& t) {
  const int d = t.d();
  const Field f = t.field();
  std::vector<std::vector<Scalar>> eigs;
  for (int i = 0; i < t.n(); ++i) {
    eigs.push_back(distinctValues(splitRoots(charPoly(t.x(i)), f)));
  }
  // Refine k^d through generalized eigenspaces coordinate by coordinate.
  struct Branch {
    std::vector<Scalar> point;
    ExactMatrix basis;  // d × k column basis of the current subspace
  };
  std::vector<Branch> branches{{{}, ExactMatrix::identity(d, f)}};
  for (int i = 0; i < t.n(); ++i) {
    std::vector<Branch> next;
    for (const Scalar& lambda : eigs[i]) {
      ExactMatrix shifted = t.x(i) - ExactMatrix::identity(d, f).scaled(lambda);
      ExactMatrix p = ExactMatrix::identity(d, f);
      for (int k = 0; k < d; ++k) p = p * shifted;
      for (const Branch& b : branches) {
        auto kern = kernel_basis(p * b.basis);
        if (kern.empty()) continue;
        ExactMatrix sub = ExactMatrix::zeros(b.basis.cols(), static_cast<int>(kern.size()), f);
        for (size_t c = 0; c < kern.size(); ++c) {
          for (int r = 0; r < b.basis.cols(); ++r) sub.set(r, static_cast<int>(c), kern[c][r]);
        }
        Branch nb{b.point, b.basis * sub};
        nb.point.push_back(lambda);
        next.push_back(std::move(nb));
      }
    }
    branches = std::move(next);
  }
  std::vector<std::vector<Scalar>> points;
  for (const Branch& b : branches) points.push_back(b.point);
  std::sort(points.begin(), points.end(),
            [](const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
              for (size_t i = 0; i < a.size(); ++i) {
                int c = a[i].compare(b[i]);
                if (c != 0) return c < 0;
              }
              return false;
            });
  return points;
}

bool is_toeplitz_relative(const CommTuple& t) {
  const int d = t.d();
  const Field f = t.field();
  // Parse x_1 as the canonical Jordan matrix with weakly decreasing blocks.
  std::vector<int> blocks;
  {
    const ExactMatrix& x1 = t.x(0);
    int at = 0;
    while (at < d) {
      int len = 1;
      while (at + len < d && x1.at(at + len - 1, at + len).isOne()) ++len;
      blocks.push_back(len);
      at += len;
    }
    // Verify exact canonical shape: superdiagonal ones inside blocks, zeros
    // elsewhere, sizes weakly decreasing.
    ExactMatrix canonical = ExactMatrix::zeros(d, d, f);
    int offset = 0;
    for (size_t b = 0; b < blocks.size(); ++b) {
      if (b > 0 && blocks[b] > blocks[b - 1]) {
        throw PreconditionError("Jordan blocks must be weakly decreasing");
      }
      for (int k = 0; k + 1 < blocks[b]; ++k) {
        canonical.set(offset + k, offset + k + 1, Scalar::one(f));
      }
      offset += blocks[b];
    }
    if (!(canonical == x1)) {
      throw PreconditionError("first matrix is not in canonical nilpotent Jordan form");
    }
  }
  std::vector<int> starts{0};
  for (int b : blocks) starts.push_back(starts.back() + b);

  for (int i = 1; i < t.n(); ++i) {
    const ExactMatrix& m = t.x(i);
    for (size_t p = 0; p < blocks.size(); ++p) {
      for (size_t q = 0; q < blocks.size(); ++q) {
        const int ap = blocks[p], aq = blocks[q];
        const int minShift = std::max(0, aq - ap);
        for (int r = 0; r < ap; ++r) {
          for (int c = 0; c < aq; ++c) {
            Scalar v = m.at(starts[p] + r, starts[q] + c);
            if (c - r < minShift) {
              if (!v.isZero()) return false;
            } else if (r + 1 < ap && c + 1 < aq) {
              // Constant along diagonals.
              if (v != m.at(starts[p] + r + 1, starts[q] + c + 1)) return false;
            }
          }
        }
      }
    }
  }
  return true;
}

bool is_nilpotent_tuple(const CommTuple& t) {
  const int d = t.d();
  for (const ExactMatrix& m : t.matrices()) {
    ExactMatrix p = ExactMatrix::identity(d, t.field());
    for (int k = 0; k < d; ++k) p = p * m;
    if (!p.isZero()) return false;
  }
  return true;
}

int nilpotency_bound(const CommTuple& t) {
  const int d = t.d();
  const Field f = t.field();
  // V_k = span of the columns of all degree-k products. V_k ⊆ V_{k-1}, and
  // for nilpotent tuples the chain strictly decreases until it hits zero;
  // a stall means some nonzero subspace is preserved, i.e. not nilpotent.
  std::vector<std::vector<Scalar>> basis;
  for (int c = 0; c < d; ++c) {
    std::vector<Scalar> e(d, Scalar::zero(f));
    e[c] = Scalar::one(f);
    basis.push_back(std::move(e));
  }
  for (int k = 1; k <= d; ++k) {
    RowSpace next(d, f);
    for (int i = 0; i < t.n(); ++i) {
      for (const auto& v : basis) next.insert(t.x(i).apply(v));
    }
    if (next.dim() == 0) return k;
    if (next.dim() >= static_cast<int>(basis.size())) {
      throw PreconditionError("tuple is not nilpotent");
    }
    basis = next.rows();
  }
  throw PreconditionError("tuple is not nilpotent");
}

Json tuple_to_json(const CommTuple& t) {
  Json j;
  j["n"] = t.n();
  j["d"] = t.d();
  j["field"] = field_to_json(t.field());
  Json mats = Json::array();
  for (const ExactMatrix& m : t.matrices()) mats.push_back(matrix_to_json(m));
  j["matrices"] = std::move(mats);
  return j;
}

CommTuple tuple_from_json(const Json& j, const Field& defaultField) {
  if (!j.is_object()) throw InputError("tuple document must be an object");
  for (const char* key : {"n", "d", "matrices"}) {
    if (!j.contains(key)) throw InputError(std::string("tuple document needs \"") + key + "\"");
  }
  Field f = j.contains("field") ? field_from_json(j["field"]) : defaultField;
  int n = j["n"].get<int>();
  int d = j["d"].get<int>();
  if (!j["matrices"].is_array() || static_cast<int>(j["matrices"].size()) != n) {
    throw InputError("expected " + std::to_string(n) + " matrices");
  }
  std::vector<ExactMatrix> mats;
  for (const Json& mj : j["matrices"]) {
    ExactMatrix m = matrix_from_json(mj, f);
    if (m.rows() != d || m.cols() != d) {
      throw InputError("matrix is not " + std::to_string(d) + "×" + std::to_string(d));
    }
    mats.push_back(std::move(m));
  }
  if (auto bad = first_noncommuting_pair(mats)) {
    throw InputError("matrices " + std::to_string(bad->first) + " and " +
                     std::to_string(bad->second) + " do not commute");
  }
  return CommTuple(std::move(mats));
}

}  // namespace quotlab
