#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "quotlab/errors.hpp"
#include "quotlab/rng.hpp"
#include "quotlab/tuple.hpp"
#include "tuple_fixtures.hpp"

using namespace quotlab;
using fixtures::diag;
using fixtures::units;

namespace {

Scalar q(long num, long den = 1) { return Scalar::ratio(num, den); }

using fixtures::randomInvertible;
using fixtures::randomSplitTuple;

bool satisfiesTangentEquations(const CommTuple& t, const TangentVector& v) {
  for (int i = 0; i < t.n(); ++i) {
    for (int j = 0; j < t.n(); ++j) {
      ExactMatrix lhs = t.x(i) * v.z[j] - v.z[j] * t.x(i) + v.z[i] * t.x(j) -
                        t.x(j) * v.z[i];
      if (!lhs.isZero()) return false;
    }
  }
  return true;
}

std::vector<std::vector<Scalar>> sortedPoints(std::vector<std::vector<Scalar>> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
              for (size_t i = 0; i < a.size(); ++i) {
                int c = a[i].compare(b[i]);
                if (c != 0) return c < 0;
              }
              return false;
            });
  return pts;
}

// Canonical nilpotent Jordan matrix with the given block sizes.
ExactMatrix jordan(const std::vector<int>& blocks) {
  int d = 0;
  for (int b : blocks) d += b;
  ExactMatrix m = ExactMatrix::zeros(d, d, Field{});
  int at = 0;
  for (int b : blocks) {
    for (int k = 0; k + 1 < b; ++k) m.set(at + k, at + k + 1, q(1));
    at += b;
  }
  return m;
}

ExactMatrix polyIn(const ExactMatrix& x, const std::vector<long>& coeffs) {
  ExactMatrix acc = ExactMatrix::zeros(x.rows(), x.cols(), x.field());
  ExactMatrix power = ExactMatrix::identity(x.rows(), x.field());
  for (long c : coeffs) {
    acc = acc + power.scaled(q(c));
    power = power * x;
  }
  return acc;
}

}  // namespace

TEST_CASE("commutativity checks and first failing pair") {
  CHECK(is_commuting({units(3, {{1, 2}})}));
  CHECK(is_commuting({diag({0, 1}), diag({0, 1})}));
  CHECK_FALSE(is_commuting({units(2, {{1, 2}}), units(2, {{2, 1}})}));
  auto bad = first_noncommuting_pair({units(2, {{1, 2}}), units(2, {{2, 1}})});
  REQUIRE(bad.has_value());
  CHECK(bad->first == 1);
  CHECK(bad->second == 2);

  // Pair order: the first failing pair in lexicographic order is reported.
  auto later = first_noncommuting_pair(
      {ExactMatrix::zeros(2, 2, Field{}), units(2, {{1, 2}}), units(2, {{2, 1}})});
  REQUIRE(later.has_value());
  CHECK(later->first == 2);
  CHECK(later->second == 3);

  CHECK_THROWS_AS(is_commuting({ExactMatrix::zeros(2, 3, Field{})}), ShapeError);
  CHECK_THROWS_AS(
      is_commuting({ExactMatrix::zeros(2, 2, Field{}), ExactMatrix::zeros(3, 3, Field{})}),
      ShapeError);
  CHECK_THROWS_AS(CommTuple({units(2, {{1, 2}}), units(2, {{2, 1}})}), PreconditionError);
}

TEST_CASE("tangent dimensions of the published witnesses") {
  CHECK(tangent_dimension(fixtures::sq_4_2()) == 24);
  CHECK(tangent_dimension(fixtures::sq_5_2()) == 41);
  CHECK(tangent_dimension(fixtures::sq_6_3()) == 69);
  CHECK(tangent_dimension(fixtures::sq_6_2()) == 62);
  CHECK(tangent_dimension(fixtures::sq_7_3_n5()) == 77);
  CHECK(tangent_dimension(fixtures::sq_7_2_n7()) == 87);
  CHECK(tangent_dimension(fixtures::w332()) == 71);
}

TEST_CASE("tangent basis spans solutions of the deformation equations") {
  for (const CommTuple& t : {fixtures::sq_4_2(), fixtures::w332()}) {
    TangentSpace ts = tangent_space(t);
    CHECK(static_cast<int>(ts.basis.size()) == ts.dimension);
    for (const TangentVector& v : ts.basis) CHECK(satisfiesTangentEquations(t, v));
  }
}

TEST_CASE("tangent dimension trivial cases") {
  // No constraints at the zero tuple: all n·d² directions are tangent.
  CommTuple zero3(std::vector<ExactMatrix>(3, ExactMatrix::zeros(2, 2, Field{})));
  CHECK(tangent_dimension(zero3) == 12);

  // A single matrix has no commutation constraints at all.
  SplitMix64 rng(7);
  ExactMatrix x = ExactMatrix::zeros(3, 3, Field{});
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) x.set(r, c, q(rng.range(-4, 4)));
  CHECK(tangent_dimension(CommTuple({x})) == 9);
}

TEST_CASE("tangent dimension at the degree-7 concatenation point") {
  CHECK(tangent_dimension(fixtures::concat_witness_7()) == 66);
}

TEST_CASE("group actions preserve the tangent dimension") {
  SplitMix64 rng(11);
  std::vector<CommTuple> instances{fixtures::sq_4_2(), fixtures::sq_5_2()};
  const std::vector<std::pair<int, int>> shapes{{2, 3}, {3, 4}, {4, 4}, {5, 3}, {3, 5}, {2, 6}};
  for (auto [n, d] : shapes) {
    instances.push_back(randomSplitTuple(rng, n, d, randomInvertible(rng, d)));
  }
  for (const CommTuple& t : instances) {
    const int base = tangent_dimension(t);

    std::vector<Scalar> alpha;
    for (int i = 0; i < t.n(); ++i) alpha.push_back(q(rng.range(-3, 3)));
    CHECK(tangent_dimension(translate(t, alpha)) == base);

    CHECK(tangent_dimension(linear_change(t, randomInvertible(rng, t.n()))) == base);

    CHECK(tangent_dimension(conjugate(t, randomInvertible(rng, t.d()))) == base);
  }
}

TEST_CASE("group action algebra") {
  CommTuple t = fixtures::sq_4_2();

  // Zero translation and identity changes act trivially.
  std::vector<Scalar> zero(4, q(0));
  CHECK(translate(t, zero) == t);
  CHECK(linear_change(t, ExactMatrix::identity(4, Field{})) == t);
  CHECK(conjugate(t, ExactMatrix::identity(4, Field{})) == t);

  // Translation is a group action: α then −α recovers the tuple.
  std::vector<Scalar> alpha{q(1), q(-2), q(3, 2), q(5)};
  std::vector<Scalar> minus;
  for (const Scalar& a : alpha) minus.push_back(-a);
  CHECK(translate(translate(t, alpha), minus) == t);

  // Single Jordan block shifted by 1.
  CommTuple j2(std::vector<ExactMatrix>{jordan({2})});
  CommTuple shifted = translate(j2, {q(1)});
  CHECK(shifted.x(0).at(0, 0) == q(1));
  CHECK(shifted.x(0).at(0, 1) == q(1));
  CHECK(shifted.x(0).at(1, 1) == q(1));

  // Permutation matrices permute the tuple.
  ExactMatrix swap01 = ExactMatrix::zeros(4, 4, Field{});
  swap01.set(0, 1, q(1));
  swap01.set(1, 0, q(1));
  swap01.set(2, 2, q(1));
  swap01.set(3, 3, q(1));
  CommTuple permuted = linear_change(t, swap01);
  CHECK(permuted.x(0) == t.x(1));
  CHECK(permuted.x(1) == t.x(0));
  CHECK(permuted.x(2) == t.x(2));

  // Conjugation by g then g⁻¹ recovers the tuple.
  SplitMix64 rng(23);
  ExactMatrix g = randomInvertible(rng, 4);
  CHECK(conjugate(conjugate(t, g), invert(g)) == t);

  CHECK_THROWS_AS(linear_change(t, ExactMatrix::zeros(4, 4, Field{})), SingularMatrixError);
  CHECK_THROWS_AS(conjugate(t, ExactMatrix::zeros(4, 4, Field{})), SingularMatrixError);
  CHECK_THROWS_AS(translate(t, {q(1)}), ShapeError);
}

TEST_CASE("concatenation produces block-diagonal tuples up to conjugation") {
  CommTuple a(std::vector<ExactMatrix>{diag({2})});
  CommTuple b(std::vector<ExactMatrix>{diag({5})});
  CommTuple ab = concat(ExactMatrix::identity(2, Field{}), a, b);
  CHECK(ab.x(0) == diag({2, 5}));

  CommTuple wrongN(std::vector<ExactMatrix>{diag({1}), diag({2})});
  CHECK_THROWS_AS(concat(ExactMatrix::identity(2, Field{}), a, wrongN), ShapeError);
  CHECK_THROWS_AS(concat(ExactMatrix::identity(5, Field{}), a, b), ShapeError);
}

TEST_CASE("concatenation of disjoint 1x1 tuples has tangent dimension 2+2n") {
  SplitMix64 rng(31);
  for (int n = 1; n <= 6; ++n) {
    std::vector<ExactMatrix> left, right;
    for (int i = 0; i < n; ++i) {
      left.push_back(diag({i + 1}));  // support point (1, 2, .., n)
      right.push_back(diag({0}));     // support point at the origin
    }
    CommTuple t(left), tp(right);
    CHECK(tangent_dimension(concat(ExactMatrix::identity(2, Field{}), t, tp)) == 2 + 2 * n);
    CHECK(tangent_dimension(concat(randomInvertible(rng, 2), t, tp)) == 2 + 2 * n);
  }
}

TEST_CASE("concatenation of a square-zero point with a principal point") {
  // 4×4 square-zero smooth point (dimension 24) next to a 3×3 tuple of
  // commuting diagonal matrices with three distinct support points
  // (principal component, dimension 9 + 9 = 18); the glued component has
  // dimension 24 + 18 + 2·3·4 = 66 and the glued point is smooth.
  CommTuple corner({units(4, {{1, 4}}), units(4, {{1, 3}}), units(4, {{2, 4}}),
                    units(4, {{2, 3}})});
  CommTuple points({diag({0, 0, 1}), diag({0, 1, 0}), diag({1, 0, 0}), diag({1, 1, 1})});
  ExactMatrix g = units(7, {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}, {7, 7},
                            {1, 5}, {2, 4}, {2, 5}, {3, 4}});
  CHECK(tangent_dimension(concat(g, corner, points)) == 66);
  CHECK(tangent_dimension(concat(ExactMatrix::identity(7, Field{}), corner, points)) == 66);
}

TEST_CASE("cube-zero invariants on the witnesses") {
  CubeZeroInvariants w = cube_zero_invariants(fixtures::w332());
  CHECK(w.a == 3);
  CHECK(w.aPlusC == 5);
  CHECK(w.aPlusB == 6);
  CHECK(w.aT == 2);

  CubeZeroInvariants s = cube_zero_invariants(fixtures::sq_4_2());
  CHECK(s.a == 2);
  CHECK(s.aPlusB == 4);
  CHECK(s.aT == 2);

  CommTuple zero(std::vector<ExactMatrix>(2, ExactMatrix::zeros(3, 3, Field{})));
  CubeZeroInvariants z = cube_zero_invariants(zero);
  CHECK(z.a == 3);
  CHECK(z.aPlusB == 3);
  CHECK(z.aPlusC == 3);
  CHECK(z.aT == 3);
}

using fixtures::randomCubeZero;

TEST_CASE("cube-zero invariants are ordered") {
  SplitMix64 rng(37);
  std::vector<CommTuple> instances{fixtures::sq_5_2(), fixtures::sq_6_3(),
                                   fixtures::w332()};
  instances.push_back(conjugate(fixtures::sq_4_2(), randomInvertible(rng, 4)));
  instances.push_back(conjugate(fixtures::w332(), randomInvertible(rng, 7)));
  for (int trial = 0; trial < 5; ++trial) {
    int n = 2 + static_cast<int>(rng.range(0, 2));
    instances.push_back(randomCubeZero(rng, n, 1 + static_cast<int>(rng.range(0, 2)),
                                       1 + static_cast<int>(rng.range(0, 2)),
                                       1 + static_cast<int>(rng.range(0, 2))));
  }
  for (const CommTuple& t : instances) {
    REQUIRE(is_nilpotent_tuple(t));
    CubeZeroInvariants c = cube_zero_invariants(t);
    CHECK(c.a <= c.aPlusC);
    CHECK(c.aPlusC <= c.aPlusB);
    CHECK(c.aPlusB <= t.d());
  }
}

TEST_CASE("support points of split tuples") {
  auto pts = support_points(CommTuple({diag({0, 1}), diag({0, 1})}));
  REQUIRE(pts.size() == 2);
  CHECK(pts[0] == std::vector<Scalar>{q(0), q(0)});
  CHECK(pts[1] == std::vector<Scalar>{q(1), q(1)});
  // The mixed pair (1, 0) is NOT in the support even though 1 and 0 are
  // eigenvalues of the individual matrices.
  for (const auto& p : pts) CHECK(p != std::vector<Scalar>{q(1), q(0)});

  auto shifted = support_points(CommTuple({diag({0, 1}), diag({2, 3})}));
  REQUIRE(shifted.size() == 2);
  CHECK(shifted[0] == std::vector<Scalar>{q(0), q(2)});
  CHECK(shifted[1] == std::vector<Scalar>{q(1), q(3)});

  // Nilpotent tuples are supported exactly at the origin.
  auto origin = support_points(fixtures::sq_4_2());
  REQUIRE(origin.size() == 1);
  CHECK(origin[0] == std::vector<Scalar>(4, q(0)));
  auto origin2 = support_points(fixtures::w332());
  REQUIRE(origin2.size() == 1);
  CHECK(origin2[0] == std::vector<Scalar>(5, q(0)));

  // Repeated joint eigenvalues collapse to one support point.
  auto collapsed = support_points(CommTuple({diag({1, 1, 2}), diag({3, 3, 4})}));
  REQUIRE(collapsed.size() == 2);
  CHECK(collapsed[0] == std::vector<Scalar>{q(1), q(3)});
  CHECK(collapsed[1] == std::vector<Scalar>{q(2), q(4)});

  // Rational non-integer eigenvalues are found exactly.
  ExactMatrix half = ExactMatrix::zeros(2, 2, Field{});
  half.set(0, 0, q(1, 2));
  half.set(1, 1, q(-3, 2));
  auto ratpts = support_points(CommTuple({half}));
  REQUIRE(ratpts.size() == 2);
  CHECK(ratpts[0] == std::vector<Scalar>{q(-3, 2)});
  CHECK(ratpts[1] == std::vector<Scalar>{q(1, 2)});
}

TEST_CASE("support points refuse non-split spectra") {
  CHECK_THROWS_AS(support_points(CommTuple({ExactMatrix::fromRows(
                      {{q(0), q(-1)}, {q(1), q(0)}}, Field{}, 2)})),
                  SupportNotSplit);
  CHECK_THROWS_AS(support_points(CommTuple({ExactMatrix::fromRows(
                      {{q(0), q(2)}, {q(1), q(0)}}, Field{}, 2)})),
                  SupportNotSplit);
}

TEST_CASE("support of random split tuples matches the diagonal data") {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + static_cast<int>(rng.range(0, 3));
    int d = 2 + static_cast<int>(rng.range(0, 3));
    ExactMatrix g = randomInvertible(rng, d);
    // Rebuild the diagonals alongside the tuple to know the true support.
    std::vector<std::vector<long>> diagonals;
    std::vector<ExactMatrix> mats;
    ExactMatrix gInv = invert(g);
    for (int i = 0; i < n; ++i) {
      std::vector<long> entries;
      for (int k = 0; k < d; ++k) entries.push_back(rng.range(-2, 2));
      diagonals.push_back(entries);
      mats.push_back(g * diag(entries) * gInv);
    }
    CommTuple t(std::move(mats));
    std::vector<std::vector<Scalar>> expected;
    for (int k = 0; k < d; ++k) {
      std::vector<Scalar> pt;
      for (int i = 0; i < n; ++i) pt.push_back(q(diagonals[i][k]));
      if (std::find(expected.begin(), expected.end(), pt) == expected.end()) {
        expected.push_back(pt);
      }
    }
    CHECK(support_points(t) == sortedPoints(expected));

    // Every support coordinate is an eigenvalue of the matching matrix.
    for (const auto& pt : support_points(t)) {
      for (int i = 0; i < n; ++i) {
        ExactMatrix shifted =
            t.x(i) - ExactMatrix::identity(d, Field{}).scaled(pt[i]);
        CHECK(rank_of(shifted) < d);
      }
    }
  }
}

TEST_CASE("toeplitz structure relative to a Jordan first matrix") {
  CHECK(is_toeplitz_relative(CommTuple({jordan({2}), units(2, {{1, 2}})})));
  CHECK(is_toeplitz_relative(CommTuple({jordan({2, 1}), units(3, {{1, 3}})})));
  CHECK(is_toeplitz_relative(CommTuple({jordan({2, 2}), units(4, {{1, 3}, {2, 4}})})));

  // A commuting partner of a Jordan matrix is always block Toeplitz.
  SplitMix64 rng(43);
  const std::vector<std::vector<int>> shapes{{2, 1}, {2, 2}, {3, 2}, {3, 3, 1}, {4, 2, 1}};
  for (const auto& blocks : shapes) {
    ExactMatrix j = jordan(blocks);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<long> c1, c2;
      for (int k = 0; k < j.rows(); ++k) {
        c1.push_back(rng.range(-3, 3));
        c2.push_back(rng.range(-3, 3));
      }
      CommTuple t({j, polyIn(j, c1), polyIn(j, c2)});
      CHECK(is_toeplitz_relative(t));
    }
  }

  CHECK_THROWS_AS(is_toeplitz_relative(CommTuple({diag({1, 0}), diag({0, 0})})),
                  PreconditionError);
  CHECK_THROWS_AS(is_toeplitz_relative(CommTuple(
                      {units(2, {{2, 1}}), ExactMatrix::zeros(2, 2, Field{})})),
                  PreconditionError);
  // Block sizes must be weakly decreasing.
  CHECK_THROWS_AS(is_toeplitz_relative(CommTuple(
                      {units(3, {{2, 3}}), ExactMatrix::zeros(3, 3, Field{})})),
                  PreconditionError);
}

TEST_CASE("nilpotency helpers") {
  CHECK(is_nilpotent_tuple(fixtures::sq_4_2()));
  CHECK(is_nilpotent_tuple(fixtures::w332()));
  CHECK_FALSE(is_nilpotent_tuple(CommTuple({diag({0, 1})})));

  CHECK(nilpotency_bound(fixtures::sq_4_2()) == 2);
  CHECK(nilpotency_bound(fixtures::w332()) == 3);
  CHECK(nilpotency_bound(CommTuple(std::vector<ExactMatrix>(
            2, ExactMatrix::zeros(3, 3, Field{})))) == 1);
  CHECK(nilpotency_bound(CommTuple(std::vector<ExactMatrix>{jordan({2})})) == 2);
  CHECK_THROWS_AS(nilpotency_bound(CommTuple({diag({0, 1})})), PreconditionError);
}

TEST_CASE("tuple JSON round trip") {
  CommTuple t = fixtures::sq_5_2();
  Json j = tuple_to_json(t);
  CHECK(j["n"] == 5);
  CHECK(j["d"] == 5);
  CHECK(j["field"] == "rational");
  CHECK(tuple_from_json(j) == t);

  // Prime-field tuples carry their modulus through the round trip.
  Field f7 = Field::mod(7);
  CommTuple tp({diag({0, 1}, f7), diag({2, 3}, f7)});
  Json jp = tuple_to_json(tp);
  CHECK(jp["field"]["prime"] == 7);
  CHECK(tuple_from_json(jp) == tp);

  Json bad = tuple_to_json(t);
  bad["matrices"][0][0][1] = "1";  // breaks commutativity
  CHECK_THROWS_AS(tuple_from_json(bad), InputError);

  Json truncated = tuple_to_json(t);
  truncated.erase("matrices");
  CHECK_THROWS_AS(tuple_from_json(truncated), InputError);

  Json wrongCount = tuple_to_json(t);
  wrongCount["n"] = 4;
  CHECK_THROWS_AS(tuple_from_json(wrongCount), InputError);
}
