#include <gtest/gtest.h>

#include <random>

#include "postlie/liealg.hpp"
#include "test_util.hpp"

using namespace postlie;
using Q = Rational;

namespace {

Vector<Q> random_vector(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-4, 4);
  Vector<Q> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = make_rational(d(rng), 1 + (d(rng) + 4) % 3);
  return v;
}

// Bracket via matrix commutators in the realization, read back by coordinates.
Vector<Q> bracket_via_matrices(const LieAlgebra<Q>& L, const Vector<Q>& x, const Vector<Q>& y) {
  return coordinates_of(L, commutator(L.represent(x), L.represent(y)));
}

}  // namespace

TEST(LieAlg, BuiltinsValidate) {
  EXPECT_EQ(builtin_so3<Q>().dim(), 3u);
  EXPECT_EQ(builtin_sl2<Q>().dim(), 3u);
  EXPECT_EQ(builtin_gl<Q>(3).dim(), 9u);
  EXPECT_EQ(builtin<Q>("gl(2)").dim(), 4u);
  EXPECT_EQ(builtin<Q>("upper_lower_split(3)").dim(), 9u);
  EXPECT_THROW(builtin<Q>("sp(4)"), UnsupportedName);
  EXPECT_THROW(builtin<Q>("gl(1)"), Error);
}

TEST(LieAlg, So3ExampleWithReversedIndices) {
  std::vector<StructureEntry<Q>> e = {{0, 1, 2, Q(1)}, {1, 2, 0, Q(1)}, {2, 0, 1, Q(1)}};
  auto L = LieAlgebra<Q>::create(3, {}, e);
  EXPECT_EQ(L.c(0, 2, 1), Q(-1));
  EXPECT_EQ(bracket(L, L.basis(0) + L.basis(1), L.basis(1)), L.basis(2));
}

TEST(LieAlg, Sl2Relations) {
  auto L = builtin_sl2<Q>();
  Vector<Q> e = L.basis(0), h = L.basis(1), f = L.basis(2);
  EXPECT_EQ(bracket(L, h, e), Q(2) * e);
  EXPECT_EQ(bracket(L, h, f), Q(-2) * f);
  EXPECT_EQ(bracket(L, e, f), h);
  auto adh = ad(L, h);
  Matrix<Q> expected(3, 3);
  expected(0, 0) = 2;
  expected(2, 2) = -2;
  EXPECT_EQ(adh.matrix(), expected);
  EXPECT_TRUE(ad(L, L.zero()).matrix().is_zero());
}

TEST(LieAlg, JacobiViolationDetected) {
  // [x0,x1] = x2, [x1,x2] = x1: Jacobi on (x0,x1,x2) gives [[x0,x1],x2] + ... = x1 ≠ 0
  std::vector<StructureEntry<Q>> e = {{0, 1, 2, Q(1)}, {1, 2, 1, Q(1)}};
  EXPECT_THROW(LieAlgebra<Q>::create(3, {}, e), JacobiViolation);
  // The pair C[0][1][2] = C[0][2][1] = 1 happens to satisfy Jacobi.
  std::vector<StructureEntry<Q>> ok = {{0, 1, 2, Q(1)}, {0, 2, 1, Q(1)}};
  EXPECT_NO_THROW(LieAlgebra<Q>::create(3, {}, ok));
}

TEST(LieAlg, InconsistentAntisymmetryRejected) {
  std::vector<StructureEntry<Q>> e = {{0, 1, 2, Q(1)}, {1, 0, 2, Q(1)}};
  EXPECT_THROW(LieAlgebra<Q>::create(3, {}, e), Error);
}

TEST(LieAlg, RealizationMismatch) {
  std::vector<StructureEntry<Q>> e = {{0, 1, 2, Q(1)}, {1, 2, 0, Q(1)}, {2, 0, 1, Q(1)}};
  std::vector<Matrix<Q>> mats(3, Matrix<Q>(2, 2));
  mats[0](0, 1) = 1;
  mats[1](1, 0) = 1;
  EXPECT_THROW(LieAlgebra<Q>::create(3, {}, e, mats), RealizationMismatch);
}

TEST(LieAlg, BracketMatchesMatrixCommutator) {
  std::mt19937 rng(7);
  for (const char* name : {"gl(3)", "sl(2)", "so(3)", "upper_lower_split(3)"}) {
    auto L = builtin<Q>(name);
    for (int t = 0; t < 10; ++t) {
      auto x = random_vector(rng, L.dim()), y = random_vector(rng, L.dim());
      EXPECT_EQ(bracket(L, x, y), bracket_via_matrices(L, x, y)) << name;
      EXPECT_TRUE(bracket(L, x, x).is_zero());
    }
  }
}

TEST(LieAlg, AdIsMorphism) {
  for (const char* name : {"gl(2)", "sl(2)", "so(3)"}) {
    auto L = builtin<Q>(name);
    for (std::size_t i = 0; i < L.dim(); ++i)
      for (std::size_t j = 0; j < L.dim(); ++j) {
        auto x = L.basis(i), y = L.basis(j);
        auto lhs = ad(L, bracket(L, x, y));
        auto rhs = ad(L, x) * ad(L, y) - ad(L, y) * ad(L, x);
        EXPECT_EQ(lhs, rhs);
      }
  }
}

TEST(LieAlg, TraceForm) {
  auto L = builtin_sl2<Q>();
  Vector<Q> e = L.basis(0), h = L.basis(1), f = L.basis(2);
  // defining 2x2 realization
  EXPECT_EQ(trace_form(L, h, h), Q(2));
  EXPECT_EQ(trace_form(L, e, f), Q(1));
  // adjoint realization gives the Killing form
  auto K = with_adjoint_realization(L);
  EXPECT_EQ(trace_form(K, h, h), Q(8));
  EXPECT_EQ(trace_form(K, e, f), Q(4));
  EXPECT_EQ(trace_form(L, bracket(L, h, e), f) + trace_form(L, e, bracket(L, h, f)), Q(0));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        auto x = L.basis(i), y = L.basis(j), z = L.basis(k);
        EXPECT_EQ(trace_form(L, bracket(L, x, y), z) + trace_form(L, y, bracket(L, x, z)), Q(0));
        EXPECT_EQ(trace_form(L, x, y), trace_form(L, y, x));
      }
  auto A = LieAlgebra<Q>::from_tensor(2, {}, std::vector<Q>(8, Q(0)));
  EXPECT_THROW(trace_form(A, A.basis(0), A.basis(1)), NoRealization);
}

TEST(LieAlg, UpperLowerSplitProjections) {
  auto s = builtin_upper_lower_split<Q>(2);
  EXPECT_EQ(s.algebra.labels(), (std::vector<std::string>{"E11", "E12", "E22", "E21"}));
  EXPECT_EQ(s.plus_indices, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(s.minus_indices, (std::vector<std::size_t>{3}));
  EXPECT_EQ(s.pi_plus + s.pi_minus, LinearEndo<Q>::identity(4));
  // [E12, E21] = E11 - E22
  EXPECT_EQ(bracket(s.algebra, s.algebra.basis(1), s.algebra.basis(3)),
            s.algebra.basis(0) - s.algebra.basis(2));
}

TEST(LieAlg, DimensionMismatch) {
  auto L = builtin_sl2<Q>();
  EXPECT_THROW(bracket(L, Vector<Q>(2), L.basis(0)), DimensionMismatch);
}

TEST(LieAlg, FloatModeTolerance) {
  auto L = to_float(builtin_gl<Q>(2));
  EXPECT_LE(L.max_jacobi_defect(), 1e-12);
  EXPECT_TRUE(is_zero(1e-12));
  EXPECT_FALSE(is_zero(1e-9));
}

TEST(Scalar, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/6"), Q(1, 2));
  EXPECT_EQ(parse_rational("-7"), Q(-7));
  EXPECT_EQ(parse_rational("0.25"), Q(1, 4));
  EXPECT_EQ(format_rational(Q(-2, 4)), "-1/2");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}
