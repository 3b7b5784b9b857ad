#include <gtest/gtest.h>

#include "postlie/io.hpp"
#include "postlie/suites.hpp"

using namespace postlie;
using Q = Rational;

TEST(Io, ParseAlgebraWithRealization) {
  const char* text = R"({"dim": 3, "basis": ["e", "h", "f"],
    "structure": [[0,1,0,"-2"], [0,2,1,"1"], [1,2,2,"-2"]],
    "realization": {"size": 2, "matrices": [[["0","1"],["0","0"]], [["1","0"],["0","-1"]], [["0","0"],["1","0"]]]}})";
  auto L = io::parse_algebra(text);
  EXPECT_EQ(L, builtin_sl2<Q>());
  EXPECT_TRUE(L.has_realization());
  EXPECT_EQ(L.label(2), "f");
}

TEST(Io, ParseAlgebraErrors) {
  EXPECT_THROW(io::parse_algebra("{"), ParseError);
  EXPECT_THROW(io::parse_algebra(R"({"structure": []})"), ParseError);
  EXPECT_THROW(io::parse_algebra(R"({"dim": 2, "structure": [[0, 5, 1, "1"]]})"), ParseError);
  EXPECT_THROW(io::parse_algebra(R"({"dim": 2, "structure": [[0, 1, 1, "1/0"]]})"), ParseError);
  EXPECT_THROW(io::parse_algebra(R"({"dim": 2, "structure": [[0, 1, 1, 0.5]]})"), ParseError);
  // [x0,x1] = x2, [x1,x2] = x0, [x0,x2] = x0 breaks Jacobi
  EXPECT_THROW(io::parse_algebra(R"({"dim": 3, "structure": [[0,1,2,"1"],[1,2,0,"1"],[0,2,0,"1"]]})"),
               JacobiViolation);
}

TEST(Io, ParseRMatrix) {
  auto split = io::parse_rmatrix(R"({"plus": [0, 1], "minus": [2]})");
  ASSERT_TRUE(split.is_splitting());
  auto L = share(builtin_sl2<Q>());
  auto ctx = io::make_context(L, split);
  EXPECT_EQ(ctx.R(), builtin_structure<Q>("sl2-borel").R());

  auto m = io::parse_rmatrix(R"({"theta": "1", "matrix": [["1","0","0"],["0","1","0"],["0","0","-1"]]})");
  ASSERT_FALSE(m.is_splitting());
  EXPECT_EQ(io::make_context(L, m).R(), ctx.R());
  EXPECT_THROW(io::parse_rmatrix(R"({"theta": "2", "matrix": [["1"]]})"), ParseError);
  EXPECT_THROW(io::parse_rmatrix(R"({"matrix": [["1", "0"]]})"), ParseError);
  auto bad = io::parse_rmatrix(R"({"matrix": [["0","1","0"],["0","0","0"],["0","0","0"]]})");
  EXPECT_THROW(io::make_context(L, bad), NotAnRMatrix);
}

TEST(Io, VectorsAndMagnusJson) {
  EXPECT_EQ(io::parse_vector("1, -1/2,0"), (Vector<Q>{1, make_rational(-1, 2), 0}));
  EXPECT_THROW(io::parse_vector("1,x"), ParseError);
  EXPECT_EQ(io::parse_doubles("0.5,-1"), (std::vector<double>{0.5, -1}));
  GradedLieElement<Q> chi(share(builtin_sl2<Q>()), 2);
  chi.coeff(1) = Vector<Q>{1, 0, 1};
  chi.coeff(2) = Vector<Q>{0, make_rational(1, 2), 0};
  EXPECT_EQ(io::magnus_json(chi), R"({"orders":[["1","0","1"],["0","1/2","0"]]})");
}

TEST(Io, ParseProduct) {
  auto L = share(builtin_sl2<Q>());
  auto p = io::parse_product(L, R"({"dim": 3, "structure": [[0, 2, 1, "1/2"]]})");
  EXPECT_EQ(p.basis_product(0, 2), (Vector<Q>{0, make_rational(1, 2), 0}));
  EXPECT_TRUE(p.basis_product(2, 0).is_zero());
  EXPECT_THROW(io::parse_product(L, R"({"dim": 2, "structure": []})"), DimensionMismatch);
}

TEST(Suites, BuiltinStructures) {
  for (const auto& name : builtin_structure_names()) {
    auto ctx = builtin_structure<Q>(name);
    EXPECT_TRUE(is_rmatrix(ctx.algebra(), ctx.R(), Q(ctx.theta())).ok) << name;
  }
  EXPECT_THROW(builtin_structure<Q>("nope"), UnsupportedName);
}
