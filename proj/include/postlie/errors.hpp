#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace postlie {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(actual)) {}
};

class AntisymmetryViolation : public Error {
 public:
  AntisymmetryViolation(std::size_t i, std::size_t j, std::size_t k)
      : Error("structure constants are not antisymmetric at (" +
              std::to_string(i) + "," + std::to_string(j) + "," +
              std::to_string(k) + ")") {}
};

class JacobiViolation : public Error {
 public:
  JacobiViolation(std::size_t i, std::size_t j, std::size_t k, std::size_t l,
                  std::string defect)
      : Error("Jacobi identity fails for basis triple (" + std::to_string(i) +
              "," + std::to_string(j) + "," + std::to_string(k) +
              ") in component " + std::to_string(l) + ": defect " + defect),
        i(i), j(j), k(k), l(l) {}
  std::size_t i, j, k, l;
};

class RealizationMismatch : public Error {
 public:
  RealizationMismatch(std::size_t i, std::size_t j)
      : Error("realization is not a representation: rho([x" +
              std::to_string(i) + ",x" + std::to_string(j) +
              "]) != [rho(x" + std::to_string(i) + "),rho(x" +
              std::to_string(j) + ")]"),
        i(i), j(j) {}
  std::size_t i, j;
};

class NoRealization : public Error {
 public:
  NoRealization() : Error("the algebra has no matrix realization") {}
};

class RealizationRequired : public Error {
 public:
  RealizationRequired() : Error("this operation requires a matrix realization") {}
};

class UnsupportedName : public Error {
 public:
  explicit UnsupportedName(const std::string& name)
      : Error("unsupported built-in name: " + name) {}
};

class NotASubalgebra : public Error {
 public:
  NotASubalgebra(std::string side, std::size_t i, std::size_t j)
      : Error("the " + side + " index set does not span a subalgebra: [x" +
              std::to_string(i) + ",x" + std::to_string(j) + "] leaves it"),
        side(std::move(side)), i(i), j(j) {}
  std::string side;
  std::size_t i, j;
};

class NotADirectSum : public Error {
 public:
  explicit NotADirectSum(const std::string& why)
      : Error("index sets do not partition the basis: " + why) {}
};

class NotAnRMatrix : public Error {
 public:
  explicit NotAnRMatrix(const std::string& why)
      : Error("not a classical r-matrix: " + why) {}
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class OrderMismatch : public Error {
 public:
  OrderMismatch(unsigned a, unsigned b)
      : Error("truncation orders differ: " + std::to_string(a) + " vs " +
              std::to_string(b)) {}
};

class AlgebraMismatch : public Error {
 public:
  AlgebraMismatch() : Error("operands belong to different Lie algebras") {}
};

class NotInAugmentationIdeal : public Error {
 public:
  NotInAugmentationIdeal()
      : Error("exp requires an element with vanishing counit") {}
};

class NotUnitNormalized : public Error {
 public:
  NotUnitNormalized() : Error("log requires an element with counit 1") {}
};

class CollapseFailure : public Error {
 public:
  CollapseFailure(unsigned n, std::string residual)
      : Error("order " + std::to_string(n) +
              " term has a nonzero component on words of length >= 2: " +
              residual),
        n(n) {}
  unsigned n;
};

class PrimitivityFailure : public Error {
 public:
  explicit PrimitivityFailure(unsigned n)
      : Error("graded component " + std::to_string(n) + " is not primitive"),
        n(n) {}
  unsigned n;
};

class NotPreLie : public Error {
 public:
  NotPreLie() : Error("product tensor does not satisfy the left pre-Lie identity") {}
};

class NotAbelian : public Error {
 public:
  NotAbelian() : Error("bracket algebra is not abelian") {}
};

class StepTooLarge : public Error {
 public:
  explicit StepTooLarge(double drift)
      : Error("integration step too large: invariant drift " +
              std::to_string(drift)) {}
};

class BadDimensions : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace postlie
