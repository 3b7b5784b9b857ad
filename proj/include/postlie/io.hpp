#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "postlie/liealg.hpp"
#include "postlie/magnus.hpp"
#include "postlie/postlie.hpp"
#include "postlie/rmatrix.hpp"

// JSON readers and writers for the file formats used by the command-line
// tool. Malformed documents raise ParseError; well-formed documents that
// describe an invalid object raise the corresponding validation error.
namespace postlie::io {

std::string read_file(const std::string& path);

// {"dim", "basis"?, "structure": [[i,j,k,"p/q"],...], "realization"?: {"size", "matrices"}}
LieAlgebra<Rational> parse_algebra(const std::string& text);

// Either {"theta", "matrix"} with rows of the matrix acting on coordinate
// columns, or a splitting {"plus": [...], "minus": [...]}.
struct RMatrixSpec {
  int theta = 1;
  std::optional<Matrix<Rational>> matrix;
  std::vector<std::size_t> plus, minus;
  bool is_splitting() const { return !matrix.has_value(); }
};
RMatrixSpec parse_rmatrix(const std::string& text);
RMatrixContext<Rational> make_context(AlgebraPtr<Rational> L, const RMatrixSpec& spec);

// Same sparse triple format as the structure constants, for x_i ▷ x_j.
BilinearProduct<Rational> parse_product(AlgebraPtr<Rational> L, const std::string& text);

// "1, -1/2, 0"
Vector<Rational> parse_vector(const std::string& text);
std::vector<double> parse_doubles(const std::string& text);

// {"orders": [[...], ...]} with χ₁..χ_N as rational strings.
std::string magnus_json(const GradedLieElement<Rational>& chi);
std::string magnus_json(const GradedLieElement<double>& chi);

}  // namespace postlie::io
