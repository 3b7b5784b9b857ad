#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "postlie/env.hpp"
#include "postlie/rmatrix.hpp"

namespace postlie {

// Named r-matrix structures: "gl2-split", "gl3-split" (upper / strictly lower
// triangular), "sl2-borel" (plus = span{e,h}, minus = span{f}) and
// "so3-identity" (R = id).
std::vector<std::string> builtin_structure_names();

template <Scalar S>
RMatrixContext<S> builtin_structure(const std::string& name);

// Coordinates p/q with |p| <= range and 1 <= q <= 3.
Vector<Rational> random_rational_vector(std::mt19937& rng, std::size_t dim, int range = 3);

// Two random PBW-normalized words of each length 1..max_len with small
// integer coefficients, plus the unit if requested.
EnvElement random_env_element(const Envelope& U, std::mt19937& rng, std::size_t max_len, bool with_unit);

struct SuiteReport {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

// Coassociativity, counit, antipode and multiplicativity of Δ for `cases`
// random pairs with max_degree = U.order().
SuiteReport hopf_suite(const Envelope& U, const HopfOps& ops, std::size_t cases, std::uint32_t seed);

}  // namespace postlie
