#pragma once

#include <random>

#include "postlie/postlie.hpp"
#include "postlie/rmatrix.hpp"

namespace fixtures {

using postlie::Rational;

template <postlie::Scalar S = Rational>
postlie::RMatrixContext<S> gl_split_ctx(std::size_t n) {
  auto s = postlie::builtin_upper_lower_split<S>(n);
  return postlie::splitting_r<S>(postlie::share(s.algebra), s.plus_indices, s.minus_indices);
}

template <postlie::Scalar S = Rational>
postlie::RMatrixContext<S> sl2_borel_ctx() {
  std::vector<std::size_t> plus = {0, 1}, minus = {2};
  return postlie::splitting_r<S>(postlie::share(postlie::builtin_sl2<S>()), plus, minus);
}

template <postlie::Scalar S = Rational>
postlie::RMatrixContext<S> so3_identity_ctx() {
  auto L = postlie::share(postlie::builtin_so3<S>());
  return postlie::RMatrixContext<S>::create(L, postlie::LinearEndo<S>::identity(3));
}

inline postlie::Vector<Rational> random_vector(std::mt19937& rng, std::size_t dim, int range = 3) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 3);
  postlie::Vector<Rational> v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = postlie::make_rational(num(rng), den(rng));
  return v;
}

// R(x) = φ(x) v on gl(n) solves the classical Yang–Baxter equation whenever φ
// kills [v, g]: either v diagonal with φ(x) = Σ c_i x_ii, or φ a multiple of
// the trace with v arbitrary.
inline postlie::LinearEndo<Rational> random_cybe_solution(std::mt19937& rng, std::size_t n, bool diagonal) {
  std::uniform_int_distribution<int> d(-3, 3);
  const std::size_t dim = n * n;
  postlie::Vector<Rational> v(dim), phi(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (diagonal && i != j) continue;
      v[i * n + j] = d(rng);
    }
  }
  if (diagonal) {
    for (std::size_t i = 0; i < n; ++i) phi[i * n + i] = d(rng);
  } else {
    Rational c = d(rng);
    if (sgn(c) == 0) c = 1;
    for (std::size_t i = 0; i < n; ++i) phi[i * n + i] = c;
  }
  postlie::Matrix<Rational> m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = v[r] * phi[c];
  return postlie::LinearEndo<Rational>(m);
}

}  // namespace fixtures
