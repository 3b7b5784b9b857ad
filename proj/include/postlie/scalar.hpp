#pragma once

#include <cmath>
#include <cstdio>
#include <concepts>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace postlie {

using Rational = mpq_class;

// Exact rationals or doubles. The mode is fixed per computation by the
// template argument, so exact and float values can never mix.
template <class S>
concept Scalar = std::same_as<S, Rational> || std::same_as<S, double>;

template <Scalar S>
inline constexpr bool is_exact_v = std::same_as<S, Rational>;

struct Tolerance {
  double tau = 1e-10;
};

template <Scalar S>
bool is_zero(const S& value, Tolerance tol = {}) {
  if constexpr (is_exact_v<S>) {
    return sgn(value) == 0;
  } else {
    return std::abs(value) <= tol.tau;
  }
}

template <Scalar S>
double magnitude(const S& value) {
  if constexpr (is_exact_v<S>) {
    return std::abs(value.get_d());
  } else {
    return std::abs(value);
  }
}

template <Scalar S>
S from_rational(const Rational& q) {
  if constexpr (is_exact_v<S>) {
    return q;
  } else {
    return q.get_d();
  }
}

template <Scalar S>
S from_int(long value) {
  return S(value);
}

// p/q in lowest terms. mpq_class(p, q) alone does not canonicalize.
inline Rational make_rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Parses "p", "p/q" or "-p/q". Also accepts decimal literals such as "0.25",
// converted exactly.
Rational parse_rational(std::string_view text);

std::string format_rational(const Rational& q);

template <Scalar S>
std::string format_scalar(const S& value) {
  if constexpr (is_exact_v<S>) {
    return format_rational(value);
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
  }
}

}  // namespace postlie
