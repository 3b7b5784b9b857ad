#include "postlie/suites.hpp"

namespace postlie {

std::vector<std::string> builtin_structure_names() { return {"gl2-split", "sl2-borel", "gl3-split", "so3-identity"}; }

template <Scalar S>
RMatrixContext<S> builtin_structure(const std::string& name) {
  if (name == "gl2-split" || name == "gl3-split") {
    auto s = builtin_upper_lower_split<S>(name == "gl2-split" ? 2 : 3);
    return splitting_r<S>(share(s.algebra), s.plus_indices, s.minus_indices);
  }
  if (name == "sl2-borel") {
    std::vector<std::size_t> plus = {0, 1}, minus = {2};
    return splitting_r<S>(share(builtin_sl2<S>()), plus, minus);
  }
  if (name == "so3-identity") return RMatrixContext<S>::create(share(builtin_so3<S>()), LinearEndo<S>::identity(3));
  throw UnsupportedName(name);
}

template RMatrixContext<Rational> builtin_structure<Rational>(const std::string&);
template RMatrixContext<double> builtin_structure<double>(const std::string&);

Vector<Rational> random_rational_vector(std::mt19937& rng, std::size_t dim, int range) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 3);
  Vector<Rational> v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = make_rational(num(rng), den(rng));
  return v;
}

EnvElement random_env_element(const Envelope& U, std::mt19937& rng, std::size_t max_len, bool with_unit) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::uniform_int_distribution<std::size_t> letter(0, U.algebra().dim() - 1);
  EnvElement e = U.zero();
  if (with_unit) e += U.unit();
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (int k = 0; k < 2; ++k) {
      Word w(len);
      for (auto& l : w) l = letter(rng);
      e += Rational(coeff(rng)) * U.pbw_normalize(w);
    }
  }
  return e;
}

SuiteReport hopf_suite(const Envelope& U, const HopfOps& ops, std::size_t cases, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> len(1, U.order());
  SuiteReport rep;
  for (std::size_t c = 0; c < cases; ++c) {
    auto a = random_env_element(U, rng, len(rng), c % 2 == 0);
    auto b = random_env_element(U, rng, len(rng), c % 3 == 0);
    auto r = U.hopf_check(ops, a, b);
    ++rep.cases;
    if (!r.ok()) {
      if (rep.failures++ == 0) {
        rep.first_failure = "case " + std::to_string(c) + ":" + (r.coassociative ? "" : " coassociativity") +
                            (r.counit ? "" : " counit") + (r.antipode ? "" : " antipode") +
                            (r.multiplicative ? "" : " multiplicativity");
      }
    }
  }
  return rep;
}

}  // namespace postlie
