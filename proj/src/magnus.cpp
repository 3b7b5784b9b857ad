#include "postlie/magnus.hpp"

#include <functional>

#include "postlie/env.hpp"

namespace postlie {

namespace {

template <Scalar S>
using Series = std::vector<Vector<S>>;

template <Scalar S>
using Bilinear = std::function<Vector<S>(const Vector<S>&, const Vector<S>&)>;

// Truncated product of two series under a bilinear map.
template <Scalar S>
Series<S> series_apply(const Bilinear<S>& f, const Series<S>& a, const Series<S>& b, std::size_t dim) {
  const std::size_t N = a.size() - 1;
  Series<S> out(N + 1, Vector<S>(dim));
  for (std::size_t i = 0; i <= N; ++i) {
    if (a[i].is_zero(Tolerance{0.0})) continue;
    for (std::size_t j = 0; i + j <= N; ++j) {
      if (b[j].is_zero(Tolerance{0.0})) continue;
      out[i + j] += f(a[i], b[j]);
    }
  }
  return out;
}

template <Scalar S>
void series_add_scaled(Series<S>& acc, const Series<S>& x, const S& c) {
  for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += c * x[m];
}

template <Scalar S>
S factorial(unsigned n) {
  S f(1);
  for (unsigned i = 2; i <= n; ++i) f *= S(i);
  return f;
}

// Σ_n w_n ad_β^n(v) with β having no constant term.
template <Scalar S>
Series<S> ad_series(const Bilinear<S>& br, const Series<S>& beta, const Series<S>& v, std::size_t dim,
                    const std::function<S(unsigned)>& weight) {
  if (!beta[0].is_zero(Tolerance{0.0})) throw InvalidInput("dexp expects a series without constant term");
  const unsigned N = static_cast<unsigned>(v.size()) - 1;
  Series<S> out = v;
  for (auto& c : out) c *= weight(0);
  Series<S> term = v;
  for (unsigned n = 1; n <= N; ++n) {
    term = series_apply(br, beta, term, dim);
    series_add_scaled<S>(out, term, weight(n));
  }
  return out;
}

template <Scalar S>
Series<S> dexp_inv_series(const Bilinear<S>& br, const Series<S>& beta, const Series<S>& v, std::size_t dim) {
  const unsigned N = static_cast<unsigned>(v.size()) - 1;
  std::vector<Rational> b = bernoulli_numbers(N);
  return ad_series<S>(br, beta, v, dim,
                      [&](unsigned n) -> S { return from_rational<S>(b[n]) / factorial<S>(n); });
}

template <Scalar S>
GradedLieElement<S> to_element(AlgebraPtr<S> algebra, const Series<S>& s) {
  GradedLieElement<S> e(std::move(algebra), static_cast<unsigned>(s.size()) - 1);
  for (unsigned m = 0; m < s.size(); ++m) e.coeff(m) = s[m];
  return e;
}

template <Scalar S>
void check_same_order(const GradedLieElement<S>& a, const GradedLieElement<S>& b) {
  if (a.order() != b.order()) throw OrderMismatch(a.order(), b.order());
  if (a.algebra().dim() != b.algebra().dim()) throw DimensionMismatch(a.algebra().dim(), b.algebra().dim());
}

}  // namespace

template <Scalar S>
Vector<S> GradedLieElement<S>::evaluate(const S& t) const {
  Vector<S> out(algebra_->dim());
  S p(1);
  for (const auto& c : coeffs_) {
    out += p * c;
    p *= t;
  }
  return out;
}

template <Scalar S>
GradedLieElement<S> GradedLieElement<S>::derivative() const {
  const unsigned N = order();
  GradedLieElement d(algebra_, N == 0 ? 0 : N - 1);
  for (unsigned m = 0; m + 1 <= N; ++m) d.coeff(m) = S(m + 1) * coeffs_[m + 1];
  return d;
}

std::vector<Rational> bernoulli_numbers(unsigned n) {
  // Akiyama–Tanigawa yields the b_1 = +1/2 convention.
  std::vector<Rational> a(n + 1), b(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (unsigned j = m; j >= 1; --j) a[j - 1] = Rational(j) * (a[j - 1] - a[j]);
    b[m] = a[0];
  }
  if (n >= 1) b[1] = -b[1];
  return b;
}

template <Scalar S>
Vector<S> companion_bracket(const BilinearProduct<S>& product, const Vector<S>& x, const Vector<S>& y) {
  return product(x, y) - product(y, x) + bracket(product.algebra(), x, y);
}

GradedLieElement<Rational> bch(const AlgebraPtr<Rational>& algebra, const Vector<Rational>& x,
                               const Vector<Rational>& y, unsigned N) {
  Envelope U(algebra, N);
  EnvElement z = U.log(U.mul(U.exp(U.from_vector(x)), U.exp(U.from_vector(y))));
  GradedLieElement<Rational> out(algebra, N);
  for (unsigned d = 1; d <= N; ++d) {
    EnvElement part = z.degree_part(d);
    if (!U.is_primitive(part)) throw PrimitivityFailure(d);
    for (const auto& [w, c] : part.part(d))
      if (w.size() != 1) throw PrimitivityFailure(d);
    out.coeff(d) = U.length_one_parts(part)[d];
  }
  return out;
}

Vector<Rational> collapse_to_vector(const Envelope& U, const WordMap& term, unsigned n) {
  Vector<Rational> v(U.algebra().dim());
  std::string residual;
  for (const auto& [w, c] : term) {
    if (w.size() == 1) {
      v[w[0]] = c;
      continue;
    }
    if (!residual.empty()) residual += " + ";
    residual += format_rational(c) + "·[";
    for (std::size_t i = 0; i < w.size(); ++i) residual += (i ? " " : "") + U.algebra().label(w[i]);
    residual += "]";
  }
  if (!residual.empty()) throw CollapseFailure(n, residual);
  return v;
}

namespace {

// The χ_n as maps of length-one words, with the collapse check applied.
std::vector<WordMap> chi_word_maps(const PostLieEnvelope& pe, const Vector<Rational>& x, unsigned N) {
  const Envelope& U = pe.g();
  std::vector<WordMap> chi(N + 1);
  if (N == 0) return chi;
  chi[1] = U.vector_map(x);
  // star[k][m]: Σ over compositions of m into k parts of χ_{p₁}∗⋯∗χ_{p_k}
  std::vector<std::vector<WordMap>> star(N + 1, std::vector<WordMap>(N + 1));
  star[1][1] = chi[1];
  WordMap xpow = chi[1];
  Rational fact(1);
  for (unsigned n = 2; n <= N; ++n) {
    xpow = U.mul_maps(xpow, chi[1]);
    fact *= n;
    for (unsigned k = 2; k <= n; ++k) {
      WordMap acc;
      for (unsigned p = 1; p + (k - 1) <= n; ++p) {
        if (star[k - 1][n - p].empty() || chi[p].empty()) continue;
        add_scaled(acc, pe.star_maps(star[k - 1][n - p], chi[p]), Rational(1));
      }
      star[k][n] = std::move(acc);
    }
    WordMap c;
    add_scaled(c, xpow, Rational(1) / fact);
    Rational kfact(1);
    for (unsigned k = 2; k <= n; ++k) {
      kfact *= k;
      add_scaled(c, star[k][n], Rational(-1) / kfact);
    }
    collapse_to_vector(U, c, n);
    chi[n] = std::move(c);
    star[1][n] = chi[n];
  }
  return chi;
}

}  // namespace

GradedLieElement<Rational> postlie_magnus(const Vector<Rational>& x, const BilinearProduct<Rational>& product,
                                          unsigned N) {
  product.algebra().check_conforms(x);
  PostLieEnvelope pe(product.algebra_ptr(), product, N, false);
  auto chi = chi_word_maps(pe, x, N);
  GradedLieElement<Rational> out(product.algebra_ptr(), N);
  for (unsigned m = 1; m <= N; ++m) out.coeff(m) = collapse_to_vector(pe.g(), chi[m], m);
  return out;
}

namespace {

EnvElement chi_element(const Envelope& U, const GradedLieElement<Rational>& chi) {
  EnvElement X = U.zero();
  for (unsigned m = 1; m <= chi.order(); ++m) X += U.at_degree(U.vector_map(chi.coeff(m)), m);
  return X;
}

}  // namespace

IdentityReport verify_grouplike_identity(const Vector<Rational>& x, const BilinearProduct<Rational>& product,
                                         unsigned N) {
  PostLieEnvelope pe(product.algebra_ptr(), product, N, false);
  const Envelope& U = pe.g();
  auto chi = postlie_magnus(x, product, N);
  EnvElement diff = U.exp(U.from_vector(x)) - pe.exp_star(chi_element(U, chi));
  IdentityReport rep;
  rep.mismatched_terms = diff.term_count();
  for (unsigned d = 0; d <= N; ++d) {
    if (!diff.part(d).empty()) {
      rep.ok = false;
      rep.first_bad_order = static_cast<int>(d);
      break;
    }
  }
  return rep;
}

template <Scalar S>
GradedLieElement<S> prelie_magnus(const Vector<S>& x, const BilinearProduct<S>& product, unsigned N) {
  product.algebra().check_conforms(x);
  if (!product.algebra().is_abelian()) throw NotAbelian();
  if (!check_prelie(product).ok) throw NotPreLie();
  const std::size_t dim = x.size();
  std::vector<Rational> b = bernoulli_numbers(N);
  Bilinear<S> tri = [&](const Vector<S>& a, const Vector<S>& c) { return product(a, c); };
  Series<S> chi(N + 1, Vector<S>(dim)), X(N + 1, Vector<S>(dim));
  if (N >= 1) chi[1] = X[1] = x;
  for (unsigned n = 2; n <= N; ++n) {
    Vector<S> c(dim);
    Series<S> term = X;
    for (unsigned k = 1; k < n; ++k) {
      term = series_apply(tri, chi, term, dim);
      c += (from_rational<S>(b[k]) / factorial<S>(k)) * term[n];
    }
    chi[n] = c;
  }
  return to_element(product.algebra_ptr(), chi);
}

template <Scalar S>
GradedLieElement<S> postlie_magnus_lie(const Vector<S>& x, const BilinearProduct<S>& product, unsigned N) {
  product.algebra().check_conforms(x);
  const std::size_t dim = x.size();
  Bilinear<S> tri = [&](const Vector<S>& a, const Vector<S>& c) { return product(a, c); };
  Bilinear<S> br = [&](const Vector<S>& a, const Vector<S>& c) { return companion_bracket(product, a, c); };
  Series<S> chi(N + 1, Vector<S>(dim));
  if (N >= 1) chi[1] = x;
  for (unsigned m = 1; m < N; ++m) {
    // the t^m coefficient of the right side only involves χ_1..χ_m
    Series<S> W(N + 1, Vector<S>(dim)), term(N + 1, Vector<S>(dim));
    W[0] = term[0] = x;
    for (unsigned k = 1; k <= m; ++k) {
      term = series_apply(tri, chi, term, dim);
      series_add_scaled<S>(W, term, S(k % 2 ? -1 : 1) / factorial<S>(k));
    }
    Series<S> minus_chi = chi;
    for (auto& c : minus_chi) c *= S(-1);
    Series<S> rhs = dexp_inv_series(br, minus_chi, W, dim);
    chi[m + 1] = (S(1) / S(m + 1)) * rhs[m];
  }
  return to_element(product.algebra_ptr(), chi);
}

template <Scalar S>
std::pair<GradedLieElement<S>, GradedLieElement<S>> chi_pm(const GradedLieElement<S>& chi,
                                                           const RMatrixContext<S>& ctx) {
  if (chi.algebra().dim() != ctx.algebra().dim()) throw DimensionMismatch(ctx.algebra().dim(), chi.algebra().dim());
  GradedLieElement<S> plus(chi.algebra_ptr(), chi.order()), minus(chi.algebra_ptr(), chi.order());
  for (unsigned m = 0; m <= chi.order(); ++m) {
    plus.coeff(m) = ctx.r_plus()(chi.coeff(m));
    minus.coeff(m) = -ctx.r_minus()(chi.coeff(m));
  }
  return {plus, minus};
}

template <Scalar S>
GradedLieElement<S> dexp_star(const GradedLieElement<S>& beta, const GradedLieElement<S>& v,
                              const LieAlgebra<S>& gbar) {
  check_same_order(beta, v);
  const std::size_t dim = gbar.dim();
  if (beta.algebra().dim() != dim) throw DimensionMismatch(dim, beta.algebra().dim());
  Bilinear<S> br = [&](const Vector<S>& a, const Vector<S>& c) { return bracket(gbar, a, c); };
  auto s = ad_series<S>(br, beta.coeffs(), v.coeffs(), dim, [](unsigned n) -> S { return S(1) / factorial<S>(n + 1); });
  return to_element(v.algebra_ptr(), s);
}

template <Scalar S>
GradedLieElement<S> dexp_star_inv(const GradedLieElement<S>& beta, const GradedLieElement<S>& v,
                                  const LieAlgebra<S>& gbar) {
  check_same_order(beta, v);
  const std::size_t dim = gbar.dim();
  if (beta.algebra().dim() != dim) throw DimensionMismatch(dim, beta.algebra().dim());
  Bilinear<S> br = [&](const Vector<S>& a, const Vector<S>& c) { return bracket(gbar, a, c); };
  return to_element(v.algebra_ptr(), dexp_inv_series(br, beta.coeffs(), v.coeffs(), dim));
}

template <Scalar S>
GradedLieElement<S> constant_series(AlgebraPtr<S> algebra, const Vector<S>& v, unsigned N) {
  algebra->check_conforms(v);
  GradedLieElement<S> e(std::move(algebra), N);
  e.coeff(0) = v;
  return e;
}

IdentityReport verify_chi_ode(const Vector<Rational>& x, const BilinearProduct<Rational>& product, unsigned N) {
  IdentityReport rep;
  if (N == 0) return rep;
  PostLieEnvelope pe(product.algebra_ptr(), product, N, false);
  const Envelope& U = pe.g();
  auto chi = postlie_magnus(x, product, N);
  EnvElement T = pe.triangle(pe.exp_star(-chi_element(U, chi)), U.from_vector(x));

  // T holds exp∗(-χ(xt)) ▷ x shifted up by one degree.
  GradedLieElement<Rational> W(product.algebra_ptr(), N - 1), beta(product.algebra_ptr(), N - 1);
  for (unsigned d = 1; d <= N; ++d) {
    for (const auto& [w, c] : T.part(d)) {
      if (w.size() != 1) {
        rep.ok = false;
        rep.first_bad_order = static_cast<int>(d - 1);
        ++rep.mismatched_terms;
      }
    }
    W.coeff(d - 1) = U.length_one_parts(T)[d];
  }
  for (unsigned m = 1; m < N; ++m) beta.coeff(m) = -chi.coeff(m);
  auto rhs = dexp_star_inv(beta, W, pe.gbar_algebra());
  auto lhs = chi.derivative();
  for (unsigned m = 0; m < N; ++m) {
    if (lhs.coeff(m) != rhs.coeff(m)) {
      if (rep.ok || rep.first_bad_order > static_cast<int>(m)) rep.first_bad_order = static_cast<int>(m);
      rep.ok = false;
      ++rep.mismatched_terms;
    }
  }
  return rep;
}

template <Scalar S>
std::string render(const GradedLieElement<S>& e) {
  std::string out;
  for (unsigned m = 0; m <= e.order(); ++m) {
    if (m == 0 && e.coeff(0).is_zero(Tolerance{0.0})) continue;
    out += "t^" + std::to_string(m) + ": " + to_string(e.coeff(m)) + "\n";
  }
  return out;
}

#define MAGNUS_INSTANTIATE(S)                                                                                  \
  template class GradedLieElement<S>;                                                                         \
  template Vector<S> companion_bracket(const BilinearProduct<S>&, const Vector<S>&, const Vector<S>&);        \
  template GradedLieElement<S> prelie_magnus(const Vector<S>&, const BilinearProduct<S>&, unsigned);          \
  template GradedLieElement<S> postlie_magnus_lie(const Vector<S>&, const BilinearProduct<S>&, unsigned);     \
  template std::pair<GradedLieElement<S>, GradedLieElement<S>> chi_pm(const GradedLieElement<S>&,             \
                                                                      const RMatrixContext<S>&);              \
  template GradedLieElement<S> dexp_star(const GradedLieElement<S>&, const GradedLieElement<S>&,              \
                                         const LieAlgebra<S>&);                                               \
  template GradedLieElement<S> dexp_star_inv(const GradedLieElement<S>&, const GradedLieElement<S>&,          \
                                             const LieAlgebra<S>&);                                           \
  template GradedLieElement<S> constant_series(AlgebraPtr<S>, const Vector<S>&, unsigned);                    \
  template std::string render(const GradedLieElement<S>&);

MAGNUS_INSTANTIATE(Rational)
MAGNUS_INSTANTIATE(double)
#undef MAGNUS_INSTANTIATE

}  // namespace postlie
