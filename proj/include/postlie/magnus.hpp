#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "postlie/env.hpp"
#include "postlie/liealg.hpp"
#include "postlie/postlie.hpp"
#include "postlie/rmatrix.hpp"

namespace postlie {

// A truncated t-series Σ_{m=0..N} c_m t^m with coefficients in g. For χ and
// BCH the constant term is zero.
template <Scalar S>
class GradedLieElement {
 public:
  GradedLieElement(AlgebraPtr<S> algebra, unsigned order)
      : algebra_(std::move(algebra)), coeffs_(order + 1, Vector<S>(algebra_->dim())) {}

  const LieAlgebra<S>& algebra() const { return *algebra_; }
  const AlgebraPtr<S>& algebra_ptr() const { return algebra_; }
  unsigned order() const { return static_cast<unsigned>(coeffs_.size()) - 1; }
  const std::vector<Vector<S>>& coeffs() const { return coeffs_; }
  const Vector<S>& coeff(unsigned m) const { return coeffs_.at(m); }
  Vector<S>& coeff(unsigned m) { return coeffs_.at(m); }

  // Σ c_m t^m
  Vector<S> evaluate(const S& t) const;
  // Formal d/dt; the result has order N-1.
  GradedLieElement derivative() const;

  friend bool operator==(const GradedLieElement& a, const GradedLieElement& b) { return a.coeffs_ == b.coeffs_; }

 private:
  AlgebraPtr<S> algebra_;
  std::vector<Vector<S>> coeffs_;
};

// b_0 .. b_n with b_1 = -1/2.
std::vector<Rational> bernoulli_numbers(unsigned n);

// log(exp(xt) exp(yt)) in U(g) truncated at t^N, each graded piece checked
// to be primitive and of PBW length one before it is read off.
GradedLieElement<Rational> bch(const AlgebraPtr<Rational>& algebra, const Vector<Rational>& x,
                               const Vector<Rational>& y, unsigned N);

// χ(xt) from χ_n = xⁿ/n! - Σ_{k=2..n} 1/k! Σ_{p₁+…+p_k=n} χ_{p₁}∗⋯∗χ_{p_k}.
// The product must be a right-handed post-Lie product on its algebra
// (x ▷ y = [R₋x, y] for an r-matrix). Throws CollapseFailure when some χ_n
// has PBW words of length other than one.
GradedLieElement<Rational> postlie_magnus(const Vector<Rational>& x, const BilinearProduct<Rational>& product,
                                          unsigned N);

// Reads the g-vector off the order-n term, throwing CollapseFailure if any
// word has length other than one.
Vector<Rational> collapse_to_vector(const Envelope& U, const WordMap& term, unsigned n);

struct IdentityReport {
  bool ok = true;
  // Lowest order at which the two sides differ, or -1.
  int first_bad_order = -1;
  std::size_t mismatched_terms = 0;
};

// exp(xt) == exp∗(χ(xt)) through t^N.
IdentityReport verify_grouplike_identity(const Vector<Rational>& x, const BilinearProduct<Rational>& product,
                                         unsigned N);

// χ = Σ_k b_k/k! ℓ_χ^k(x) for a pre-Lie product on an abelian algebra.
template <Scalar S>
GradedLieElement<S> prelie_magnus(const Vector<S>& x, const BilinearProduct<S>& product, unsigned N);

// The same χ computed entirely in g by integrating
//   χ̇ = dexp∗⁻¹_{-χ}(Σ_k (-1)^k/k! ℓ_χ^k(x))
// order by order. Works in both scalar modes.
template <Scalar S>
GradedLieElement<S> postlie_magnus_lie(const Vector<S>& x, const BilinearProduct<S>& product, unsigned N);

// (χ₊, χ₋) = (R₊χ, -R₋χ) order by order.
template <Scalar S>
std::pair<GradedLieElement<S>, GradedLieElement<S>> chi_pm(const GradedLieElement<S>& chi,
                                                           const RMatrixContext<S>& ctx);

// Σ 1/(n+1)! ad_β^n(v) and Σ b_n/n! ad_β^n(v), with ad taken in `gbar`.
template <Scalar S>
GradedLieElement<S> dexp_star(const GradedLieElement<S>& beta, const GradedLieElement<S>& v,
                              const LieAlgebra<S>& gbar);
template <Scalar S>
GradedLieElement<S> dexp_star_inv(const GradedLieElement<S>& beta, const GradedLieElement<S>& v,
                                  const LieAlgebra<S>& gbar);

// v placed at t^0.
template <Scalar S>
GradedLieElement<S> constant_series(AlgebraPtr<S> algebra, const Vector<S>& v, unsigned N);

// d/dt χ(xt) == dexp∗⁻¹_{-χ(xt)}(exp∗(-χ(xt)) ▷ x) through t^(N-1), with
// exp∗(-χ) ▷ x computed in the enveloping algebra.
IdentityReport verify_chi_ode(const Vector<Rational>& x, const BilinearProduct<Rational>& product, unsigned N);

// The g-bracket x▷y - y▷x + [x,y] of a product.
template <Scalar S>
Vector<S> companion_bracket(const BilinearProduct<S>& product, const Vector<S>& x, const Vector<S>& y);

// One line per order: "t^m: (c_1, ..., c_d)".
template <Scalar S>
std::string render(const GradedLieElement<S>& e);

}  // namespace postlie
