#include "postlie/rmatrix.hpp"

#include <algorithm>
#include <set>

namespace postlie {

template <Scalar S>
Vector<S> mcybe_defect(const LieAlgebra<S>& L, const LinearEndo<S>& R, const S& theta,
                       const Vector<S>& x, const Vector<S>& y) {
  if (R.dim() != L.dim()) throw DimensionMismatch(L.dim(), R.dim());
  Vector<S> Rx = R(x), Ry = R(y);
  return R(bracket(L, Rx, y) + bracket(L, x, Ry)) - theta * bracket(L, x, y) - bracket(L, Rx, Ry);
}

template <Scalar S>
RMatrixReport is_rmatrix(const LieAlgebra<S>& L, const LinearEndo<S>& R, const S& theta) {
  RMatrixReport rep;
  for (std::size_t i = 0; i < L.dim(); ++i) {
    for (std::size_t j = i + 1; j < L.dim(); ++j) {
      Vector<S> d = mcybe_defect(L, R, theta, L.basis(i), L.basis(j));
      double norm = d.max_abs();
      if (!d.is_zero(L.tolerance())) rep.ok = false;
      if (norm > rep.worst_defect_norm || (!rep.worst_pair && !rep.ok)) {
        rep.worst_defect_norm = norm;
        rep.worst_pair = std::pair{i, j};
      }
    }
  }
  // The diagonal pairs vanish identically; only report a pair on failure.
  if (rep.ok) rep.worst_pair.reset();
  return rep;
}

template <Scalar S>
Vector<S> r_bracket(const LieAlgebra<S>& L, const LinearEndo<S>& R, const Vector<S>& x,
                    const Vector<S>& y) {
  return S(1) / S(2) * (bracket(L, R(x), y) + bracket(L, x, R(y)));
}

template <Scalar S>
Vector<S> r_bracket_unhalved(const LieAlgebra<S>& L, const LinearEndo<S>& R, const Vector<S>& x,
                             const Vector<S>& y) {
  auto [Rp, Rm] = r_plus_minus(R);
  return bracket(L, Rp(x), y) - bracket(L, Rp(y), x) - bracket(L, x, y);
}

template <Scalar S>
std::pair<LinearEndo<S>, LinearEndo<S>> r_plus_minus(const LinearEndo<S>& R) {
  const S half = S(1) / S(2);
  auto id = LinearEndo<S>::identity(R.dim());
  return {half * (R + id), half * (R - id)};
}

template <Scalar S>
LieAlgebra<S> derived_algebra(const LieAlgebra<S>& L, const LinearEndo<S>& R) {
  const std::size_t n = L.dim();
  std::vector<S> tensor(n * n * n, S(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector<S> b = r_bracket(L, R, L.basis(i), L.basis(j));
      for (std::size_t k = 0; k < n; ++k) tensor[(i * n + j) * n + k] = b[k];
    }
  }
  return LieAlgebra<S>::from_tensor(n, L.labels(), std::move(tensor), std::nullopt, L.tolerance());
}

template <Scalar S>
RMatrixContext<S> RMatrixContext<S>::create(AlgebraPtr<S> algebra, LinearEndo<S> R, int theta) {
  if (theta != 0 && theta != 1) throw InvalidInput("theta must be 0 or 1");
  if (R.dim() != algebra->dim()) throw DimensionMismatch(algebra->dim(), R.dim());
  RMatrixReport rep = is_rmatrix(*algebra, R, S(theta));
  if (!rep.ok) {
    throw NotAnRMatrix("mCYBE defect " + std::to_string(rep.worst_defect_norm) + " at basis pair (" +
                       std::to_string(rep.worst_pair->first) + "," +
                       std::to_string(rep.worst_pair->second) + ")");
  }
  RMatrixContext ctx;
  ctx.derived_ = share(derived_algebra(*algebra, R));
  ctx.algebra_ = std::move(algebra);
  std::tie(ctx.r_plus_, ctx.r_minus_) = r_plus_minus(R);
  ctx.R_ = std::move(R);
  ctx.theta_ = theta;
  return ctx;
}

template <Scalar S>
PmIdentityReport check_pm_identities(const LieAlgebra<S>& L, const LinearEndo<S>& R) {
  PmIdentityReport rep;
  auto [Rp, Rm] = r_plus_minus(R);
  const Tolerance tol = L.tolerance();
  for (std::size_t i = 0; i < L.dim(); ++i) {
    for (std::size_t j = 0; j < L.dim(); ++j) {
      Vector<S> x = L.basis(i), y = L.basis(j);
      Vector<S> xy = bracket(L, x, y);
      Vector<S> rb = r_bracket(L, R, x, y);
      for (auto [name, Rs, sgn] : {std::tuple{"plus", &Rp, S(-1)}, std::tuple{"minus", &Rm, S(1)}}) {
        const LinearEndo<S>& T = *Rs;
        Vector<S> Tx = T(x), Ty = T(y);
        Vector<S> lhs = bracket(L, Tx, Ty);
        Vector<S> rhs = T(bracket(L, Tx, y) + bracket(L, x, Ty) + sgn * xy);
        Vector<S> d1 = lhs - rhs;
        if (!d1.is_zero(tol)) {
          rep.ok = false;
          rep.failures.push_back({std::string("R_") + name + " Yang-Baxter form", i, j, d1.max_abs()});
        }
        Vector<S> d2 = T(rb) - lhs;
        if (!d2.is_zero(tol)) {
          rep.ok = false;
          rep.failures.push_back({std::string("R_") + name + " morphism g_R -> g", i, j, d2.max_abs()});
        }
      }
    }
  }
  return rep;
}

template <Scalar S>
Vector<S> post_product(const RMatrixContext<S>& ctx, Sign sign, const Vector<S>& x, const Vector<S>& y) {
  return bracket(ctx.algebra(), ctx.r_sign(sign)(x), y);
}

namespace {

template <Scalar S>
void check_closed(const LieAlgebra<S>& L, std::span<const std::size_t> indices, const std::string& side) {
  std::set<std::size_t> in(indices.begin(), indices.end());
  for (std::size_t a : indices) {
    for (std::size_t b : indices) {
      for (std::size_t k = 0; k < L.dim(); ++k) {
        if (!in.count(k) && !is_zero(L.c(a, b, k), L.tolerance())) throw NotASubalgebra(side, a, b);
      }
    }
  }
}

}  // namespace

template <Scalar S>
RMatrixContext<S> splitting_r(AlgebraPtr<S> algebra, std::span<const std::size_t> plus,
                              std::span<const std::size_t> minus) {
  const std::size_t n = algebra->dim();
  std::vector<int> owner(n, 0);
  for (std::size_t i : plus) {
    if (i >= n) throw NotADirectSum("index " + std::to_string(i) + " out of range");
    if (owner[i]) throw NotADirectSum("index " + std::to_string(i) + " repeated");
    owner[i] = 1;
  }
  for (std::size_t i : minus) {
    if (i >= n) throw NotADirectSum("index " + std::to_string(i) + " out of range");
    if (owner[i]) throw NotADirectSum("index " + std::to_string(i) + " appears twice");
    owner[i] = 2;
  }
  if (auto it = std::find(owner.begin(), owner.end(), 0); it != owner.end()) {
    throw NotADirectSum("index " + std::to_string(it - owner.begin()) + " not covered");
  }
  check_closed(*algebra, plus, "plus");
  check_closed(*algebra, minus, "minus");
  auto R = index_projection<S>(n, plus) - index_projection<S>(n, minus);
  return RMatrixContext<S>::create(std::move(algebra), std::move(R), 1);
}

template <Scalar S>
SubalgebraReport subalgebra_analysis(const RMatrixContext<S>& ctx) {
  const LieAlgebra<S>& L = ctx.algebra();
  const Tolerance tol = L.tolerance();
  SubalgebraReport rep;
  auto im_plus = image_basis(ctx.r_plus().matrix(), tol);
  auto im_minus = image_basis(ctx.r_minus().matrix(), tol);
  auto ker_minus = kernel_basis(ctx.r_minus().matrix(), tol);  // k+
  auto ker_plus = kernel_basis(ctx.r_plus().matrix(), tol);    // k-
  rep.dim_im_plus = im_plus.size();
  rep.dim_im_minus = im_minus.size();
  rep.dim_ker_minus = ker_minus.size();
  rep.dim_ker_plus = ker_plus.size();

  auto closed = [&](const std::vector<Vector<S>>& span) {
    for (const auto& a : span)
      for (const auto& b : span)
        if (!in_span<S>(span, bracket(L, a, b), tol)) return false;
    return true;
  };
  rep.images_closed = closed(im_plus) && closed(im_minus);

  // k± ⊆ g± and [g±, k±] ⊆ k±
  auto ideal = [&](const std::vector<Vector<S>>& big, const std::vector<Vector<S>>& small) {
    for (const auto& k : small)
      if (!in_span<S>(big, k, tol)) return false;
    for (const auto& g : big)
      for (const auto& k : small)
        if (!in_span<S>(small, bracket(L, g, k), tol)) return false;
    return true;
  };
  rep.ideals_ok = ideal(im_plus, ker_minus) && ideal(im_minus, ker_plus);
  return rep;
}

#define POSTLIE_INSTANTIATE(S)                                                                              \
  template Vector<S> mcybe_defect(const LieAlgebra<S>&, const LinearEndo<S>&, const S&, const Vector<S>&,  \
                                  const Vector<S>&);                                                       \
  template RMatrixReport is_rmatrix(const LieAlgebra<S>&, const LinearEndo<S>&, const S&);                 \
  template Vector<S> r_bracket(const LieAlgebra<S>&, const LinearEndo<S>&, const Vector<S>&,               \
                               const Vector<S>&);                                                          \
  template Vector<S> r_bracket_unhalved(const LieAlgebra<S>&, const LinearEndo<S>&, const Vector<S>&,      \
                                        const Vector<S>&);                                                 \
  template std::pair<LinearEndo<S>, LinearEndo<S>> r_plus_minus(const LinearEndo<S>&);                     \
  template LieAlgebra<S> derived_algebra(const LieAlgebra<S>&, const LinearEndo<S>&);                      \
  template class RMatrixContext<S>;                                                                        \
  template PmIdentityReport check_pm_identities(const LieAlgebra<S>&, const LinearEndo<S>&);               \
  template Vector<S> post_product(const RMatrixContext<S>&, Sign, const Vector<S>&, const Vector<S>&);     \
  template RMatrixContext<S> splitting_r(AlgebraPtr<S>, std::span<const std::size_t>,                      \
                                         std::span<const std::size_t>);                                    \
  template SubalgebraReport subalgebra_analysis(const RMatrixContext<S>&);

POSTLIE_INSTANTIATE(Rational)
POSTLIE_INSTANTIATE(double)
#undef POSTLIE_INSTANTIATE

}  // namespace postlie
