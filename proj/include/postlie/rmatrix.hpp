#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "postlie/liealg.hpp"

namespace postlie {

// R([Rx,y] + [x,Ry]) - theta [x,y] - [Rx,Ry]
template <Scalar S>
Vector<S> mcybe_defect(const LieAlgebra<S>& L, const LinearEndo<S>& R, const S& theta,
                       const Vector<S>& x, const Vector<S>& y);

struct RMatrixReport {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
  double worst_defect_norm = 0;
};

template <Scalar S>
RMatrixReport is_rmatrix(const LieAlgebra<S>& L, const LinearEndo<S>& R, const S& theta);

// 1/2 ([Rx,y] + [x,Ry])
template <Scalar S>
Vector<S> r_bracket(const LieAlgebra<S>& L, const LinearEndo<S>& R, const Vector<S>& x,
                    const Vector<S>& y);

// [R+ x, y] - [R+ y, x] - [x,y] with R+ = (R + id)/2. Agrees with r_bracket
// identically; kept because both forms are in common use.
template <Scalar S>
Vector<S> r_bracket_unhalved(const LieAlgebra<S>& L, const LinearEndo<S>& R, const Vector<S>& x,
                             const Vector<S>& y);

enum class Sign { plus, minus };

// A validated solution of the (modified) classical Yang-Baxter equation.
// theta is 1 (mCYBE) or 0 (CYBE).
template <Scalar S>
class RMatrixContext {
 public:
  static RMatrixContext create(AlgebraPtr<S> algebra, LinearEndo<S> R, int theta = 1);

  const LieAlgebra<S>& algebra() const { return *algebra_; }
  const AlgebraPtr<S>& algebra_ptr() const { return algebra_; }
  const LinearEndo<S>& R() const { return R_; }
  int theta() const { return theta_; }
  // g_R: the same space with the bracket r_bracket.
  const LieAlgebra<S>& derived() const { return *derived_; }
  const AlgebraPtr<S>& derived_ptr() const { return derived_; }

  const LinearEndo<S>& r_plus() const { return r_plus_; }
  const LinearEndo<S>& r_minus() const { return r_minus_; }
  const LinearEndo<S>& r_sign(Sign s) const { return s == Sign::plus ? r_plus_ : r_minus_; }

 private:
  RMatrixContext() = default;
  AlgebraPtr<S> algebra_;
  LinearEndo<S> R_;
  int theta_ = 1;
  AlgebraPtr<S> derived_;
  LinearEndo<S> r_plus_, r_minus_;
};

template <Scalar S>
LieAlgebra<S> derived_algebra(const LieAlgebra<S>& L, const LinearEndo<S>& R);

template <Scalar S>
const LieAlgebra<S>& derived_algebra(const RMatrixContext<S>& ctx) {
  return ctx.derived();
}

// R± = (R ± id) / 2
template <Scalar S>
std::pair<LinearEndo<S>, LinearEndo<S>> r_plus_minus(const LinearEndo<S>& R);

struct IdentityFailure {
  std::string identity;
  std::size_t i, j;
  double defect;
};

struct PmIdentityReport {
  bool ok = true;
  std::vector<IdentityFailure> failures;
};

// [R±x, R±y] = R±([R±x,y] + [x,R±y] ∓ [x,y]) and R±[x,y]_R = [R±x, R±y] on
// all basis pairs. Takes a raw R so that failing candidates can be reported.
template <Scalar S>
PmIdentityReport check_pm_identities(const LieAlgebra<S>& L, const LinearEndo<S>& R);

template <Scalar S>
PmIdentityReport check_pm_identities(const RMatrixContext<S>& ctx) {
  return check_pm_identities(ctx.algebra(), ctx.R());
}

// x ▷± y = [R± x, y]
template <Scalar S>
Vector<S> post_product(const RMatrixContext<S>& ctx, Sign sign, const Vector<S>& x, const Vector<S>& y);

// R = π+ - π- for a decomposition of the basis into two subalgebras.
template <Scalar S>
RMatrixContext<S> splitting_r(AlgebraPtr<S> algebra, std::span<const std::size_t> plus,
                              std::span<const std::size_t> minus);

struct SubalgebraReport {
  std::size_t dim_im_plus = 0;
  std::size_t dim_im_minus = 0;
  std::size_t dim_ker_minus = 0;  // k+ = ker R-
  std::size_t dim_ker_plus = 0;   // k- = ker R+
  bool images_closed = true;
  bool ideals_ok = true;
};

template <Scalar S>
SubalgebraReport subalgebra_analysis(const RMatrixContext<S>& ctx);

}  // namespace postlie
