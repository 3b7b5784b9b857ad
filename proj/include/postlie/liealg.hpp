#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "postlie/linalg.hpp"
#include "postlie/scalar.hpp"

namespace postlie {

// One sparse structure-constant entry: [x_i, x_j] has coefficient `value`
// on x_k. The (j, i) entry is filled in by antisymmetry.
template <Scalar S>
struct StructureEntry {
  std::size_t i, j, k;
  S value;
};

// Finite-dimensional Lie algebra given by structure constants in a fixed,
// ordered basis. Immutable once constructed; construction validates
// antisymmetry, the Jacobi identity and (if present) the realization.
template <Scalar S>
class LieAlgebra {
 public:
  static LieAlgebra create(std::size_t dim, std::vector<std::string> labels,
                           std::span<const StructureEntry<S>> entries,
                           std::optional<std::vector<Matrix<S>>> realization = std::nullopt,
                           Tolerance tol = {});

  // Dense tensor, indexed (i * dim + j) * dim + k.
  static LieAlgebra from_tensor(std::size_t dim, std::vector<std::string> labels,
                                std::vector<S> tensor,
                                std::optional<std::vector<Matrix<S>>> realization = std::nullopt,
                                Tolerance tol = {});

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  Tolerance tolerance() const { return tol_; }

  const S& c(std::size_t i, std::size_t j, std::size_t k) const {
    return tensor_[(i * dim_ + j) * dim_ + k];
  }
  const std::vector<S>& tensor() const { return tensor_; }

  bool has_realization() const { return realization_.has_value(); }
  std::size_t realization_size() const;
  const Matrix<S>& realization(std::size_t i) const;
  const std::vector<Matrix<S>>& realization_matrices() const;
  // rho(x) = sum_i x_i rho(x_i).
  Matrix<S> represent(const Vector<S>& x) const;

  Vector<S> basis(std::size_t i) const { return Vector<S>::unit(dim_, i); }
  Vector<S> zero() const { return Vector<S>(dim_); }
  bool is_abelian() const;

  void check_conforms(const Vector<S>& x) const {
    if (x.size() != dim_) throw DimensionMismatch(dim_, x.size());
  }

  // Jacobi sum for the basis triple (i,j,k), as a vector over l.
  Vector<S> jacobi_defect(std::size_t i, std::size_t j, std::size_t k) const;
  // Largest |defect| over all basis triples.
  double max_jacobi_defect() const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.dim_ == b.dim_ && a.tensor_ == b.tensor_;
  }

 private:
  LieAlgebra() = default;
  void validate() const;

  std::size_t dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<S> tensor_;
  std::optional<std::vector<Matrix<S>>> realization_;
  Tolerance tol_;
};

template <Scalar S>
using AlgebraPtr = std::shared_ptr<const LieAlgebra<S>>;

template <Scalar S>
AlgebraPtr<S> share(LieAlgebra<S> algebra) {
  return std::make_shared<const LieAlgebra<S>>(std::move(algebra));
}

template <Scalar S>
Vector<S> bracket(const LieAlgebra<S>& L, const Vector<S>& x, const Vector<S>& y);

template <Scalar S>
LinearEndo<S> ad(const LieAlgebra<S>& L, const Vector<S>& x);

// tr(rho(x) rho(y)) in the attached realization.
template <Scalar S>
S trace_form(const LieAlgebra<S>& L, const Vector<S>& x, const Vector<S>& y);

// The same algebra with its adjoint representation as realization.
template <Scalar S>
LieAlgebra<S> with_adjoint_realization(const LieAlgebra<S>& L);

// Recover coordinates from a matrix in the span of the realization.
template <Scalar S>
Vector<S> coordinates_of(const LieAlgebra<S>& L, const Matrix<S>& m);

// Converts an exact algebra to double precision.
LieAlgebra<double> to_float(const LieAlgebra<Rational>& L, Tolerance tol = {});
Vector<double> to_float(const Vector<Rational>& v);
LinearEndo<double> to_float(const LinearEndo<Rational>& m);

// gl(n) in the elementary-matrix basis E11, E12, ..., Enn (row-major).
template <Scalar S>
LieAlgebra<S> builtin_gl(std::size_t n);

// sl(2) in the basis (e, h, f).
template <Scalar S>
LieAlgebra<S> builtin_sl2();

// so(3) with [x0,x1]=x2 and cyclic, realized by 3x3 antisymmetric matrices.
template <Scalar S>
LieAlgebra<S> builtin_so3();

// gl(n) ordered so that the upper triangle (with diagonal) comes first,
// followed by the strictly lower triangle.
template <Scalar S>
struct SplitAlgebra {
  LieAlgebra<S> algebra;
  std::vector<std::size_t> plus_indices;
  std::vector<std::size_t> minus_indices;
  LinearEndo<S> pi_plus;
  LinearEndo<S> pi_minus;
};

template <Scalar S>
SplitAlgebra<S> builtin_upper_lower_split(std::size_t n);

// Names: "gl(n)", "sl(2)", "so(3)", "upper_lower_split(n)".
template <Scalar S>
LieAlgebra<S> builtin(const std::string& name);

// Index projection onto span{x_i : i in indices}.
template <Scalar S>
LinearEndo<S> index_projection(std::size_t dim, std::span<const std::size_t> indices);

}  // namespace postlie
