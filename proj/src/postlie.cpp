#include "postlie/postlie.hpp"

namespace postlie {

template <Scalar S>
BilinearProduct<S>::BilinearProduct(AlgebraPtr<S> algebra, std::vector<S> tensor)
    : algebra_(std::move(algebra)), dim_(algebra_->dim()), tensor_(std::move(tensor)) {
  if (tensor_.size() != dim_ * dim_ * dim_) throw DimensionMismatch(dim_ * dim_ * dim_, tensor_.size());
}

template <Scalar S>
BilinearProduct<S> BilinearProduct<S>::zero(AlgebraPtr<S> algebra) {
  std::size_t n = algebra->dim();
  return BilinearProduct(std::move(algebra), std::vector<S>(n * n * n, S(0)));
}

template <Scalar S>
BilinearProduct<S> BilinearProduct<S>::from_basis_products(
    AlgebraPtr<S> algebra, const std::function<Vector<S>(std::size_t, std::size_t)>& f) {
  std::size_t n = algebra->dim();
  std::vector<S> t(n * n * n, S(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector<S> v = f(i, j);
      if (v.size() != n) throw DimensionMismatch(n, v.size());
      for (std::size_t k = 0; k < n; ++k) t[(i * n + j) * n + k] = v[k];
    }
  }
  return BilinearProduct(std::move(algebra), std::move(t));
}

template <Scalar S>
Vector<S> BilinearProduct<S>::basis_product(std::size_t i, std::size_t j) const {
  Vector<S> v(dim_);
  for (std::size_t k = 0; k < dim_; ++k) v[k] = t(i, j, k);
  return v;
}

template <Scalar S>
Vector<S> BilinearProduct<S>::operator()(const Vector<S>& x, const Vector<S>& y) const {
  if (x.size() != dim_) throw DimensionMismatch(dim_, x.size());
  if (y.size() != dim_) throw DimensionMismatch(dim_, y.size());
  Vector<S> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (is_zero(x[i], Tolerance{0.0})) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (is_zero(y[j], Tolerance{0.0})) continue;
      S c = x[i] * y[j];
      for (std::size_t k = 0; k < dim_; ++k) out[k] += c * t(i, j, k);
    }
  }
  return out;
}

template <Scalar S>
LinearEndo<S> BilinearProduct<S>::left_mul(const Vector<S>& x) const {
  Matrix<S> m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    Vector<S> col = (*this)(x, Vector<S>::unit(dim_, j));
    for (std::size_t k = 0; k < dim_; ++k) m(k, j) = col[k];
  }
  return LinearEndo<S>(std::move(m));
}

template <Scalar S>
BilinearProduct<S> BilinearProduct<S>::combine(const BilinearProduct& b, const S& c) const {
  if (b.dim_ != dim_) throw DimensionMismatch(dim_, b.dim_);
  std::vector<S> t = tensor_;
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += c * b.tensor_[i];
  return BilinearProduct(algebra_, std::move(t));
}

template <Scalar S>
BilinearProduct<S> bracket_product(AlgebraPtr<S> algebra) {
  std::vector<S> t = algebra->tensor();
  return BilinearProduct<S>(std::move(algebra), std::move(t));
}

template <Scalar S>
Vector<S> associator(const BilinearProduct<S>& p, const Vector<S>& x, const Vector<S>& y,
                     const Vector<S>& z) {
  return p(p(x, y), z) - p(x, p(y, z));
}

template <Scalar S>
AxiomReport check_postlie(const BilinearProduct<S>& product, const LieAlgebra<S>& L,
                          Handedness handedness) {
  if (product.dim() != L.dim()) throw DimensionMismatch(L.dim(), product.dim());
  const std::size_t n = L.dim();
  const Tolerance tol = L.tolerance();
  AxiomReport rep;
  double worst = 0;
  auto record = [&](const Vector<S>& d, const char* axiom, double& slot, std::size_t i, std::size_t j,
                    std::size_t k) {
    double m = d.max_abs();
    slot = std::max(slot, m);
    if (!d.is_zero(tol)) rep.ok = false;
    if (m > worst) {
      worst = m;
      rep.worst_triple = std::array{i, j, k};
      rep.worst_axiom = axiom;
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    Vector<S> x = L.basis(i);
    for (std::size_t j = 0; j < n; ++j) {
      Vector<S> y = L.basis(j);
      Vector<S> xy = product(x, y);
      for (std::size_t k = 0; k < n; ++k) {
        Vector<S> z = L.basis(k);
        Vector<S> der = product(x, bracket(L, y, z)) - bracket(L, xy, z) - bracket(L, y, product(x, z));
        record(der, "derivation", rep.derivation_defect, i, j, k);
        Vector<S> lhs = product(bracket(L, x, y), z);
        Vector<S> diff = associator(product, x, y, z) - associator(product, y, x, z);
        Vector<S> as = handedness == Handedness::left ? lhs - diff : lhs + diff;
        record(as, "associator", rep.associator_defect, i, j, k);
      }
    }
  }
  return rep;
}

template <Scalar S>
PostLieStructure<S> PostLieStructure<S>::create(BilinearProduct<S> product, AlgebraPtr<S> bracket_algebra,
                                                Handedness handedness) {
  AxiomReport rep = check_postlie(product, *bracket_algebra, handedness);
  if (!rep.ok) {
    throw InvalidInput("product fails the " + rep.worst_axiom + " axiom of a " +
                       (handedness == Handedness::left ? "left" : "right") + " post-Lie algebra");
  }
  return PostLieStructure{std::move(product), std::move(bracket_algebra), handedness};
}

template <Scalar S>
LieAlgebra<S> derived_bracket(const PostLieStructure<S>& pl) {
  if (pl.handedness != Handedness::left) throw InvalidInput("derived_bracket expects a left structure");
  const LieAlgebra<S>& L = *pl.bracket_algebra;
  const std::size_t n = L.dim();
  std::vector<S> t(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        t[(i * n + j) * n + k] = pl.product.t(i, j, k) - pl.product.t(j, i, k) - L.c(i, j, k);
  return LieAlgebra<S>::from_tensor(n, L.labels(), std::move(t), std::nullopt, L.tolerance());
}

template <Scalar S>
PostLieStructure<S> to_right(const PostLieStructure<S>& pl) {
  if (pl.handedness != Handedness::left) throw InvalidInput("to_right expects a left structure");
  return PostLieStructure<S>{pl.product - bracket_product(pl.bracket_algebra), pl.bracket_algebra,
                             Handedness::right};
}

template <Scalar S>
PostLieStructure<S> to_left(const PostLieStructure<S>& pl) {
  if (pl.handedness != Handedness::right) throw InvalidInput("to_left expects a right structure");
  return PostLieStructure<S>{pl.product + bracket_product(pl.bracket_algebra), pl.bracket_algebra,
                             Handedness::left};
}

template <Scalar S>
BilinearProduct<S> lie_admissible(const PostLieStructure<S>& pl) {
  const BilinearProduct<S> right = pl.handedness == Handedness::right ? pl.product : to_right(pl).product;
  return right + (S(1) / S(2)) * bracket_product(pl.bracket_algebra);
}

template <Scalar S>
PreLieReport check_prelie(const BilinearProduct<S>& product) {
  const std::size_t n = product.dim();
  const Tolerance tol = product.algebra().tolerance();
  PreLieReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    Vector<S> x = Vector<S>::unit(n, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector<S> y = Vector<S>::unit(n, j);
      for (std::size_t k = 0; k < n; ++k) {
        Vector<S> z = Vector<S>::unit(n, k);
        Vector<S> d = associator(product, x, y, z) - associator(product, y, x, z);
        if (!d.is_zero(tol)) rep.ok = false;
        if (d.max_abs() > rep.worst_defect) {
          rep.worst_defect = d.max_abs();
          rep.worst_triple = std::array{i, j, k};
        }
      }
    }
  }
  return rep;
}

template <Scalar S>
BilinearProduct<S> rmatrix_product(const RMatrixContext<S>& ctx, Sign sign) {
  return BilinearProduct<S>::from_basis_products(ctx.algebra_ptr(), [&](std::size_t i, std::size_t j) {
    return post_product(ctx, sign, ctx.algebra().basis(i), ctx.algebra().basis(j));
  });
}

template <Scalar S>
LieAlgebra<S> abelian_algebra(std::size_t dim, Tolerance tol) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dim; ++i) labels.push_back("x" + std::to_string(i));
  return LieAlgebra<S>::from_tensor(dim, std::move(labels), std::vector<S>(dim * dim * dim, S(0)),
                                    std::nullopt, tol);
}

template <Scalar S>
BilinearProduct<S> cybe_prelie_product(const LieAlgebra<S>& L, const LinearEndo<S>& R) {
  auto ab = share(abelian_algebra<S>(L.dim(), L.tolerance()));
  return BilinearProduct<S>::from_basis_products(ab, [&](std::size_t i, std::size_t j) {
    return bracket(L, R(L.basis(i)), L.basis(j));
  });
}

#define POSTLIE_INSTANTIATE(S)                                                                          \
  template class BilinearProduct<S>;                                                                   \
  template BilinearProduct<S> bracket_product(AlgebraPtr<S>);                                          \
  template Vector<S> associator(const BilinearProduct<S>&, const Vector<S>&, const Vector<S>&,         \
                                const Vector<S>&);                                                     \
  template AxiomReport check_postlie(const BilinearProduct<S>&, const LieAlgebra<S>&, Handedness);     \
  template struct PostLieStructure<S>;                                                                 \
  template LieAlgebra<S> derived_bracket(const PostLieStructure<S>&);                                  \
  template PostLieStructure<S> to_right(const PostLieStructure<S>&);                                   \
  template PostLieStructure<S> to_left(const PostLieStructure<S>&);                                    \
  template BilinearProduct<S> lie_admissible(const PostLieStructure<S>&);                              \
  template PreLieReport check_prelie(const BilinearProduct<S>&);                                       \
  template BilinearProduct<S> rmatrix_product(const RMatrixContext<S>&, Sign);                         \
  template BilinearProduct<S> cybe_prelie_product(const LieAlgebra<S>&, const LinearEndo<S>&);         \
  template LieAlgebra<S> abelian_algebra(std::size_t, Tolerance);

POSTLIE_INSTANTIATE(Rational)
POSTLIE_INSTANTIATE(double)
#undef POSTLIE_INSTANTIATE

}  // namespace postlie
