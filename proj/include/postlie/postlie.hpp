#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "postlie/liealg.hpp"
#include "postlie/rmatrix.hpp"

namespace postlie {

// x_i ∘ x_j = Σ_k T[i][j][k] x_k on the underlying space of `algebra`.
template <Scalar S>
class BilinearProduct {
 public:
  BilinearProduct(AlgebraPtr<S> algebra, std::vector<S> tensor);

  static BilinearProduct zero(AlgebraPtr<S> algebra);
  static BilinearProduct from_basis_products(
      AlgebraPtr<S> algebra, const std::function<Vector<S>(std::size_t, std::size_t)>& f);

  const LieAlgebra<S>& algebra() const { return *algebra_; }
  const AlgebraPtr<S>& algebra_ptr() const { return algebra_; }
  std::size_t dim() const { return dim_; }
  const S& t(std::size_t i, std::size_t j, std::size_t k) const {
    return tensor_[(i * dim_ + j) * dim_ + k];
  }
  const std::vector<S>& tensor() const { return tensor_; }

  Vector<S> basis_product(std::size_t i, std::size_t j) const;
  Vector<S> operator()(const Vector<S>& x, const Vector<S>& y) const;
  // The left multiplication y ↦ x ∘ y.
  LinearEndo<S> left_mul(const Vector<S>& x) const;

  friend BilinearProduct operator+(const BilinearProduct& a, const BilinearProduct& b) {
    return a.combine(b, S(1));
  }
  friend BilinearProduct operator-(const BilinearProduct& a, const BilinearProduct& b) {
    return a.combine(b, S(-1));
  }
  friend BilinearProduct operator*(const S& c, const BilinearProduct& a) {
    std::vector<S> t = a.tensor_;
    for (S& v : t) v *= c;
    return BilinearProduct(a.algebra_, std::move(t));
  }
  friend bool operator==(const BilinearProduct& a, const BilinearProduct& b) {
    return a.tensor_ == b.tensor_;
  }

 private:
  BilinearProduct combine(const BilinearProduct& b, const S& c) const;
  AlgebraPtr<S> algebra_;
  std::size_t dim_;
  std::vector<S> tensor_;
};

// The bracket of an algebra viewed as a product tensor.
template <Scalar S>
BilinearProduct<S> bracket_product(AlgebraPtr<S> algebra);

// (x∘y)∘z - x∘(y∘z)
template <Scalar S>
Vector<S> associator(const BilinearProduct<S>& p, const Vector<S>& x, const Vector<S>& y,
                     const Vector<S>& z);

// Left:  x▷[y,z] = [x▷y,z] + [y,x▷z]  and  [x,y]▷z = a(x,y,z) - a(y,x,z)
// Right: x◁[y,z] = [x◁y,z] + [y,x◁z]  and  [x,y]◁z = a(y,x,z) - a(x,y,z)
// with a(x,y,z) = (x∘y)∘z - x∘(y∘z). A right structure in this sense is a left
// post-Lie algebra for the opposite associator convention; the enveloping
// algebra constructions downstream take products of this kind.
enum class Handedness { left, right };

struct AxiomReport {
  bool ok = true;
  double derivation_defect = 0;
  double associator_defect = 0;
  std::optional<std::array<std::size_t, 3>> worst_triple;
  std::string worst_axiom;
};

template <Scalar S>
AxiomReport check_postlie(const BilinearProduct<S>& product, const LieAlgebra<S>& bracket_algebra,
                          Handedness handedness);

template <Scalar S>
struct PostLieStructure {
  BilinearProduct<S> product;
  AlgebraPtr<S> bracket_algebra;
  Handedness handedness;

  // Throws InvalidInput unless the axioms hold.
  static PostLieStructure create(BilinearProduct<S> product, AlgebraPtr<S> bracket_algebra,
                                 Handedness handedness);
};

// ⟦x,y⟧ = x▷y - y▷x - [x,y] for a left structure.
template <Scalar S>
LieAlgebra<S> derived_bracket(const PostLieStructure<S>& pl);

// x◁y = x▷y - [x,y]
template <Scalar S>
PostLieStructure<S> to_right(const PostLieStructure<S>& pl);

// x▷y = x◁y + [x,y]
template <Scalar S>
PostLieStructure<S> to_left(const PostLieStructure<S>& pl);

// x≻y = x◁y + ½[x,y], with ◁ the right form of the structure. Its
// antisymmetrization is the derived bracket.
template <Scalar S>
BilinearProduct<S> lie_admissible(const PostLieStructure<S>& pl);

struct PreLieReport {
  bool ok = true;
  double worst_defect = 0;
  std::optional<std::array<std::size_t, 3>> worst_triple;
};

// a(x,y,z) = a(y,x,z) on all basis triples.
template <Scalar S>
PreLieReport check_prelie(const BilinearProduct<S>& product);

// x ▷± y = [R± x, y] as a tensor.
template <Scalar S>
BilinearProduct<S> rmatrix_product(const RMatrixContext<S>& ctx, Sign sign);

// x·y = [Rx, y] on the abelian algebra of the same dimension. Intended for
// solutions of the classical Yang-Baxter equation (theta = 0).
template <Scalar S>
BilinearProduct<S> cybe_prelie_product(const LieAlgebra<S>& L, const LinearEndo<S>& R);

template <Scalar S>
LieAlgebra<S> abelian_algebra(std::size_t dim, Tolerance tol = {});

}  // namespace postlie
