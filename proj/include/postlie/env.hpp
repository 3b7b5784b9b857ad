#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "postlie/liealg.hpp"
#include "postlie/postlie.hpp"
#include "postlie/rmatrix.hpp"

namespace postlie {

using Word = std::vector<std::uint8_t>;

struct LengthLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

struct WordPairHash {
  std::size_t operator()(const std::pair<Word, Word>& p) const noexcept;
};

// An ungraded element of U(g): PBW-normal words with nonzero coefficients.
using WordMap = std::map<Word, Rational, LengthLex>;
using PairMap = std::map<std::pair<Word, Word>, Rational>;

void add_scaled(WordMap& acc, const WordMap& x, const Rational& c);
void add_term(WordMap& acc, const Word& w, const Rational& c);

class Envelope;

// Truncated element of U(g). The truncation is by a grading in which every
// letter carries degree 1 and products add degrees: parts()[d] holds the
// coefficient of t^d, an element of U(g) spanned by words of length <= d.
// Everything of degree above the envelope order is dropped. This is the
// quotient of the Rees algebra U(g)[t] by t^(N+1), an ideal, so products,
// exp and log are exact modulo t^(N+1).
class EnvElement {
 public:
  const Envelope& envelope() const { return *env_; }
  unsigned order() const { return static_cast<unsigned>(parts_.size()) - 1; }
  const std::vector<WordMap>& parts() const { return parts_; }
  const WordMap& part(unsigned degree) const { return parts_.at(degree); }

  Rational coefficient(unsigned degree, const Word& w) const;
  bool is_zero() const;
  std::size_t term_count() const;
  // Largest word length present in any part.
  std::size_t max_length() const;
  // Keep only the degree-d part.
  EnvElement degree_part(unsigned degree) const;

  EnvElement& operator+=(const EnvElement& o);
  EnvElement& operator-=(const EnvElement& o);
  EnvElement& operator*=(const Rational& c);
  friend EnvElement operator+(EnvElement a, const EnvElement& b) { return a += b; }
  friend EnvElement operator-(EnvElement a, const EnvElement& b) { return a -= b; }
  friend EnvElement operator-(EnvElement a) { return a *= Rational(-1); }
  friend EnvElement operator*(const Rational& c, EnvElement a) { return a *= c; }
  friend bool operator==(const EnvElement& a, const EnvElement& b);

 private:
  friend class Envelope;
  friend class PostLieEnvelope;
  EnvElement(const Envelope* env, unsigned order) : env_(env), parts_(order + 1) {}
  void check_compatible(const EnvElement& o) const;

  const Envelope* env_;
  std::vector<WordMap> parts_;
};

// Graded element of U(g) ⊗ U(g); the degree is the total degree.
class TensorSquareElement {
 public:
  const std::vector<PairMap>& parts() const { return parts_; }
  bool is_zero() const;
  TensorSquareElement& operator+=(const TensorSquareElement& o);
  TensorSquareElement& operator-=(const TensorSquareElement& o);
  friend TensorSquareElement operator+(TensorSquareElement a, const TensorSquareElement& b) { return a += b; }
  friend TensorSquareElement operator-(TensorSquareElement a, const TensorSquareElement& b) { return a -= b; }
  friend bool operator==(const TensorSquareElement& a, const TensorSquareElement& b) {
    return a.parts_ == b.parts_;
  }

 private:
  friend class Envelope;
  explicit TensorSquareElement(unsigned order) : parts_(order + 1) {}
  std::vector<PairMap> parts_;
};

// Word-level product and antipode defining a Hopf structure on the
// underlying space of U(g), with the shared coproduct and counit.
struct HopfOps {
  std::function<WordMap(const Word&, const Word&)> mul;
  std::function<WordMap(const Word&)> antipode;
};

struct HopfReport {
  bool coassociative = true;
  bool counit = true;
  bool antipode = true;
  bool multiplicative = true;
  bool ok() const { return coassociative && counit && antipode && multiplicative; }
};

// U(g) truncated at order N with PBW normal forms in the algebra's basis
// order. Holds memo tables; an Envelope should not be shared between
// threads.
class Envelope {
 public:
  Envelope(AlgebraPtr<Rational> algebra, unsigned order);
  Envelope(const Envelope&) = delete;
  Envelope& operator=(const Envelope&) = delete;

  const LieAlgebra<Rational>& algebra() const { return *algebra_; }
  const AlgebraPtr<Rational>& algebra_ptr() const { return algebra_; }
  unsigned order() const { return order_; }

  EnvElement zero() const;
  EnvElement unit() const;
  EnvElement letter(std::size_t i) const;
  // Σ v_i x_i at degree 1.
  EnvElement from_vector(const Vector<Rational>& v) const;
  // Normal form of an arbitrary word, at degree equal to its length.
  EnvElement pbw_normalize(const Word& raw) const;
  // An ungraded element placed at a given degree (words must fit).
  EnvElement at_degree(const WordMap& m, unsigned degree) const;

  // PBW normal form of a raw word (memoized).
  const WordMap& normal_form(const Word& raw) const;
  WordMap mul_maps(const WordMap& a, const WordMap& b) const;
  WordMap word_antipode(const Word& w) const;
  // Multilinear expansion of a product of vectors.
  WordMap product_of_vectors(const std::vector<Vector<Rational>>& factors) const;
  WordMap vector_map(const Vector<Rational>& v) const;

  EnvElement mul(const EnvElement& a, const EnvElement& b) const;
  EnvElement power(const EnvElement& a, unsigned n) const;
  TensorSquareElement coproduct(const EnvElement& a) const;
  EnvElement antipode(const EnvElement& a) const;
  // Coefficient of the empty word at degree 0.
  Rational counit(const EnvElement& a) const;

  EnvElement exp(const EnvElement& a) const;
  EnvElement log(const EnvElement& a) const;
  bool is_primitive(const EnvElement& a) const;
  bool is_grouplike(const EnvElement& a) const;

  // Generic graded helpers.
  EnvElement map_linear(const EnvElement& a, const std::function<WordMap(const Word&)>& f) const;
  EnvElement map_bilinear(const EnvElement& a, const EnvElement& b,
                          const std::function<WordMap(const Word&, const Word&)>& f) const;
  EnvElement exp_with(const EnvElement& a, const std::function<WordMap(const Word&, const Word&)>& mul) const;
  EnvElement log_with(const EnvElement& a, const std::function<WordMap(const Word&, const Word&)>& mul) const;

  TensorSquareElement tensor(const EnvElement& a, const EnvElement& b) const;
  TensorSquareElement tensor_mul(const TensorSquareElement& a, const TensorSquareElement& b,
                                 const std::function<WordMap(const Word&, const Word&)>& mul) const;
  // Σ f(left, right) over the terms.
  EnvElement contract(const TensorSquareElement& t, const std::function<WordMap(const Word&, const Word&)>& f) const;
  // Σ terms of (Δ⊗id)Δ(a) - (id⊗Δ)Δ(a) is zero.
  bool coassociative(const EnvElement& a) const;

  HopfOps dot_ops() const;
  HopfReport hopf_check(const HopfOps& ops, const EnvElement& a, const EnvElement& b) const;

  // "c · w + ..." in length-lex order, degrees ascending.
  std::string render(const EnvElement& a) const;

  // Extracts the g-vector from an element whose parts contain only words of
  // length one; returns the coefficient at each degree.
  std::vector<Vector<Rational>> length_one_parts(const EnvElement& a) const;

 private:
  AlgebraPtr<Rational> algebra_;
  unsigned order_;
  mutable std::unordered_map<Word, WordMap, WordHash> nf_memo_;
};

// The lifted post-Lie product, the star product and the map φ for a product
// ▷ on g satisfying
//   x▷[y,z] = [x▷y,z] + [y,x▷z],
//   [x,y]▷z = x▷(y▷z) - (x▷y)▷z - y▷(x▷z) + (y▷x)▷z.
// For an r-matrix this is x ▷ y = [R₋x, y]. The companion Lie algebra ḡ has
// bracket ⟦x,y⟧ = x▷y - y▷x + [x,y].
class PostLieEnvelope {
 public:
  PostLieEnvelope(AlgebraPtr<Rational> algebra, BilinearProduct<Rational> product, unsigned order, bool validate = true);

  const Envelope& g() const { return g_; }
  // Without validation the companion bracket may fail Jacobi; U(ḡ) is then
  // unavailable and these throw InvalidInput.
  const Envelope& gbar() const;
  const LieAlgebra<Rational>& gbar_algebra() const { return gbar().algebra(); }
  const BilinearProduct<Rational>& product() const { return product_; }
  unsigned order() const { return g_.order(); }

  EnvElement triangle(const EnvElement& a, const EnvElement& b) const;
  EnvElement star(const EnvElement& a, const EnvElement& b) const;
  EnvElement star_power(const EnvElement& a, unsigned n) const;
  EnvElement star_antipode(const EnvElement& a) const;
  // The printed recursion with the ordinary antipode inside the sum.
  EnvElement star_antipode_literal(const EnvElement& a) const;
  EnvElement exp_star(const EnvElement& a) const;
  EnvElement log_star(const EnvElement& a) const;
  HopfOps star_ops() const;

  // φ : U(ḡ) → U*(g), via φ(x₁w) = x₁·φ(w) + x₁▷φ(w).
  EnvElement phi(const EnvElement& in_gbar) const;
  // φ on a raw word of ḡ-letters, at degree = length.
  EnvElement phi_word(const Word& raw) const;
  // Σ over set partitions of X_π.
  EnvElement phi_partition_sum(const Word& raw) const;
  std::size_t phi_partition_term_count(std::size_t n) const;
  EnvElement phi_inverse(const EnvElement& in_g) const;
  EnvElement phi_inverse_word(const Word& raw) const;

  // Word-level building blocks (memoized, untruncated).
  const WordMap& triangle_words(const Word& u, const Word& v) const;
  WordMap triangle_maps(const WordMap& a, const WordMap& b) const;
  const WordMap& star_words(const Word& u, const Word& v) const;
  WordMap star_maps(const WordMap& a, const WordMap& b) const;
  const WordMap& star_antipode_word(const Word& u) const;
  const WordMap& phi_raw(const Word& raw) const;
  const WordMap& phi_inverse_raw(const Word& raw) const;
  // x ▷ w for a letter x, acting as a derivation on the letters of w.
  WordMap letter_derivation(std::size_t x, const Word& w) const;
  // The g-vector x(block) = x_{k1} ▷ (x_{k2} ▷ ( ... ▷ x_{kl})).
  Vector<Rational> nested_triangle(const std::vector<std::size_t>& letters) const;

 private:
  AlgebraPtr<Rational> algebra_;
  BilinearProduct<Rational> product_;
  Envelope g_;
  std::unique_ptr<Envelope> gbar_;
  mutable std::unordered_map<std::pair<Word, Word>, WordMap, WordPairHash> tri_memo_;
  mutable std::unordered_map<std::pair<Word, Word>, WordMap, WordPairHash> star_memo_;
  mutable std::unordered_map<Word, WordMap, WordHash> santi_memo_;
  mutable std::unordered_map<Word, WordMap, WordHash> phi_memo_;
  mutable std::unordered_map<Word, WordMap, WordHash> phi_inv_memo_;
};

// The ḡ bracket of a product as a Lie algebra: ⟦x,y⟧ = x▷y - y▷x + [x,y].
LieAlgebra<Rational> companion_algebra(const LieAlgebra<Rational>& g, const BilinearProduct<Rational>& product);

// F = m(id ⊗ S)(R₊ ⊗ R₋)Δ on U(g_R), with R± applied letter by letter.
// `a` must live in pe.gbar(), whose bracket must be [·,·]_R.
EnvElement f_map(const PostLieEnvelope& pe, const RMatrixContext<Rational>& ctx, const EnvElement& a);

struct StsReport {
  bool ok = true;
  std::size_t mismatched_terms = 0;
};

// Checks F(a) ∗ B = R₊(a₍₁₎) B S(R₋(a₍₂₎)).
StsReport sts_product_check(const PostLieEnvelope& pe, const RMatrixContext<Rational>& ctx, const EnvElement& a,
                            const EnvElement& B);

// Number of terms produced by the recursion φ(x₁w) = x₁φ(w) + x₁▷φ(w) on a
// word of n distinct letters, with ▷ distributing over the factors of each
// term.
std::uint64_t phi_term_count(std::size_t n);

}  // namespace postlie
