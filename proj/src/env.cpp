#include "postlie/env.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "postlie/partitions.hpp"

namespace postlie {

namespace {

using Fn2 = std::function<WordMap(const Word&, const Word&)>;

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

std::pair<Word, Word> split_by_mask(const Word& w, std::uint32_t mask) {
  std::pair<Word, Word> out;
  for (std::size_t i = 0; i < w.size(); ++i) ((mask >> i) & 1u ? out.first : out.second).push_back(w[i]);
  return out;
}

void add_pair(PairMap& acc, const Word& l, const Word& r, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = acc.try_emplace({l, r}, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) acc.erase(it);
  }
}

WordMap single(const Word& w) { return WordMap{{w, Rational(1)}}; }

}  // namespace

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto c : w) {
    h ^= c + 1;
    h *= 1099511628211ull;
  }
  return h ^ w.size();
}

std::size_t WordPairHash::operator()(const std::pair<Word, Word>& p) const noexcept {
  WordHash h;
  return h(p.first) * 31 + h(p.second) + 0x9e3779b97f4a7c15ull;
}

void add_term(WordMap& acc, const Word& w, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = acc.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) acc.erase(it);
  }
}

void add_scaled(WordMap& acc, const WordMap& x, const Rational& c) {
  if (sgn(c) == 0) return;
  for (const auto& [w, v] : x) add_term(acc, w, c * v);
}

// ---------------------------------------------------------------- EnvElement

void EnvElement::check_compatible(const EnvElement& o) const {
  if (env_ == o.env_) return;
  if (order() != o.order()) throw OrderMismatch(order(), o.order());
  if (!(env_->algebra() == o.env_->algebra())) throw AlgebraMismatch();
}

Rational EnvElement::coefficient(unsigned degree, const Word& w) const {
  if (degree >= parts_.size()) return 0;
  auto it = parts_[degree].find(w);
  return it == parts_[degree].end() ? Rational(0) : it->second;
}

bool EnvElement::is_zero() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const WordMap& m) { return m.empty(); });
}

std::size_t EnvElement::term_count() const {
  std::size_t n = 0;
  for (const auto& p : parts_) n += p.size();
  return n;
}

std::size_t EnvElement::max_length() const {
  std::size_t n = 0;
  for (const auto& p : parts_)
    for (const auto& [w, c] : p) n = std::max(n, w.size());
  return n;
}

EnvElement EnvElement::degree_part(unsigned degree) const {
  EnvElement out(env_, order());
  if (degree < parts_.size()) out.parts_[degree] = parts_[degree];
  return out;
}

EnvElement& EnvElement::operator+=(const EnvElement& o) {
  check_compatible(o);
  for (std::size_t d = 0; d < parts_.size(); ++d) add_scaled(parts_[d], o.parts_[d], Rational(1));
  return *this;
}

EnvElement& EnvElement::operator-=(const EnvElement& o) {
  check_compatible(o);
  for (std::size_t d = 0; d < parts_.size(); ++d) add_scaled(parts_[d], o.parts_[d], Rational(-1));
  return *this;
}

EnvElement& EnvElement::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    for (auto& p : parts_) p.clear();
    return *this;
  }
  for (auto& p : parts_)
    for (auto& [w, v] : p) v *= c;
  return *this;
}

bool operator==(const EnvElement& a, const EnvElement& b) {
  a.check_compatible(b);
  return a.parts_ == b.parts_;
}

// ------------------------------------------------------- TensorSquareElement

bool TensorSquareElement::is_zero() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const PairMap& m) { return m.empty(); });
}

TensorSquareElement& TensorSquareElement::operator+=(const TensorSquareElement& o) {
  if (o.parts_.size() != parts_.size()) throw OrderMismatch(parts_.size() - 1, o.parts_.size() - 1);
  for (std::size_t d = 0; d < parts_.size(); ++d)
    for (const auto& [k, c] : o.parts_[d]) add_pair(parts_[d], k.first, k.second, c);
  return *this;
}

TensorSquareElement& TensorSquareElement::operator-=(const TensorSquareElement& o) {
  if (o.parts_.size() != parts_.size()) throw OrderMismatch(parts_.size() - 1, o.parts_.size() - 1);
  for (std::size_t d = 0; d < parts_.size(); ++d)
    for (const auto& [k, c] : o.parts_[d]) add_pair(parts_[d], k.first, k.second, -c);
  return *this;
}

// ------------------------------------------------------------------ Envelope

Envelope::Envelope(AlgebraPtr<Rational> algebra, unsigned order) : algebra_(std::move(algebra)), order_(order) {
  if (algebra_->dim() > 255) throw InvalidInput("enveloping algebra supports at most 255 basis elements");
}

EnvElement Envelope::zero() const { return EnvElement(this, order_); }

EnvElement Envelope::unit() const {
  EnvElement e(this, order_);
  e.parts_[0][Word{}] = 1;
  return e;
}

EnvElement Envelope::letter(std::size_t i) const {
  if (i >= algebra_->dim()) throw DimensionMismatch(algebra_->dim(), i + 1);
  EnvElement e(this, order_);
  if (order_ >= 1) e.parts_[1][Word{static_cast<std::uint8_t>(i)}] = 1;
  return e;
}

EnvElement Envelope::from_vector(const Vector<Rational>& v) const {
  algebra_->check_conforms(v);
  EnvElement e(this, order_);
  if (order_ >= 1) e.parts_[1] = vector_map(v);
  return e;
}

EnvElement Envelope::pbw_normalize(const Word& raw) const {
  for (auto c : raw)
    if (c >= algebra_->dim()) throw DimensionMismatch(algebra_->dim(), c + 1u);
  EnvElement e(this, order_);
  if (raw.size() <= order_) e.parts_[raw.size()] = normal_form(raw);
  return e;
}

EnvElement Envelope::at_degree(const WordMap& m, unsigned degree) const {
  EnvElement e(this, order_);
  if (degree > order_) return e;
  for (const auto& [w, c] : m)
    if (w.size() > degree) throw InvalidInput("word longer than its degree");
  e.parts_[degree] = m;
  return e;
}

const WordMap& Envelope::normal_form(const Word& raw) const {
  if (auto it = nf_memo_.find(raw); it != nf_memo_.end()) return it->second;
  std::size_t i = 0;
  while (i + 1 < raw.size() && raw[i] <= raw[i + 1]) ++i;
  WordMap out;
  if (i + 1 >= raw.size()) {
    out[raw] = 1;
  } else {
    // x_b x_a = x_a x_b + [x_b, x_a]
    const std::size_t b = raw[i], a = raw[i + 1];
    Word swapped = raw;
    std::swap(swapped[i], swapped[i + 1]);
    out = normal_form(swapped);
    for (std::size_t k = 0; k < algebra_->dim(); ++k) {
      const Rational& c = algebra_->c(b, a, k);
      if (sgn(c) == 0) continue;
      Word shorter(raw.begin(), raw.begin() + i);
      shorter.push_back(static_cast<std::uint8_t>(k));
      shorter.insert(shorter.end(), raw.begin() + i + 2, raw.end());
      add_scaled(out, normal_form(shorter), c);
    }
  }
  return nf_memo_.emplace(raw, std::move(out)).first->second;
}

WordMap Envelope::mul_maps(const WordMap& a, const WordMap& b) const {
  WordMap out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) add_scaled(out, normal_form(concat(u, v)), cu * cv);
  return out;
}

WordMap Envelope::word_antipode(const Word& w) const {
  Word r(w.rbegin(), w.rend());
  WordMap out = normal_form(r);
  if (w.size() % 2 == 1)
    for (auto& [k, c] : out) c = -c;
  return out;
}

WordMap Envelope::vector_map(const Vector<Rational>& v) const {
  WordMap out;
  for (std::size_t i = 0; i < v.size(); ++i) add_term(out, Word{static_cast<std::uint8_t>(i)}, v[i]);
  return out;
}

WordMap Envelope::product_of_vectors(const std::vector<Vector<Rational>>& factors) const {
  WordMap acc = single(Word{});
  for (const auto& f : factors) acc = mul_maps(acc, vector_map(f));
  return acc;
}

EnvElement Envelope::map_linear(const EnvElement& a, const std::function<WordMap(const Word&)>& f) const {
  EnvElement out(this, order_);
  for (std::size_t d = 0; d < a.parts_.size() && d <= order_; ++d)
    for (const auto& [w, c] : a.parts_[d]) add_scaled(out.parts_[d], f(w), c);
  return out;
}

EnvElement Envelope::map_bilinear(const EnvElement& a, const EnvElement& b, const Fn2& f) const {
  a.check_compatible(b);
  EnvElement out(this, order_);
  for (std::size_t da = 0; da <= order_; ++da) {
    if (a.parts_[da].empty()) continue;
    for (std::size_t db = 0; da + db <= order_; ++db) {
      for (const auto& [u, cu] : a.parts_[da])
        for (const auto& [v, cv] : b.parts_[db]) add_scaled(out.parts_[da + db], f(u, v), cu * cv);
    }
  }
  return out;
}

EnvElement Envelope::mul(const EnvElement& a, const EnvElement& b) const {
  return map_bilinear(a, b, [this](const Word& u, const Word& v) { return normal_form(concat(u, v)); });
}

EnvElement Envelope::power(const EnvElement& a, unsigned n) const {
  EnvElement out = unit();
  for (unsigned i = 0; i < n; ++i) out = mul(out, a);
  return out;
}

TensorSquareElement Envelope::coproduct(const EnvElement& a) const {
  TensorSquareElement t(order_);
  for (std::size_t d = 0; d <= order_; ++d) {
    for (const auto& [w, c] : a.parts_[d]) {
      const std::uint32_t masks = 1u << w.size();
      for (std::uint32_t m = 0; m < masks; ++m) {
        auto [l, r] = split_by_mask(w, m);
        add_pair(t.parts_[d], l, r, c);
      }
    }
  }
  return t;
}

EnvElement Envelope::antipode(const EnvElement& a) const {
  return map_linear(a, [this](const Word& w) { return word_antipode(w); });
}

Rational Envelope::counit(const EnvElement& a) const { return a.coefficient(0, Word{}); }

EnvElement Envelope::exp_with(const EnvElement& a, const Fn2& mul) const {
  if (!a.parts_[0].empty()) throw NotInAugmentationIdeal();
  EnvElement result = unit(), term = unit();
  for (unsigned n = 1; n <= order_; ++n) {
    term = map_bilinear(term, a, mul);
    term *= Rational(1, n);
    result += term;
  }
  return result;
}

EnvElement Envelope::log_with(const EnvElement& a, const Fn2& mul) const {
  if (!(a.parts_[0] == single(Word{}))) throw NotUnitNormalized();
  EnvElement b = a - unit();
  EnvElement result = zero(), pw = unit();
  for (unsigned n = 1; n <= order_; ++n) {
    pw = map_bilinear(pw, b, mul);
    Rational c(n % 2 == 1 ? 1 : -1, n);
    result += c * pw;
  }
  return result;
}

EnvElement Envelope::exp(const EnvElement& a) const {
  return exp_with(a, [this](const Word& u, const Word& v) { return normal_form(concat(u, v)); });
}

EnvElement Envelope::log(const EnvElement& a) const {
  return log_with(a, [this](const Word& u, const Word& v) { return normal_form(concat(u, v)); });
}

TensorSquareElement Envelope::tensor(const EnvElement& a, const EnvElement& b) const {
  a.check_compatible(b);
  TensorSquareElement t(order_);
  for (std::size_t da = 0; da <= order_; ++da)
    for (std::size_t db = 0; da + db <= order_; ++db)
      for (const auto& [u, cu] : a.parts_[da])
        for (const auto& [v, cv] : b.parts_[db]) add_pair(t.parts_[da + db], u, v, cu * cv);
  return t;
}

TensorSquareElement Envelope::tensor_mul(const TensorSquareElement& a, const TensorSquareElement& b,
                                         const Fn2& mul) const {
  TensorSquareElement t(order_);
  for (std::size_t da = 0; da <= order_; ++da) {
    for (std::size_t db = 0; da + db <= order_; ++db) {
      for (const auto& [ka, ca] : a.parts_[da]) {
        for (const auto& [kb, cb] : b.parts_[db]) {
          WordMap l = mul(ka.first, kb.first);
          WordMap r = mul(ka.second, kb.second);
          for (const auto& [lw, lc] : l)
            for (const auto& [rw, rc] : r) add_pair(t.parts_[da + db], lw, rw, ca * cb * lc * rc);
        }
      }
    }
  }
  return t;
}

EnvElement Envelope::contract(const TensorSquareElement& t, const Fn2& f) const {
  EnvElement out(this, order_);
  for (std::size_t d = 0; d <= order_; ++d)
    for (const auto& [k, c] : t.parts_[d]) add_scaled(out.parts_[d], f(k.first, k.second), c);
  return out;
}

bool Envelope::coassociative(const EnvElement& a) const {
  using Triple = std::tuple<Word, Word, Word>;
  TensorSquareElement t = coproduct(a);
  for (std::size_t d = 0; d <= order_; ++d) {
    std::map<Triple, Rational> left, right;
    auto add = [](std::map<Triple, Rational>& m, Triple k, const Rational& c) {
      auto [it, ins] = m.try_emplace(std::move(k), c);
      if (!ins) {
        it->second += c;
        if (sgn(it->second) == 0) m.erase(it);
      }
    };
    for (const auto& [k, c] : t.parts_[d]) {
      // Δ applied to each leg through the element-level coproduct
      TensorSquareElement dl = coproduct(at_degree(single(k.first), static_cast<unsigned>(k.first.size())));
      for (const auto& p : dl.parts_)
        for (const auto& [kk, cc] : p) add(left, {kk.first, kk.second, k.second}, c * cc);
      TensorSquareElement dr = coproduct(at_degree(single(k.second), static_cast<unsigned>(k.second.size())));
      for (const auto& p : dr.parts_)
        for (const auto& [kk, cc] : p) add(right, {k.first, kk.first, kk.second}, c * cc);
    }
    if (left != right) return false;
  }
  return true;
}

bool Envelope::is_primitive(const EnvElement& a) const {
  return coproduct(a) == tensor(a, unit()) + tensor(unit(), a);
}

bool Envelope::is_grouplike(const EnvElement& a) const {
  return !a.is_zero() && coproduct(a) == tensor(a, a);
}

HopfOps Envelope::dot_ops() const {
  return HopfOps{[this](const Word& u, const Word& v) { return normal_form(concat(u, v)); },
                 [this](const Word& w) { return word_antipode(w); }};
}

HopfReport Envelope::hopf_check(const HopfOps& ops, const EnvElement& a, const EnvElement& b) const {
  HopfReport rep;
  rep.coassociative = coassociative(a);

  TensorSquareElement da = coproduct(a);
  auto eps_left = [](const Word& l, const Word& r) { return l.empty() ? single(r) : WordMap{}; };
  auto eps_right = [](const Word& l, const Word& r) { return r.empty() ? single(l) : WordMap{}; };
  rep.counit = contract(da, eps_left) == a && contract(da, eps_right) == a;

  EnvElement eps = map_linear(a, [](const Word& w) { return w.empty() ? single(w) : WordMap{}; });
  EnvElement left = contract(da, [&](const Word& l, const Word& r) {
    WordMap out;
    for (const auto& [w, c] : ops.antipode(r)) add_scaled(out, ops.mul(l, w), c);
    return out;
  });
  EnvElement right = contract(da, [&](const Word& l, const Word& r) {
    WordMap out;
    for (const auto& [w, c] : ops.antipode(l)) add_scaled(out, ops.mul(w, r), c);
    return out;
  });
  rep.antipode = left == eps && right == eps;

  EnvElement ab = map_bilinear(a, b, ops.mul);
  rep.multiplicative = coproduct(ab) == tensor_mul(da, coproduct(b), ops.mul);
  return rep;
}

std::string Envelope::render(const EnvElement& a) const {
  std::string out;
  for (std::size_t d = 0; d < a.parts_.size(); ++d) {
    for (const auto& [w, c] : a.parts_[d]) {
      if (!out.empty()) out += " + ";
      out += format_rational(c) + " · ";
      if (w.empty()) out += "1";
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += " ";
        out += algebra_->label(w[i]);
      }
      if (d != w.size()) out += " · t^" + std::to_string(d);
    }
  }
  return out.empty() ? "0" : out;
}

std::vector<Vector<Rational>> Envelope::length_one_parts(const EnvElement& a) const {
  std::vector<Vector<Rational>> out(a.parts_.size(), Vector<Rational>(algebra_->dim()));
  for (std::size_t d = 0; d < a.parts_.size(); ++d)
    for (const auto& [w, c] : a.parts_[d])
      if (w.size() == 1) out[d][w[0]] = c;
  return out;
}

// ----------------------------------------------------------- PostLieEnvelope

LieAlgebra<Rational> companion_algebra(const LieAlgebra<Rational>& g, const BilinearProduct<Rational>& p) {
  const std::size_t n = g.dim();
  if (p.dim() != n) throw DimensionMismatch(n, p.dim());
  std::vector<Rational> t(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) t[(i * n + j) * n + k] = p.t(i, j, k) - p.t(j, i, k) + g.c(i, j, k);
  return LieAlgebra<Rational>::from_tensor(n, g.labels(), std::move(t));
}

PostLieEnvelope::PostLieEnvelope(AlgebraPtr<Rational> algebra, BilinearProduct<Rational> product, unsigned order,
                                 bool validate)
    : algebra_(algebra), product_(std::move(product)), g_(algebra, order) {
  if (product_.dim() != algebra_->dim()) throw DimensionMismatch(algebra_->dim(), product_.dim());
  if (validate && !check_postlie(product_, *algebra_, Handedness::right).ok) {
    throw InvalidInput("product does not define a post-Lie structure on the enveloping algebra");
  }
  try {
    gbar_ = std::make_unique<Envelope>(share(companion_algebra(*algebra_, product_)), order);
  } catch (const JacobiViolation&) {
    if (validate) throw;
  }
}

const Envelope& PostLieEnvelope::gbar() const {
  if (!gbar_) throw InvalidInput("the companion bracket of this product is not a Lie bracket");
  return *gbar_;
}

WordMap PostLieEnvelope::letter_derivation(std::size_t x, const Word& w) const {
  WordMap out;
  const std::size_t n = algebra_->dim();
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Rational& c = product_.t(x, w[i], k);
      if (sgn(c) == 0) continue;
      Word r = w;
      r[i] = static_cast<std::uint8_t>(k);
      add_scaled(out, g_.normal_form(r), c);
    }
  }
  return out;
}

const WordMap& PostLieEnvelope::triangle_words(const Word& u, const Word& v) const {
  std::pair<Word, Word> key{u, v};
  if (auto it = tri_memo_.find(key); it != tri_memo_.end()) return it->second;
  WordMap out;
  if (u.empty()) {
    out = single(v);
  } else if (v.empty()) {
    // A ▷ 1 = ε(A) 1
  } else if (v.size() >= 2) {
    // A ▷ (yC) = (A₍₁₎ ▷ y)(A₍₂₎ ▷ C)
    Word y{v[0]};
    Word rest(v.begin() + 1, v.end());
    const std::uint32_t masks = 1u << u.size();
    for (std::uint32_t m = 0; m < masks; ++m) {
      auto [u1, u2] = split_by_mask(u, m);
      WordMap left = triangle_words(u1, y);
      if (left.empty()) continue;
      WordMap right = triangle_words(u2, rest);
      add_scaled(out, g_.mul_maps(left, right), Rational(1));
    }
  } else if (u.size() == 1) {
    for (std::size_t k = 0; k < algebra_->dim(); ++k)
      add_term(out, Word{static_cast<std::uint8_t>(k)}, product_.t(u[0], v[0], k));
  } else {
    // xA ▷ y = x ▷ (A ▷ y) - (x ▷ A) ▷ y
    Word x{u[0]};
    Word A(u.begin() + 1, u.end());
    WordMap inner = triangle_words(A, v);
    out = triangle_maps(single(x), inner);
    add_scaled(out, triangle_maps(letter_derivation(u[0], A), single(v)), Rational(-1));
  }
  return tri_memo_.emplace(std::move(key), std::move(out)).first->second;
}

WordMap PostLieEnvelope::triangle_maps(const WordMap& a, const WordMap& b) const {
  WordMap out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) add_scaled(out, triangle_words(u, v), cu * cv);
  return out;
}

const WordMap& PostLieEnvelope::star_words(const Word& u, const Word& v) const {
  std::pair<Word, Word> key{u, v};
  if (auto it = star_memo_.find(key); it != star_memo_.end()) return it->second;
  WordMap out;
  const std::uint32_t masks = 1u << u.size();
  for (std::uint32_t m = 0; m < masks; ++m) {
    auto [u1, u2] = split_by_mask(u, m);
    const WordMap& t = triangle_words(u2, v);
    if (t.empty()) continue;
    add_scaled(out, g_.mul_maps(single(u1), t), Rational(1));
  }
  return star_memo_.emplace(std::move(key), std::move(out)).first->second;
}

WordMap PostLieEnvelope::star_maps(const WordMap& a, const WordMap& b) const {
  WordMap out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) add_scaled(out, star_words(u, v), cu * cv);
  return out;
}

const WordMap& PostLieEnvelope::star_antipode_word(const Word& u) const {
  if (auto it = santi_memo_.find(u); it != santi_memo_.end()) return it->second;
  WordMap out;
  if (u.empty()) {
    out = single(u);
  } else {
    add_term(out, u, Rational(-1));
    const std::uint32_t full = (1u << u.size()) - 1;
    for (std::uint32_t m = 1; m < full; ++m) {
      auto [u1, u2] = split_by_mask(u, m);
      WordMap s = star_antipode_word(u2);
      add_scaled(out, star_maps(single(u1), s), Rational(-1));
    }
  }
  return santi_memo_.emplace(u, std::move(out)).first->second;
}

EnvElement PostLieEnvelope::triangle(const EnvElement& a, const EnvElement& b) const {
  return g_.map_bilinear(a, b, [this](const Word& u, const Word& v) { return triangle_words(u, v); });
}

EnvElement PostLieEnvelope::star(const EnvElement& a, const EnvElement& b) const {
  return g_.map_bilinear(a, b, [this](const Word& u, const Word& v) { return star_words(u, v); });
}

EnvElement PostLieEnvelope::star_power(const EnvElement& a, unsigned n) const {
  EnvElement out = g_.unit();
  for (unsigned i = 0; i < n; ++i) out = star(out, a);
  return out;
}

EnvElement PostLieEnvelope::star_antipode(const EnvElement& a) const {
  return g_.map_linear(a, [this](const Word& w) { return star_antipode_word(w); });
}

EnvElement PostLieEnvelope::star_antipode_literal(const EnvElement& a) const {
  return g_.map_linear(a, [this](const Word& u) {
    WordMap out;
    if (u.empty()) return single(u);
    add_term(out, u, Rational(-1));
    const std::uint32_t full = (1u << u.size()) - 1;
    for (std::uint32_t m = 1; m < full; ++m) {
      auto [u1, u2] = split_by_mask(u, m);
      add_scaled(out, star_maps(single(u1), g_.word_antipode(u2)), Rational(-1));
    }
    return out;
  });
}

EnvElement PostLieEnvelope::exp_star(const EnvElement& a) const {
  return g_.exp_with(a, [this](const Word& u, const Word& v) { return star_words(u, v); });
}

EnvElement PostLieEnvelope::log_star(const EnvElement& a) const {
  return g_.log_with(a, [this](const Word& u, const Word& v) { return star_words(u, v); });
}

HopfOps PostLieEnvelope::star_ops() const {
  return HopfOps{[this](const Word& u, const Word& v) { return star_words(u, v); },
                 [this](const Word& w) { return star_antipode_word(w); }};
}

const WordMap& PostLieEnvelope::phi_raw(const Word& raw) const {
  if (auto it = phi_memo_.find(raw); it != phi_memo_.end()) return it->second;
  WordMap out;
  if (raw.empty()) {
    out = single(raw);
  } else {
    Word x{raw[0]};
    Word rest(raw.begin() + 1, raw.end());
    WordMap p = phi_raw(rest);
    out = g_.mul_maps(single(x), p);
    add_scaled(out, triangle_maps(single(x), p), Rational(1));
  }
  return phi_memo_.emplace(raw, std::move(out)).first->second;
}

EnvElement PostLieEnvelope::phi(const EnvElement& in) const {
  if (&in.envelope() != &gbar()) in.check_compatible(gbar().zero());
  EnvElement out(&g_, g_.order());
  for (std::size_t d = 0; d < in.parts_.size(); ++d)
    for (const auto& [w, c] : in.parts_[d]) add_scaled(out.parts_[d], phi_raw(w), c);
  return out;
}

EnvElement PostLieEnvelope::phi_word(const Word& raw) const {
  EnvElement out(&g_, g_.order());
  if (raw.size() <= g_.order()) out.parts_[raw.size()] = phi_raw(raw);
  return out;
}

Vector<Rational> PostLieEnvelope::nested_triangle(const std::vector<std::size_t>& letters) const {
  const std::size_t n = algebra_->dim();
  Vector<Rational> v = Vector<Rational>::unit(n, letters.back());
  for (std::size_t i = letters.size() - 1; i-- > 0;) v = product_(Vector<Rational>::unit(n, letters[i]), v);
  return v;
}

namespace {

// Blocks ordered by their maximal element, each holding the letters of raw.
std::vector<std::vector<std::size_t>> blocks_by_max(const SetPartition& p, const Word& raw) {
  SetPartition sorted = p;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.back() < b.back(); });
  std::vector<std::vector<std::size_t>> out;
  for (const auto& block : sorted) {
    std::vector<std::size_t> letters;
    for (std::size_t pos : block) letters.push_back(raw[pos]);
    out.push_back(std::move(letters));
  }
  return out;
}

}  // namespace

EnvElement PostLieEnvelope::phi_partition_sum(const Word& raw) const {
  EnvElement out(&g_, g_.order());
  if (raw.size() > g_.order()) return out;
  WordMap acc;
  for (const auto& p : set_partitions(raw.size())) {
    std::vector<Vector<Rational>> factors;
    for (const auto& letters : blocks_by_max(p, raw)) factors.push_back(nested_triangle(letters));
    add_scaled(acc, g_.product_of_vectors(factors), Rational(1));
  }
  out.parts_[raw.size()] = std::move(acc);
  return out;
}

std::size_t PostLieEnvelope::phi_partition_term_count(std::size_t n) const { return set_partitions(n).size(); }

const WordMap& PostLieEnvelope::phi_inverse_raw(const Word& raw) const {
  if (auto it = phi_inv_memo_.find(raw); it != phi_inv_memo_.end()) return it->second;
  WordMap out;
  if (raw.size() <= 1) {
    out = single(raw);
  } else {
    out = gbar().normal_form(raw);
    for (const auto& p : set_partitions(raw.size())) {
      if (p.size() == raw.size()) continue;
      std::vector<Vector<Rational>> factors;
      for (const auto& letters : blocks_by_max(p, raw)) factors.push_back(nested_triangle(letters));
      WordMap x = g_.product_of_vectors(factors);
      for (const auto& [w, c] : x) add_scaled(out, phi_inverse_raw(w), -c);
    }
  }
  return phi_inv_memo_.emplace(raw, std::move(out)).first->second;
}

EnvElement PostLieEnvelope::phi_inverse(const EnvElement& in) const {
  if (&in.envelope() != &g_) in.check_compatible(g_.zero());
  EnvElement out(&gbar(), g_.order());
  for (std::size_t d = 0; d < in.parts_.size(); ++d)
    for (const auto& [w, c] : in.parts_[d]) add_scaled(out.parts_[d], phi_inverse_raw(w), c);
  return out;
}

EnvElement PostLieEnvelope::phi_inverse_word(const Word& raw) const {
  EnvElement out(&gbar(), g_.order());
  if (raw.size() <= g_.order()) out.parts_[raw.size()] = phi_inverse_raw(raw);
  return out;
}

// ------------------------------------------------------------- F and checks

namespace {

WordMap letterwise(const Envelope& env, const Word& w, const LinearEndo<Rational>& T, bool reversed) {
  std::vector<Vector<Rational>> factors;
  for (auto c : w) factors.push_back(T.image_of_basis(c));
  if (reversed) std::reverse(factors.begin(), factors.end());
  return env.product_of_vectors(factors);
}

void check_gr(const PostLieEnvelope& pe, const RMatrixContext<Rational>& ctx) {
  if (!(pe.gbar_algebra() == ctx.derived())) throw AlgebraMismatch();
}

}  // namespace

EnvElement f_map(const PostLieEnvelope& pe, const RMatrixContext<Rational>& ctx, const EnvElement& a) {
  check_gr(pe, ctx);
  const Envelope& g = pe.g();
  return g.map_linear(a, [&](const Word& w) {
    WordMap out;
    const std::uint32_t masks = 1u << w.size();
    for (std::uint32_t m = 0; m < masks; ++m) {
      auto [w1, w2] = split_by_mask(w, m);
      WordMap plus = letterwise(g, w1, ctx.r_plus(), false);
      WordMap minus = letterwise(g, w2, ctx.r_minus(), true);
      add_scaled(out, g.mul_maps(plus, minus), Rational(w2.size() % 2 ? -1 : 1));
    }
    return out;
  });
}

StsReport sts_product_check(const PostLieEnvelope& pe, const RMatrixContext<Rational>& ctx, const EnvElement& a,
                            const EnvElement& B) {
  check_gr(pe, ctx);
  const Envelope& g = pe.g();
  EnvElement A = f_map(pe, ctx, a);
  EnvElement lhs = pe.star(A, B);
  EnvElement rhs = g.zero();
  const unsigned N = g.order();
  for (unsigned da = 0; da <= N; ++da) {
    for (const auto& [w, ca] : a.part(da)) {
      const std::uint32_t masks = 1u << w.size();
      for (std::uint32_t m = 0; m < masks; ++m) {
        auto [w1, w2] = split_by_mask(w, m);
        WordMap plus = letterwise(g, w1, ctx.r_plus(), false);
        WordMap minus = letterwise(g, w2, ctx.r_minus(), true);
        const Rational sign(w2.size() % 2 ? -1 : 1);
        for (unsigned db = 0; da + db <= N; ++db) {
          WordMap out;
          for (const auto& [v, cb] : B.part(db)) add_scaled(out, g.mul_maps(g.mul_maps(plus, single(v)), minus), cb);
          rhs += (sign * ca) * g.at_degree(out, da + db);
        }
      }
    }
  }
  StsReport rep;
  EnvElement diff = lhs - rhs;
  rep.mismatched_terms = diff.term_count();
  rep.ok = rep.mismatched_terms == 0;
  return rep;
}

std::uint64_t phi_term_count(std::size_t n) {
  if (n == 0) return 1;
  // count[f] = number of terms with f factors
  std::vector<std::uint64_t> count(n + 2, 0);
  count[1] = 1;
  for (std::size_t len = 2; len <= n; ++len) {
    std::vector<std::uint64_t> next(n + 2, 0);
    for (std::size_t f = 1; f < len; ++f) {
      next[f + 1] += count[f];  // x₁ · term
      next[f] += f * count[f];  // x₁ ▷ term, one term per factor
    }
    count = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto c : count) total += c;
  return total;
}

}  // namespace postlie
