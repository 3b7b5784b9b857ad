#include "postlie/liealg.hpp"

#include <algorithm>
#include <regex>

namespace postlie {

template <Scalar S>
LieAlgebra<S> LieAlgebra<S>::create(std::size_t dim, std::vector<std::string> labels,
                                    std::span<const StructureEntry<S>> entries,
                                    std::optional<std::vector<Matrix<S>>> realization,
                                    Tolerance tol) {
  std::vector<S> tensor(dim * dim * dim, S(0));
  std::vector<bool> seen(dim * dim * dim, false);
  auto at = [dim](std::size_t i, std::size_t j, std::size_t k) { return (i * dim + j) * dim + k; };
  for (const auto& e : entries) {
    if (e.i >= dim || e.j >= dim || e.k >= dim) {
      throw DimensionMismatch(dim, std::max({e.i, e.j, e.k}) + 1);
    }
    if (e.i == e.j) {
      if (!is_zero(e.value, tol)) throw AntisymmetryViolation(e.i, e.j, e.k);
      continue;
    }
    S neg = -e.value;
    for (auto [idx, val] : {std::pair{at(e.i, e.j, e.k), e.value}, std::pair{at(e.j, e.i, e.k), neg}}) {
      if (seen[idx] && !is_zero(S(tensor[idx] - val), tol)) {
        throw AntisymmetryViolation(e.i, e.j, e.k);
      }
      tensor[idx] = val;
      seen[idx] = true;
    }
  }
  return from_tensor(dim, std::move(labels), std::move(tensor), std::move(realization), tol);
}

template <Scalar S>
LieAlgebra<S> LieAlgebra<S>::from_tensor(std::size_t dim, std::vector<std::string> labels,
                                         std::vector<S> tensor,
                                         std::optional<std::vector<Matrix<S>>> realization,
                                         Tolerance tol) {
  if (dim == 0) throw InvalidInput("Lie algebra dimension must be positive");
  if (tensor.size() != dim * dim * dim) throw DimensionMismatch(dim * dim * dim, tensor.size());
  if (labels.empty()) {
    for (std::size_t i = 0; i < dim; ++i) labels.push_back("x" + std::to_string(i));
  }
  if (labels.size() != dim) throw DimensionMismatch(dim, labels.size());
  LieAlgebra L;
  L.dim_ = dim;
  L.labels_ = std::move(labels);
  L.tensor_ = std::move(tensor);
  L.realization_ = std::move(realization);
  L.tol_ = tol;
  L.validate();
  return L;
}

template <Scalar S>
void LieAlgebra<S>::validate() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t k = 0; k < dim_; ++k) {
        if (!is_zero(S(c(i, j, k) + c(j, i, k)), tol_)) throw AntisymmetryViolation(i, j, k);
      }
    }
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      for (std::size_t k = j + 1; k < dim_; ++k) {
        Vector<S> d = jacobi_defect(i, j, k);
        for (std::size_t l = 0; l < dim_; ++l) {
          if (!is_zero(d[l], tol_)) throw JacobiViolation(i, j, k, l, format_scalar(d[l]));
        }
      }
    }
  }
  if (!realization_) return;
  const auto& rho = *realization_;
  if (rho.size() != dim_) throw DimensionMismatch(dim_, rho.size());
  std::size_t m = rho.front().rows();
  for (const auto& r : rho) {
    if (r.rows() != m || r.cols() != m) throw DimensionMismatch(m, r.cols());
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      Matrix<S> lhs(m, m);
      for (std::size_t k = 0; k < dim_; ++k) {
        if (!is_zero(c(i, j, k), Tolerance{0.0})) lhs += c(i, j, k) * rho[k];
      }
      if (!(lhs - commutator(rho[i], rho[j])).is_zero(tol_)) throw RealizationMismatch(i, j);
    }
  }
}

template <Scalar S>
Vector<S> LieAlgebra<S>::jacobi_defect(std::size_t i, std::size_t j, std::size_t k) const {
  // [[x_i,x_j],x_k] + [[x_k,x_i],x_j] + [[x_j,x_k],x_i]
  Vector<S> d(dim_);
  for (std::size_t m = 0; m < dim_; ++m) {
    const S& a = c(i, j, m);
    const S& b = c(k, i, m);
    const S& e = c(j, k, m);
    for (std::size_t l = 0; l < dim_; ++l) {
      d[l] += a * c(m, k, l) + b * c(m, j, l) + e * c(m, i, l);
    }
  }
  return d;
}

template <Scalar S>
double LieAlgebra<S>::max_jacobi_defect() const {
  double worst = 0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) worst = std::max(worst, jacobi_defect(i, j, k).max_abs());
  return worst;
}

template <Scalar S>
bool LieAlgebra<S>::is_abelian() const {
  return std::all_of(tensor_.begin(), tensor_.end(), [](const S& v) { return is_zero(v, Tolerance{0.0}); });
}

template <Scalar S>
std::size_t LieAlgebra<S>::realization_size() const {
  if (!realization_) throw NoRealization();
  return realization_->front().rows();
}

template <Scalar S>
const Matrix<S>& LieAlgebra<S>::realization(std::size_t i) const {
  if (!realization_) throw NoRealization();
  return realization_->at(i);
}

template <Scalar S>
const std::vector<Matrix<S>>& LieAlgebra<S>::realization_matrices() const {
  if (!realization_) throw NoRealization();
  return *realization_;
}

template <Scalar S>
Matrix<S> LieAlgebra<S>::represent(const Vector<S>& x) const {
  check_conforms(x);
  if (!realization_) throw NoRealization();
  std::size_t m = realization_size();
  Matrix<S> r(m, m);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!is_zero(x[i], Tolerance{0.0})) r += x[i] * (*realization_)[i];
  }
  return r;
}

template <Scalar S>
Vector<S> bracket(const LieAlgebra<S>& L, const Vector<S>& x, const Vector<S>& y) {
  L.check_conforms(x);
  L.check_conforms(y);
  const std::size_t n = L.dim();
  Vector<S> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(x[i], Tolerance{0.0})) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || is_zero(y[j], Tolerance{0.0})) continue;
      S xy = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k) {
        if (!is_zero(L.c(i, j, k), Tolerance{0.0})) r[k] += xy * L.c(i, j, k);
      }
    }
  }
  return r;
}

template <Scalar S>
LinearEndo<S> ad(const LieAlgebra<S>& L, const Vector<S>& x) {
  L.check_conforms(x);
  const std::size_t n = L.dim();
  Matrix<S> m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector<S> col = bracket(L, x, L.basis(j));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return LinearEndo<S>(std::move(m));
}

template <Scalar S>
S trace_form(const LieAlgebra<S>& L, const Vector<S>& x, const Vector<S>& y) {
  if (!L.has_realization()) throw NoRealization();
  return (L.represent(x) * L.represent(y)).trace();
}

template <Scalar S>
LieAlgebra<S> with_adjoint_realization(const LieAlgebra<S>& L) {
  std::vector<Matrix<S>> mats;
  for (std::size_t i = 0; i < L.dim(); ++i) mats.push_back(ad(L, L.basis(i)).matrix());
  return LieAlgebra<S>::from_tensor(L.dim(), L.labels(), L.tensor(), std::move(mats), L.tolerance());
}

template <Scalar S>
Vector<S> coordinates_of(const LieAlgebra<S>& L, const Matrix<S>& m) {
  const auto& rho = L.realization_matrices();
  const std::size_t sz = L.realization_size();
  if (m.rows() != sz || m.cols() != sz) throw DimensionMismatch(sz, m.rows());
  const std::size_t n = L.dim();
  Matrix<S> aug(sz * sz, n + 1);
  for (std::size_t r = 0; r < sz; ++r) {
    for (std::size_t c = 0; c < sz; ++c) {
      for (std::size_t i = 0; i < n; ++i) aug(r * sz + c, i) = rho[i](r, c);
      aug(r * sz + c, n) = m(r, c);
    }
  }
  RowEchelon<S> ech = row_reduce(aug, L.tolerance());
  Vector<S> x(n);
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    if (ech.pivots[r] == n) throw InvalidInput("matrix is not in the span of the realization");
    x[ech.pivots[r]] = ech.reduced(r, n);
  }
  return x;
}

LieAlgebra<double> to_float(const LieAlgebra<Rational>& L, Tolerance tol) {
  std::vector<double> tensor;
  tensor.reserve(L.tensor().size());
  for (const auto& v : L.tensor()) tensor.push_back(v.get_d());
  std::optional<std::vector<Matrix<double>>> real;
  if (L.has_realization()) {
    real.emplace();
    for (const auto& m : L.realization_matrices()) {
      Matrix<double> d(m.rows(), m.cols());
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).get_d();
      real->push_back(std::move(d));
    }
  }
  return LieAlgebra<double>::from_tensor(L.dim(), L.labels(), std::move(tensor), std::move(real), tol);
}

Vector<double> to_float(const Vector<Rational>& v) {
  Vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].get_d();
  return r;
}

LinearEndo<double> to_float(const LinearEndo<Rational>& m) {
  const std::size_t n = m.dim();
  Matrix<double> d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = m.matrix()(i, j).get_d();
  return LinearEndo<double>(std::move(d));
}

namespace {

// Structure constants and realization of gl(n) for a given ordering of the
// elementary matrices E_{rc}.
template <Scalar S>
LieAlgebra<S> gl_with_order(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& order) {
  const std::size_t dim = order.size();
  std::vector<std::size_t> index(n * n);
  std::vector<std::string> labels;
  std::vector<Matrix<S>> mats;
  for (std::size_t a = 0; a < dim; ++a) {
    auto [r, c] = order[a];
    index[r * n + c] = a;
    labels.push_back("E" + std::to_string(r + 1) + std::to_string(c + 1));
    Matrix<S> m(n, n);
    m(r, c) = S(1);
    mats.push_back(std::move(m));
  }
  // [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb
  std::vector<S> tensor(dim * dim * dim, S(0));
  for (std::size_t p = 0; p < dim; ++p) {
    for (std::size_t q = 0; q < dim; ++q) {
      auto [a, b] = order[p];
      auto [c, d] = order[q];
      if (b == c) tensor[(p * dim + q) * dim + index[a * n + d]] += S(1);
      if (d == a) tensor[(p * dim + q) * dim + index[c * n + b]] -= S(1);
    }
  }
  return LieAlgebra<S>::from_tensor(dim, std::move(labels), std::move(tensor), std::move(mats));
}

}  // namespace

template <Scalar S>
LieAlgebra<S> builtin_gl(std::size_t n) {
  if (n < 2) throw InvalidInput("gl(n) requires n >= 2");
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) order.emplace_back(r, c);
  return gl_with_order<S>(n, order);
}

template <Scalar S>
LieAlgebra<S> builtin_sl2() {
  // basis (e, h, f): [e,h] = -2e, [e,f] = h, [h,f] = -2f
  std::vector<StructureEntry<S>> entries = {
      {0, 1, 0, S(-2)},
      {0, 2, 1, S(1)},
      {1, 2, 2, S(-2)},
  };
  Matrix<S> e(2, 2), h(2, 2), f(2, 2);
  e(0, 1) = S(1);
  h(0, 0) = S(1);
  h(1, 1) = S(-1);
  f(1, 0) = S(1);
  return LieAlgebra<S>::create(3, {"e", "h", "f"}, entries, std::vector<Matrix<S>>{e, h, f});
}

template <Scalar S>
LieAlgebra<S> builtin_so3() {
  std::vector<StructureEntry<S>> entries = {
      {0, 1, 2, S(1)},
      {1, 2, 0, S(1)},
      {2, 0, 1, S(1)},
  };
  // (L_i)_{jk} = -eps_{ijk}
  std::vector<Matrix<S>> mats(3, Matrix<S>(3, 3));
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    mats[i](j, k) = S(-1);
    mats[i](k, j) = S(1);
  }
  return LieAlgebra<S>::create(3, {"x0", "x1", "x2"}, entries, std::move(mats));
}

template <Scalar S>
LinearEndo<S> index_projection(std::size_t dim, std::span<const std::size_t> indices) {
  Matrix<S> m(dim, dim);
  for (std::size_t i : indices) {
    if (i >= dim) throw DimensionMismatch(dim, i + 1);
    m(i, i) = S(1);
  }
  return LinearEndo<S>(std::move(m));
}

template <Scalar S>
SplitAlgebra<S> builtin_upper_lower_split(std::size_t n) {
  if (n < 2) throw InvalidInput("upper_lower_split(n) requires n >= 2");
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) order.emplace_back(r, c);
  const std::size_t upper = order.size();
  for (std::size_t r = 1; r < n; ++r)
    for (std::size_t c = 0; c < r; ++c) order.emplace_back(r, c);
  LieAlgebra<S> L = gl_with_order<S>(n, order);
  std::vector<std::size_t> plus, minus;
  for (std::size_t a = 0; a < order.size(); ++a) (a < upper ? plus : minus).push_back(a);
  auto pp = index_projection<S>(L.dim(), plus);
  auto pm = index_projection<S>(L.dim(), minus);
  return SplitAlgebra<S>{std::move(L), std::move(plus), std::move(minus), std::move(pp), std::move(pm)};
}

template <Scalar S>
LieAlgebra<S> builtin(const std::string& name) {
  static const std::regex pattern(R"(\s*(gl|sl|so|upper_lower_split)\s*\(\s*(\d+)\s*\)\s*)");
  std::smatch m;
  if (!std::regex_match(name, m, pattern)) throw UnsupportedName(name);
  const std::string family = m[1];
  const std::size_t n = std::stoul(m[2]);
  if (family == "gl" && n >= 2) return builtin_gl<S>(n);
  if (family == "sl" && n == 2) return builtin_sl2<S>();
  if (family == "so" && n == 3) return builtin_so3<S>();
  if (family == "upper_lower_split" && n >= 2) return builtin_upper_lower_split<S>(n).algebra;
  throw UnsupportedName(name);
}

#define POSTLIE_INSTANTIATE(S)                                                           \
  template class LieAlgebra<S>;                                                         \
  template Vector<S> bracket(const LieAlgebra<S>&, const Vector<S>&, const Vector<S>&); \
  template LinearEndo<S> ad(const LieAlgebra<S>&, const Vector<S>&);                    \
  template S trace_form(const LieAlgebra<S>&, const Vector<S>&, const Vector<S>&);      \
  template LieAlgebra<S> with_adjoint_realization(const LieAlgebra<S>&);                \
  template Vector<S> coordinates_of(const LieAlgebra<S>&, const Matrix<S>&);            \
  template LieAlgebra<S> builtin_gl(std::size_t);                                       \
  template LieAlgebra<S> builtin_sl2();                                                 \
  template LieAlgebra<S> builtin_so3();                                                 \
  template LinearEndo<S> index_projection(std::size_t, std::span<const std::size_t>);   \
  template SplitAlgebra<S> builtin_upper_lower_split(std::size_t);                      \
  template LieAlgebra<S> builtin(const std::string&);

POSTLIE_INSTANTIATE(Rational)
POSTLIE_INSTANTIATE(double)
#undef POSTLIE_INSTANTIATE

}  // namespace postlie
