#include "postlie/linalg.hpp"

#include <cmath>

namespace postlie {

template <Scalar S>
RowEchelon<S> row_reduce(Matrix<S> m, Tolerance tol) {
  RowEchelon<S> out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = m.rows();
    if constexpr (is_exact_v<S>) {
      for (std::size_t r = row; r < m.rows(); ++r) {
        if (sgn(m(r, col)) != 0) {
          pivot = r;
          break;
        }
      }
    } else {
      double best = tol.tau;
      for (std::size_t r = row; r < m.rows(); ++r) {
        if (std::abs(m(r, col)) > best) {
          best = std::abs(m(r, col));
          pivot = r;
        }
      }
    }
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    }
    S inv = S(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col), Tolerance{0.0})) continue;
      S f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <Scalar S>
std::vector<Vector<S>> kernel_basis(const Matrix<S>& m, Tolerance tol) {
  RowEchelon<S> ech = row_reduce(m, tol);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : ech.pivots) is_pivot[p] = true;
  std::vector<Vector<S>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<S> v(m.cols());
    v[free] = S(1);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
      v[ech.pivots[r]] = -ech.reduced(r, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

template <Scalar S>
std::vector<Vector<S>> image_basis(const Matrix<S>& m, Tolerance tol) {
  RowEchelon<S> ech = row_reduce(m, tol);
  std::vector<Vector<S>> basis;
  for (std::size_t p : ech.pivots) basis.push_back(m.column(p));
  return basis;
}

template <Scalar S>
Matrix<S> from_columns(std::span<const Vector<S>> cols, std::size_t rows) {
  Matrix<S> m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw DimensionMismatch(rows, cols[j].size());
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

template <Scalar S>
bool in_span(std::span<const Vector<S>> basis, const Vector<S>& v, Tolerance tol) {
  if (basis.empty()) return v.is_zero(tol);
  Matrix<S> a = from_columns(basis, v.size());
  std::vector<Vector<S>> extended(basis.begin(), basis.end());
  extended.push_back(v);
  Matrix<S> b = from_columns<S>(extended, v.size());
  return rank(a, tol) == rank(b, tol);
}

#define POSTLIE_INSTANTIATE(S)                                                          \
  template RowEchelon<S> row_reduce(Matrix<S>, Tolerance);                             \
  template std::vector<Vector<S>> kernel_basis(const Matrix<S>&, Tolerance);           \
  template std::vector<Vector<S>> image_basis(const Matrix<S>&, Tolerance);            \
  template Matrix<S> from_columns(std::span<const Vector<S>>, std::size_t);            \
  template bool in_span(std::span<const Vector<S>>, const Vector<S>&, Tolerance);

POSTLIE_INSTANTIATE(Rational)
POSTLIE_INSTANTIATE(double)
#undef POSTLIE_INSTANTIATE

}  // namespace postlie
