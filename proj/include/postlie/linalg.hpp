#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "postlie/errors.hpp"
#include "postlie/scalar.hpp"

namespace postlie {

// Coordinates of a Lie algebra element in the algebra's fixed basis.
template <Scalar S>
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : coords_(n, S(0)) {}
  explicit Vector(std::vector<S> coords) : coords_(std::move(coords)) {}
  Vector(std::initializer_list<S> coords) : coords_(coords) {}

  static Vector unit(std::size_t n, std::size_t i) {
    Vector v(n);
    v.coords_.at(i) = S(1);
    return v;
  }

  std::size_t size() const { return coords_.size(); }
  S& operator[](std::size_t i) { return coords_[i]; }
  const S& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const S> coords() const { return coords_; }

  bool is_zero(Tolerance tol = {}) const {
    for (const S& c : coords_) {
      if (!postlie::is_zero(c, tol)) return false;
    }
    return true;
  }

  double max_abs() const {
    double m = 0;
    for (const S& c : coords_) m = std::max(m, magnitude(c));
    return m;
  }

  Vector& operator+=(const Vector& o) {
    check_same(o);
    for (std::size_t i = 0; i < size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    check_same(o);
    for (std::size_t i = 0; i < size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  Vector& operator*=(const S& c) {
    for (S& x : coords_) x *= c;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator-(Vector a) { return a *= S(-1); }
  friend Vector operator*(const S& c, Vector a) { return a *= c; }
  friend bool operator==(const Vector& a, const Vector& b) { return a.coords_ == b.coords_; }

  void check_same(const Vector& o) const {
    if (o.size() != size()) throw DimensionMismatch(size(), o.size());
  }

 private:
  std::vector<S> coords_;
};

template <Scalar S>
bool approx_equal(const Vector<S>& a, const Vector<S>& b, Tolerance tol = {}) {
  a.check_same(b);
  return (a - b).is_zero(tol);
}

template <Scalar S>
std::string to_string(const Vector<S>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_scalar(v[i]);
  }
  return out + "]";
}

// Dense row-major matrix.
template <Scalar S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix& operator+=(const Matrix& o) {
    check_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const S& c) {
    for (S& x : data_) x *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const S& c, Matrix a) { return a *= c; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch(a.cols_, b.rows_);
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (postlie::is_zero(aik, Tolerance{0.0})) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    }
    return r;
  }

  friend Vector<S> operator*(const Matrix& a, const Vector<S>& v) {
    if (a.cols_ != v.size()) throw DimensionMismatch(a.cols_, v.size());
    Vector<S> r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    }
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  S trace() const {
    S t(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0;
    for (const S& c : data_) m = std::max(m, magnitude(c));
    return m;
  }

  bool is_zero(Tolerance tol = {}) const {
    for (const S& c : data_) {
      if (!postlie::is_zero(c, tol)) return false;
    }
    return true;
  }

  Vector<S> column(std::size_t j) const {
    Vector<S> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void check_shape(const Matrix& o) const {
    if (o.rows_ != rows_) throw DimensionMismatch(rows_, o.rows_);
    if (o.cols_ != cols_) throw DimensionMismatch(cols_, o.cols_);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

template <Scalar S>
Matrix<S> commutator(const Matrix<S>& a, const Matrix<S>& b) {
  return a * b - b * a;
}

// A linear map g -> g; column j holds the image of basis vector j.
template <Scalar S>
class LinearEndo {
 public:
  LinearEndo() = default;
  explicit LinearEndo(Matrix<S> m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw DimensionMismatch(m_.rows(), m_.cols());
  }
  static LinearEndo identity(std::size_t n) { return LinearEndo(Matrix<S>::identity(n)); }
  static LinearEndo zero(std::size_t n) { return LinearEndo(Matrix<S>(n, n)); }

  std::size_t dim() const { return m_.rows(); }
  const Matrix<S>& matrix() const { return m_; }
  Vector<S> operator()(const Vector<S>& x) const { return m_ * x; }
  Vector<S> image_of_basis(std::size_t j) const { return m_.column(j); }

  friend LinearEndo operator+(const LinearEndo& a, const LinearEndo& b) { return LinearEndo(a.m_ + b.m_); }
  friend LinearEndo operator-(const LinearEndo& a, const LinearEndo& b) { return LinearEndo(a.m_ - b.m_); }
  friend LinearEndo operator*(const S& c, const LinearEndo& a) { return LinearEndo(c * a.m_); }
  // Composition a∘b.
  friend LinearEndo operator*(const LinearEndo& a, const LinearEndo& b) { return LinearEndo(a.m_ * b.m_); }
  friend bool operator==(const LinearEndo& a, const LinearEndo& b) { return a.m_ == b.m_; }

 private:
  Matrix<S> m_;
};

// Rank and column-space utilities by Gaussian elimination. Exact for
// rationals; pivots below tau count as zero for doubles.
template <Scalar S>
struct RowEchelon {
  Matrix<S> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

template <Scalar S>
RowEchelon<S> row_reduce(Matrix<S> m, Tolerance tol = {});

template <Scalar S>
std::size_t rank(const Matrix<S>& m, Tolerance tol = {}) {
  return row_reduce(m, tol).rank();
}

// Basis of the null space {v : m v = 0}, one vector per free column.
template <Scalar S>
std::vector<Vector<S>> kernel_basis(const Matrix<S>& m, Tolerance tol = {});

// Columns of m that form a basis of its column space.
template <Scalar S>
std::vector<Vector<S>> image_basis(const Matrix<S>& m, Tolerance tol = {});

// Whether v lies in span(basis).
template <Scalar S>
bool in_span(std::span<const Vector<S>> basis, const Vector<S>& v, Tolerance tol = {});

template <Scalar S>
Matrix<S> from_columns(std::span<const Vector<S>> cols, std::size_t rows);

}  // namespace postlie
