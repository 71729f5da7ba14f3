#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qexpmap/qscalar.hpp"

namespace qexpmap {

/// Dense row-major matrix. Entries may be scalars or noncommutative
/// polynomials; products keep the left factor's entries on the left.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  template <class Fn>
  auto map(Fn&& fn) const -> Matrix<decltype(fn(std::declval<const T&>()))> {
    using U = decltype(fn(std::declval<const T&>()));
    Matrix<U> r;
    r.reset(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = fn((*this)(i, j));
    return r;
  }

  void reset(std::size_t rows, std::size_t cols) {
    rows_ = rows;
    cols_ = cols;
    data_.assign(rows * cols, T{});
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
    return r;
  }

  /// Product with an explicit zero (noncommutative entries need one that
  /// knows its presentation).
  friend Matrix multiply(const Matrix& a, const Matrix& b, const T& zero) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    Matrix r(a.rows_, b.cols_, zero);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
    return r;
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: dimension mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

/// Kronecker product; index (i1, i2) maps to i1 * b.rows() + i2.
template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b, const T& zero) {
  Matrix<T> r(a.rows() * b.rows(), a.cols() * b.cols(), zero);
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1)
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
          r(i1 * b.rows() + i2, j1 * b.cols() + j2) = a(i1, j1) * b(i2, j2);
  return r;
}

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverse over a coefficient field by fraction-free (Bareiss) elimination
/// on [M | I] followed by back substitution. Pivot: first nonzero entry at
/// or below the diagonal.
template <class F>
Matrix<typename F::Scalar> fraction_free_inverse(const Matrix<typename F::Scalar>& m, const F& field) {
  using S = typename F::Scalar;
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse of a non-square matrix");
  const S zero{};
  const S one = field.lift(HalfLaurent(1));
  Matrix<S> a(n, 2 * n, zero);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n + i) = one;
  }
  S prev = one;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && field.is_zero(a(piv, k))) ++piv;
    if (piv == n) throw SingularMatrix("matrix is singular");
    if (piv != k)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a(k, j), a(piv, j));
    const S prev_inv = field.inverse(prev);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < 2 * n; ++j) a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) * prev_inv;
      a(i, k) = zero;
    }
    prev = a(k, k);
  }
  Matrix<S> x(n, n, zero);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t ii = n; ii-- > 0;) {
      S acc = a(ii, n + c);
      for (std::size_t j = ii + 1; j < n; ++j) acc -= a(ii, j) * x(j, c);
      x(ii, c) = acc * field.inverse(a(ii, ii));
    }
  return x;
}

}  // namespace qexpmap
