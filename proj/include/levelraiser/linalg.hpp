#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "levelraiser/numtheory.hpp"

namespace levelraiser {

/// Dense row-major matrix. Vectors are rows throughout the library and
/// operators act on the right: v -> v * A.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  void set_row(std::size_t i, const std::vector<T>& values) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = values[j];
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void append_row(const std::vector<T>& values) {
    if (rows_ == 0) cols_ = values.size();
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;
using ModMatrix = Matrix<std::int64_t>;

/// Reduced row echelon form; pivot columns are written to `pivots` if given.
QMatrix rref(QMatrix a, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const QMatrix& a);
/// Basis (rows, in RREF) of {x : x * a = 0}.
QMatrix left_kernel(const QMatrix& a);
/// Basis (rows) of {y : a * y^T = 0}.
QMatrix right_kernel(const QMatrix& a);
QMatrix inverse(const QMatrix& a);
/// Coordinates of the rows of `vectors` with respect to the row basis
/// `basis`; every row must lie in the span.
QMatrix coordinates(const QMatrix& basis, const QMatrix& vectors);
/// Matrix of the operator `op` restricted to the invariant subspace spanned
/// by the rows of `basis`.
QMatrix restrict_to(const QMatrix& basis, const QMatrix& op);
/// Coefficients of det(xI - a), constant term first.
std::vector<Rational> charpoly(const QMatrix& a);

QMatrix to_rational(const ZMatrix& a);
/// Exact conversion; throws if an entry is not integral.
ZMatrix to_integer(const QMatrix& a);
ModMatrix reduce_mod(const ZMatrix& a, std::int64_t ell);

/// Determinant by Bareiss fraction-free elimination.
Integer bareiss_determinant(ZMatrix a);
/// Fraction-free row echelon form (Bareiss); returns rank and pivot columns.
std::size_t bareiss_echelon(ZMatrix& a, std::vector<std::size_t>* pivots = nullptr);

/// Row Hermite normal form; zero rows are dropped.
ZMatrix hnf(ZMatrix a);
/// Z-basis of {x in Z^m : x * a = 0}.
ZMatrix integer_left_kernel(const ZMatrix& a);
/// Z-basis of (row space of `rows` over Q) intersected with Z^n.
ZMatrix saturate(const QMatrix& rows);

// Arithmetic over F_ell, ell prime.
ModMatrix rref_mod(ModMatrix a, std::int64_t ell, std::vector<std::size_t>* pivots = nullptr);
ModMatrix left_kernel_mod(const ModMatrix& a, std::int64_t ell);
ModMatrix multiply_mod(const ModMatrix& a, const ModMatrix& b, std::int64_t ell);
std::vector<std::int64_t> charpoly_mod(const ModMatrix& a, std::int64_t ell);

}  // namespace levelraiser
