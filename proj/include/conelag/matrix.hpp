#pragma once

// Small dense matrices over any field supported by ScalarTraits.
// Used for left-multiplication / quadratic-representation operators,
// structure-algebra bookkeeping and exact linear solves.

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conelag/scalar.hpp"

namespace conelag {

template <class K>
using Element = std::vector<K>;

template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, K(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<K>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  K trace() const {
    K s(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const K& x) { return ScalarTraits<K>::is_zero(x); });
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const K& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  Matrix operator-() const {
    Matrix m(*this);
    for (auto& x : m.data_) x = -x;
    return m;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const K& s) { return a *= s; }
  friend Matrix operator*(const K& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const K& aik = a(i, k);
        if (ScalarTraits<K>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  Element<K> apply(std::span<const K> x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    Element<K> y(rows_, K(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const K& a = (*this)(i, j);
        if (!ScalarTraits<K>::is_zero(a)) y[i] += a * x[j];
      }
    return y;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<K> data_;
};

template <class K>
Matrix<K> commutator(const Matrix<K>& a, const Matrix<K>& b) {
  return a * b - b * a;
}

/// Trace of a*b without forming the product.
template <class K>
K trace_of_product(const Matrix<K>& a, const Matrix<K>& b) {
  K s(0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const K& x = a(i, j);
      if (!ScalarTraits<K>::is_zero(x)) s += x * b(j, i);
    }
  return s;
}

namespace detail {

// Row pivot with largest magnitude among nonzero candidates. For exact
// fields any nonzero entry is a valid pivot; magnitude just keeps the
// floating instantiations stable.
template <class K>
std::size_t choose_pivot(const Matrix<K>& m, std::size_t col, std::size_t from) {
  std::size_t best = m.rows();
  double best_mag = -1.0;
  for (std::size_t i = from; i < m.rows(); ++i) {
    if (ScalarTraits<K>::is_zero(m(i, col))) continue;
    const double mag = ScalarTraits<K>::magnitude(m(i, col));
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  return best;
}

template <class K>
void swap_rows(Matrix<K>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace detail

template <class K>
K determinant(Matrix<K> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  K det(1);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t p = detail::choose_pivot(m, c, c);
    if (p == n) return K(0);
    if (p != c) {
      detail::swap_rows(m, p, c);
      det = -det;
    }
    det *= m(c, c);
    const K inv = K(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (ScalarTraits<K>::is_zero(m(i, c))) continue;
      const K f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Solves a*X = b for square nonsingular a; throws std::domain_error otherwise.
template <class K>
Matrix<K> solve(Matrix<K> a, Matrix<K> b) {
  if (a.rows() != a.cols() || b.rows() != a.rows()) throw std::invalid_argument("solve shape mismatch");
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t p = detail::choose_pivot(a, c, c);
    if (p == n) throw std::domain_error("singular linear system");
    detail::swap_rows(a, p, c);
    detail::swap_rows(b, p, c);
    const K inv = K(1) / a(c, c);
    for (std::size_t j = c; j < n; ++j) a(c, j) *= inv;
    for (std::size_t j = 0; j < b.cols(); ++j) b(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || ScalarTraits<K>::is_zero(a(i, c))) continue;
      const K f = a(i, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(c, j);
    }
  }
  return b;
}

template <class K>
Element<K> solve(const Matrix<K>& a, std::span<const K> rhs) {
  Matrix<K> b(rhs.size(), 1);
  for (std::size_t i = 0; i < rhs.size(); ++i) b(i, 0) = rhs[i];
  Matrix<K> x = solve(a, std::move(b));
  Element<K> out(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) out[i] = x(i, 0);
  return out;
}

template <class K>
Matrix<K> inverse(const Matrix<K>& a) {
  return solve(a, Matrix<K>::identity(a.rows()));
}

/// Reduced row echelon form in place; returns pivot columns.
template <class K>
std::vector<std::size_t> row_reduce(Matrix<K>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    const std::size_t p = detail::choose_pivot(m, c, row);
    if (p == m.rows()) continue;
    detail::swap_rows(m, p, row);
    const K inv = K(1) / m(row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || ScalarTraits<K>::is_zero(m(i, c))) continue;
      const K f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

template <class K>
std::size_t rank(Matrix<K> m) {
  return row_reduce(m).size();
}

}  // namespace conelag
