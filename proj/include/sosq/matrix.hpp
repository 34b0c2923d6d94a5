#pragma once

#include <cmath>
#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "sosq/bigfloat.hpp"
#include "sosq/rational.hpp"

namespace sosq {

/// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows)
      for (const auto& v : r) data_.push_back(v);
  }

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows_, b.cols_, a.data_.empty() ? T() : a.data_.front() - a.data_.front());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
    return r;
  }

  Matrix transpose() const {
    Matrix r;
    r.rows_ = cols_;
    r.cols_ = rows_;
    r.data_.reserve(data_.size());
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i) r.data_.push_back((*this)(i, j));
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using FloatMatrix = Matrix<BigFloat>;

inline std::ostream& operator<<(std::ostream& os, const BigFloat& v) { return os << v.to_string(12); }

namespace detail {
inline double zero_like(double) { return 0.0; }
inline BigFloat zero_like(const BigFloat& x) { return BigFloat(x.precision()); }
inline double one_like(double) { return 1.0; }
inline BigFloat one_like(const BigFloat& x) { return BigFloat(1.0, x.precision()); }
inline double abs_of(double v) { return std::fabs(v); }
inline BigFloat abs_of(const BigFloat& v) { return abs(v); }
inline double sqrt_of(double v) { return std::sqrt(v); }
inline BigFloat sqrt_of(const BigFloat& v) { return sqrt(v); }
inline double epsilon_like(double) { return 0x1p-52; }
inline BigFloat epsilon_like(const BigFloat& x) { return ldexp(BigFloat(1.0, x.precision()), -x.precision()); }
}  // namespace detail

template <typename T>
struct JacobiResult {
  std::vector<T> eigenvalues;  // diagonal after the final sweep
  T off_diagonal_norm;         // Frobenius norm of what remains off the diagonal
};

/// Cyclic Jacobi eigenvalue iteration for a symmetric matrix. By Weyl's
/// inequality every true eigenvalue lies within off_diagonal_norm of the
/// corresponding sorted diagonal entry.
template <typename T>
JacobiResult<T> jacobi_eigenvalues(Matrix<T> a, int max_sweeps = 60) {
  const std::size_t n = a.rows();
  if (n == 0) return {{}, T()};
  const T zero = detail::zero_like(a(0, 0));
  auto off_norm = [&] {
    T s = zero;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return detail::sqrt_of(s);
  };
  T total = zero;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) total += a(i, j) * a(i, j);
  const T tol = detail::epsilon_like(a(0, 0)) * detail::sqrt_of(total);
  const T one = detail::one_like(a(0, 0));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_norm() <= tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == zero) continue;
        const T theta = (a(q, q) - a(p, p)) / (a(p, q) + a(p, q));
        T t = one / (detail::abs_of(theta) + detail::sqrt_of(theta * theta + one));
        if (theta < zero) t = zero - t;
        const T c = one / detail::sqrt_of(t * t + one);
        const T s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const T akp = a(k, p);
          const T akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(p, k) = a(k, p);
          a(k, q) = s * akp + c * akq;
          a(q, k) = a(k, q);
        }
        const T apq = a(p, q);
        a(p, p) = a(p, p) - t * apq;
        a(q, q) = a(q, q) + t * apq;
        a(p, q) = zero;
        a(q, p) = zero;
      }
    }
  }
  JacobiResult<T> r{{}, off_norm()};
  for (std::size_t i = 0; i < n; ++i) r.eigenvalues.push_back(a(i, i));
  return r;
}

}  // namespace sosq
