#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coxeter/scalar.hpp"

namespace coxeter {

using Vector = std::vector<Scalar>;

inline Scalar dot(const Vector& x, const Vector& y) {
  Scalar s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero() && !y[i].is_zero()) s += x[i] * y[i];
  return s;
}

inline bool is_zero(const Vector& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

inline Vector operator-(const Vector& x, const Vector& y) {
  Vector r(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

/// s_alpha(v) = v - 2 (v, alpha) / (alpha, alpha) * alpha
inline Vector reflect(const Vector& v, const Vector& alpha) {
  Scalar c = Scalar(2) * dot(v, alpha) / dot(alpha, alpha);
  Vector r(v);
  if (c.is_zero()) return r;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!alpha[i].is_zero()) r[i] -= c * alpha[i];
  return r;
}

struct VectorLess {
  bool operator()(const Vector& x, const Vector& y) const {
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
      if (structural_less(x[i], y[i])) return true;
      if (structural_less(y[i], x[i])) return false;
    }
    return x.size() < y.size();
  }
};

/// Dense row-major matrix over Q(sqrt5).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Vector apply(const Vector& v) const {
    Vector r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero() && !v[j].is_zero()) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Scalar& a = x(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j)
          if (!y(k, j).is_zero()) r(i, j) += a * y(k, j);
      }
    return r;
  }

  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(x);
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= y.data_[i];
    return r;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Exact rank by Bareiss elimination. Over a field the Bareiss quotient is
/// exact; on integral input every intermediate stays integral.
inline std::size_t rank(Matrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  Scalar prev(1);
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) m.swap_rows(p, r);
    const Scalar pivot = m(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Scalar f = m(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        Scalar v = m(i, j) * pivot;
        if (!f.is_zero() && !m(r, j).is_zero()) v -= f * m(r, j);
        m(i, j) = v / prev;
      }
      m(i, c) = Scalar();
    }
    prev = pivot;
    ++r;
  }
  return r;
}

/// Basis of the right kernel {v : M v = 0}, via reduced row echelon form.
inline std::vector<Vector> kernel(Matrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) m.swap_rows(p, r);
    Scalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols);
    v[free] = Scalar(1);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Inverse by Gauss-Jordan; throws std::domain_error when singular.
inline Matrix inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
  Matrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n + i) = Scalar(1);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    if (p != c) a.swap_rows(p, c);
    Scalar inv = a(c, c).inverse();
    for (std::size_t j = 0; j < 2 * n; ++j) a(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      Scalar f = a(i, c);
      for (std::size_t j = 0; j < 2 * n; ++j)
        if (!a(c, j).is_zero()) a(i, j) -= f * a(c, j);
    }
  }
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = a(i, n + j);
  return r;
}

/// codim V^g = rank(M - I).
inline std::size_t fixed_space_codim(const Matrix& m) {
  return rank(m - Matrix::identity(m.rows()));
}

/// ker(M - I) contains ker(N - I), i.e. V^M contains V^N.
inline bool kernel_contains(const Matrix& m, const Matrix& n) {
  const Matrix mi = m - Matrix::identity(m.rows());
  for (const auto& v : kernel(n - Matrix::identity(n.rows())))
    if (!is_zero(mi.apply(v))) return false;
  return true;
}

/// Incrementally maintained span of vectors, kept in echelon form so that
/// membership is a single reduction pass.
class Span {
 public:
  explicit Span(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dimension() const { return rows_.size(); }
  std::size_t ambient() const { return dim_; }

  /// Adds v; returns true if the span grew.
  bool insert(Vector v) {
    reduce(v);
    std::size_t lead = leading(v);
    if (lead == dim_) return false;
    Scalar inv = v[lead].inverse();
    for (auto& c : v) c *= inv;
    // keep rows fully reduced in the new pivot column
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Scalar f = rows_[i][lead];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (!v[j].is_zero()) rows_[i][j] -= f * v[j];
    }
    rows_.push_back(std::move(v));
    leads_.push_back(lead);
    return true;
  }

  bool contains(Vector v) const {
    reduce(v);
    return is_zero(v);
  }

 private:
  std::size_t leading(const Vector& v) const {
    for (std::size_t j = 0; j < dim_; ++j)
      if (!v[j].is_zero()) return j;
    return dim_;
  }
  void reduce(Vector& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Scalar f = v[leads_[i]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (!rows_[i][j].is_zero()) v[j] -= f * rows_[i][j];
    }
  }

  std::size_t dim_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> leads_;
};

}  // namespace coxeter
