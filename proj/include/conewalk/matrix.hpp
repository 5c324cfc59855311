#pragma once

#include <conewalk/arithmetic.hpp>
#include <conewalk/errors.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conewalk {

/// Dense row-major matrix over an exact ring.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  Matrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw InputError("ragged matrix literal");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (rows[i].size() != m.cols_) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  /// Matrix whose columns are the given vectors (all of length `height`).
  static Matrix from_columns(const std::vector<std::vector<T>>& cols,
                             std::size_t height) {
    Matrix m(height, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != height) throw InputError("ragged matrix columns");
      for (std::size_t i = 0; i < height; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<T> row(std::size_t i) const {
    return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x) {
    if (a.cols_ != x.size()) throw InputError("matrix-vector dimension mismatch");
    std::vector<T> y(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) y[i] += a(i, k) * x[k];
    return y;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw InputError("matrix sum dimension mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw InputError("matrix difference dimension mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

inline std::string to_string(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += m(i, j).str();
    }
    s += "]";
  }
  return s + "]";
}

/// Exact determinant by Bareiss fraction-free elimination.
inline Integer determinant(IntMatrix a) {
  if (!a.square()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Rank over the rationals.
template <typename T>
std::size_t rank(const Matrix<T>& m) {
  RatMatrix a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = Rational(m(i, j));
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

inline std::size_t rank_of_vectors(const std::vector<std::vector<Integer>>& vs,
                                   std::size_t dim) {
  if (vs.empty()) return 0;
  IntMatrix m(vs.size(), dim);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = vs[i][j];
  return rank(m);
}

/// Unique solution of a nonsingular square rational system, or nullopt when
/// the matrix is singular.
inline std::optional<std::vector<Rational>> solve_rational(RatMatrix a,
                                                           std::vector<Rational> b) {
  const std::size_t n = a.rows();
  if (!a.square() || b.size() != n) throw InputError("solve: dimension mismatch");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    a.swap_rows(c, p);
    std::swap(b[c], b[p]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
      b[i] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a(i, i);
  return b;
}

/// Extended gcd: returns g = gcd(a,b) >= 0 with s*a + t*b = g.
inline Integer extended_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t) {
  Integer old_r = a, r = b, old_s = 1, ss = 0, old_t = 0, tt = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * ss;
    old_s = ss;
    ss = tmp;
    tmp = old_t - q * tt;
    old_t = tt;
    tt = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

/// Column echelon form A*U = E with U unimodular. Column k < rank carries
/// its leading nonzero entry (positive) in row pivot_rows[k]; all entries of
/// that column above the pivot row vanish; columns >= rank are zero.
struct ColumnEchelon {
  IntMatrix echelon;
  IntMatrix transform;
  std::vector<std::size_t> pivot_rows;
  std::size_t rank() const { return pivot_rows.size(); }
};

inline ColumnEchelon column_echelon(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix e = a;
  IntMatrix u = IntMatrix::identity(n);
  std::vector<std::size_t> pivots;
  auto column_op = [&](IntMatrix& x, std::size_t c, std::size_t j, const Integer& s,
                       const Integer& t, const Integer& p, const Integer& q) {
    // [col_c, col_j] <- [s*col_c + t*col_j, p*col_c + q*col_j]
    for (std::size_t i = 0; i < x.rows(); ++i) {
      Integer xc = x(i, c), xj = x(i, j);
      x(i, c) = s * xc + t * xj;
      x(i, j) = p * xc + q * xj;
    }
  };
  std::size_t c = 0;
  for (std::size_t i = 0; i < m && c < n; ++i) {
    for (std::size_t j = c + 1; j < n; ++j) {
      if (e(i, j) == 0) continue;
      Integer a0 = e(i, c), b0 = e(i, j), s, t;
      Integer g = extended_gcd(a0, b0, s, t);
      Integer p = -b0 / g, q = a0 / g;
      column_op(e, c, j, s, t, p, q);
      column_op(u, c, j, s, t, p, q);
    }
    if (e(i, c) == 0) continue;
    if (e(i, c) < 0) {
      for (std::size_t r = 0; r < m; ++r) e(r, c) = -e(r, c);
      for (std::size_t r = 0; r < n; ++r) u(r, c) = -u(r, c);
    }
    pivots.push_back(i);
    ++c;
  }
  return {std::move(e), std::move(u), std::move(pivots)};
}

/// Hermite normal form of a list of integer row vectors (zero rows dropped).
/// Pivots are positive and entries above each pivot are reduced into
/// [0, pivot).
inline std::vector<std::vector<Integer>> hermite_rows(std::vector<std::vector<Integer>> rows,
                                                      std::size_t dim) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < dim && r < rows.size(); ++col) {
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      Integer s, t;
      Integer g = extended_gcd(rows[r][col], rows[i][col], s, t);
      Integer p = -rows[i][col] / g, q = rows[r][col] / g;
      for (std::size_t j = 0; j < dim; ++j) {
        Integer x = rows[r][j], y = rows[i][j];
        rows[r][j] = s * x + t * y;
        rows[i][j] = p * x + q * y;
      }
    }
    if (rows[r][col] == 0) continue;
    if (rows[r][col] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Integer f = floor_div(rows[i][col], rows[r][col]);
      if (f == 0) continue;
      for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

/// Saturated integer basis of {x in Z^n : A x = 0}, in Hermite normal form.
inline std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& a) {
  ColumnEchelon ce = column_echelon(a);
  std::vector<std::vector<Integer>> basis;
  for (std::size_t j = ce.rank(); j < a.cols(); ++j) basis.push_back(ce.transform.column(j));
  return hermite_rows(std::move(basis), a.cols());
}

/// Some integer solution of A x = b, or nullopt when none exists.
inline std::optional<std::vector<Integer>> solve_integer(const ColumnEchelon& ce,
                                                         const std::vector<Integer>& b) {
  const IntMatrix& e = ce.echelon;
  if (b.size() != e.rows()) throw InputError("solve_integer: dimension mismatch");
  std::vector<Integer> y(e.cols(), Integer(0));
  std::size_t k = 0;
  for (std::size_t i = 0; i < e.rows(); ++i) {
    Integer acc = b[i];
    for (std::size_t c = 0; c < k; ++c) acc -= e(i, c) * y[c];
    if (k < ce.rank() && ce.pivot_rows[k] == i) {
      if (acc % e(i, k) != 0) return std::nullopt;
      y[k] = acc / e(i, k);
      ++k;
    } else if (acc != 0) {
      return std::nullopt;
    }
  }
  return ce.transform * y;
}

inline std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a,
                                                         const std::vector<Integer>& b) {
  return solve_integer(column_echelon(a), b);
}

}  // namespace conewalk
