#pragma once

#include <cassert>
#include <vector>

#include "iqp/rational.hpp"

namespace iqp {

template <class T>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, T(0)) {}

  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rs, int ncols = -1) {
    int c = ncols >= 0 ? ncols : (rs.empty() ? 0 : static_cast<int>(rs[0].size()));
    Matrix m(static_cast<int>(rs.size()), c);
    for (int i = 0; i < m.rows; ++i) {
      assert(static_cast<int>(rs[i].size()) == c);
      for (int j = 0; j < c; ++j) m(i, j) = rs[i][j];
    }
    return m;
  }
  static Matrix from_cols(const std::vector<std::vector<T>>& cs, int nrows = -1) {
    return from_rows(cs, nrows).transpose();
  }

  std::vector<T> row(int i) const {
    return std::vector<T>(a.begin() + static_cast<long>(i) * cols,
                          a.begin() + static_cast<long>(i + 1) * cols);
  }
  std::vector<T> col(int j) const {
    std::vector<T> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_row(int i, const std::vector<T>& v) {
    for (int j = 0; j < cols; ++j) (*this)(i, j) = v[j];
  }
  Matrix transpose() const {
    Matrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator<(const Matrix& o) const {
    if (rows != o.rows) return rows < o.rows;
    if (cols != o.cols) return cols < o.cols;
    return a < o.a;
  }
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

template <class T>
Matrix<T> operator*(const Matrix<T>& x, const Matrix<T>& y) {
  assert(x.cols == y.rows);
  Matrix<T> r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
    }
  return r;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& x, const std::vector<T>& v) {
  assert(x.cols == static_cast<int>(v.size()));
  std::vector<T> r(x.rows, T(0));
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r[i] += x(i, j) * v[j];
  return r;
}

RatMatrix to_rat(const IntMatrix& m);
IntMatrix to_int(const RatMatrix& m);  // requires integral entries
RatVec mul(const IntMatrix& m, const RatVec& v);
RatVec mul(const RatMatrix& m, const IntVec& v);

Rat det(const RatMatrix& m);
Int det(const IntMatrix& m);
int rank(const RatMatrix& m);
int rank(const IntMatrix& m);
// throws Domain "Singular" when not invertible
RatMatrix inverse(const RatMatrix& m);
// basis (as rows) of the right kernel {x : m x = 0}
std::vector<RatVec> kernel(const RatMatrix& m);
// some solution of m x = v, or false
bool solve(const RatMatrix& m, const RatVec& v, RatVec& x);

}  // namespace iqp
