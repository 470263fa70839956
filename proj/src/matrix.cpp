#include "iqp/matrix.hpp"

#include "iqp/errors.hpp"

namespace iqp {

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Rat(m.a[i]);
  return r;
}

IntMatrix to_int(const RatMatrix& m) {
  IntMatrix r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) {
    if (!is_integer(m.a[i])) throw internal_error("NotIntegral", "expected integral matrix");
    r.a[i] = m.a[i].get_num();
  }
  return r;
}

RatVec mul(const IntMatrix& m, const RatVec& v) {
  RatVec r(m.rows, Rat(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m(i, j) != 0) r[i] += m(i, j) * v[j];
  return r;
}

RatVec mul(const RatMatrix& m, const IntVec& v) {
  RatVec r(m.rows, Rat(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (v[j] != 0) r[i] += m(i, j) * v[j];
  return r;
}

namespace {

// reduced row echelon form in place; returns pivot columns
std::vector<int> rref(RatMatrix& m) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    Rat inv = 1 / m(r, c);
    for (int j = c; j < m.cols; ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (int j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

Rat det(const RatMatrix& m0) {
  if (m0.rows != m0.cols) throw internal_error("Shape", "det of non-square matrix");
  RatMatrix m = m0;
  int n = m.rows;
  Rat d = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) / m(c, c);
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

Int det(const IntMatrix& m0) {
  // Bareiss fraction-free elimination
  if (m0.rows != m0.cols) throw internal_error("Shape", "det of non-square matrix");
  IntMatrix m = m0;
  int n = m.rows;
  if (n == 0) return 1;
  int sign = 1;
  Int prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

int rank(const RatMatrix& m0) {
  RatMatrix m = m0;
  return static_cast<int>(rref(m).size());
}

int rank(const IntMatrix& m) { return rank(to_rat(m)); }

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows != m.cols) throw internal_error("Shape", "inverse of non-square matrix");
  int n = m.rows;
  RatMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1)
    throw domain_error("Singular", "matrix is not invertible");
  RatMatrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

std::vector<RatVec> kernel(const RatMatrix& m0) {
  RatMatrix m = m0;
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<RatVec> basis;
  for (int f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    RatVec v(m.cols, Rat(0));
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(static_cast<int>(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool solve(const RatMatrix& m, const RatVec& v, RatVec& x) {
  RatMatrix aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = v[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols) return false;
  x.assign(m.cols, Rat(0));
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(static_cast<int>(r), m.cols);
  return true;
}

}  // namespace iqp
