#include "iqp/lattice.hpp"

#include <algorithm>

#include "iqp/errors.hpp"

namespace iqp {

namespace {

void row_combine(IntMatrix& m, int r1, int r2, const Int& a, const Int& b, const Int& c,
                 const Int& d) {
  // (row r1, row r2) <- (a*r1 + b*r2, c*r1 + d*r2)
  for (int j = 0; j < m.cols; ++j) {
    Int x = m(r1, j), y = m(r2, j);
    m(r1, j) = a * x + b * y;
    m(r2, j) = c * x + d * y;
  }
}

void row_addmul(IntMatrix& m, int dst, int src, const Int& f) {
  for (int j = 0; j < m.cols; ++j) m(dst, j) += f * m(src, j);
}

void col_addmul(IntMatrix& m, int dst, int src, const Int& f) {
  for (int i = 0; i < m.rows; ++i) m(i, dst) += f * m(i, src);
}

void row_swap(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols; ++j) std::swap(m(a, j), m(b, j));
}

void col_swap(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows; ++i) std::swap(m(i, a), m(i, b));
}

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HNFResult hnf(const IntMatrix& m) {
  HNFResult res{m, IntMatrix::identity(m.rows)};
  IntMatrix& H = res.H;
  IntMatrix& U = res.U;
  int r = 0;
  for (int c = 0; c < H.cols && r < H.rows; ++c) {
    for (int i = r + 1; i < H.rows; ++i) {
      if (H(i, c) == 0) continue;
      Int g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), H(r, c).get_mpz_t(),
                 H(i, c).get_mpz_t());
      Int a = H(r, c) / g, b = H(i, c) / g;
      row_combine(H, r, i, x, y, -b, a);
      row_combine(U, r, i, x, y, -b, a);
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) {
      for (int j = 0; j < H.cols; ++j) H(r, j) = -H(r, j);
      for (int j = 0; j < U.cols; ++j) U(r, j) = -U(r, j);
    }
    for (int i = 0; i < r; ++i) {
      Int q = fdiv(H(i, c), H(r, c));
      if (q != 0) {
        row_addmul(H, i, r, -q);
        row_addmul(U, i, r, -q);
      }
    }
    ++r;
  }
  return res;
}

SNFResult snf(const IntMatrix& m) {
  SNFResult res{m, IntMatrix::identity(m.rows), IntMatrix::identity(m.cols)};
  IntMatrix& D = res.D;
  IntMatrix& P = res.P;
  IntMatrix& Q = res.Q;
  int n = std::min(D.rows, D.cols);
  for (int t = 0; t < n; ++t) {
    for (;;) {
      int pi = -1, pj = -1;
      for (int i = t; i < D.rows; ++i)
        for (int j = t; j < D.cols; ++j)
          if (D(i, j) != 0 && (pi < 0 || abs(D(i, j)) < abs(D(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) return res;
      row_swap(D, t, pi);
      row_swap(P, t, pi);
      col_swap(D, t, pj);
      col_swap(Q, t, pj);
      bool clean = true;
      for (int i = t + 1; i < D.rows; ++i) {
        if (D(i, t) == 0) continue;
        Int q = fdiv(D(i, t), D(t, t));
        row_addmul(D, i, t, -q);
        row_addmul(P, i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < D.cols; ++j) {
        if (D(t, j) == 0) continue;
        Int q = fdiv(D(t, j), D(t, t));
        col_addmul(D, j, t, -q);
        col_addmul(Q, j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < D.rows && bad < 0; ++i)
        for (int j = t + 1; j < D.cols; ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_addmul(D, t, bad, 1);
      row_addmul(P, t, bad, 1);
    }
    if (D(t, t) < 0) {
      for (int j = 0; j < D.cols; ++j) D(t, j) = -D(t, j);
      for (int j = 0; j < P.cols; ++j) P(t, j) = -P(t, j);
    }
  }
  return res;
}

IntVec primitive(const IntVec& v) {
  Int g = gcd_entries(v);
  if (g == 0) throw domain_error("ZeroVector", "primitive of the zero vector");
  IntVec r = v;
  for (auto& x : r) x /= g;
  return r;
}

std::vector<IntVec> integer_kernel(const IntMatrix& m) {
  auto s = snf(m);
  int r = 0;
  while (r < std::min(s.D.rows, s.D.cols) && s.D(r, r) != 0) ++r;
  std::vector<IntVec> out;
  for (int j = r; j < m.cols; ++j) out.push_back(s.Q.col(j));
  return out;
}

namespace {

IntMatrix rows_matrix(int d, const std::vector<IntVec>& rows) {
  IntMatrix m(static_cast<int>(rows.size()), d);
  for (int i = 0; i < m.rows; ++i) {
    if (static_cast<int>(rows[i].size()) != d)
      throw domain_error("DimensionMismatch", "generator length differs from ambient dimension");
    for (int j = 0; j < d; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix canonical_rows(int d, const std::vector<IntVec>& rows) {
  auto h = hnf(rows_matrix(d, rows)).H;
  int r = 0;
  while (r < h.rows) {
    bool z = true;
    for (int j = 0; j < d; ++j)
      if (h(r, j) != 0) z = false;
    if (z) break;
    ++r;
  }
  IntMatrix out(r, d);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = h(i, j);
  return out;
}

}  // namespace

Subspace Subspace::zero(int d) {
  Subspace s;
  s.d_ = d;
  s.basis_ = IntMatrix(0, d);
  return s;
}

Subspace Subspace::full(int d) {
  Subspace s;
  s.d_ = d;
  s.basis_ = IntMatrix::identity(d);
  return s;
}

Subspace Subspace::span(int d, const std::vector<IntVec>& gens) {
  std::vector<IntVec> nz;
  for (const auto& g : gens)
    if (gcd_entries(g) != 0) nz.push_back(g);
  Subspace s;
  s.d_ = d;
  if (nz.empty()) {
    s.basis_ = IntMatrix(0, d);
    return s;
  }
  // saturation: kernel of the kernel
  auto ker = integer_kernel(rows_matrix(d, nz));
  std::vector<IntVec> sat = integer_kernel(rows_matrix(d, ker));
  s.basis_ = canonical_rows(d, sat);
  return s;
}

Subspace Subspace::span(int d, const std::vector<RatVec>& gens) {
  std::vector<IntVec> ig;
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != d)
      throw domain_error("DimensionMismatch", "generator length differs from ambient dimension");
    if (!is_zero(g)) ig.push_back(primitive_of(g));
  }
  return span(d, ig);
}

std::vector<IntVec> Subspace::basis_rows() const {
  std::vector<IntVec> r;
  for (int i = 0; i < basis_.rows; ++i) r.push_back(basis_.row(i));
  return r;
}

bool Subspace::contains(const RatVec& v) const {
  if (static_cast<int>(v.size()) != d_)
    throw domain_error("DimensionMismatch", "vector length differs from ambient dimension");
  for (const auto& a : annihilator().basis_rows())
    if (dot(a, v) != 0) return false;
  return true;
}

bool Subspace::contains(const Subspace& o) const {
  if (o.d_ != d_) throw domain_error("DimensionMismatch", "subspaces in different ambients");
  for (int i = 0; i < o.dim(); ++i)
    if (!contains(to_rat(o.basis_.row(i)))) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& o) const {
  if (o.d_ != d_) throw domain_error("DimensionMismatch", "subspaces in different ambients");
  auto rows = basis_rows();
  for (auto& r : o.basis_rows()) rows.push_back(r);
  return span(d_, rows);
}

Subspace Subspace::annihilator() const {
  Subspace s;
  s.d_ = d_;
  if (dim() == 0) {
    s.basis_ = IntMatrix::identity(d_);
    return s;
  }
  s.basis_ = canonical_rows(d_, integer_kernel(basis_));
  return s;
}

Subspace Subspace::intersection(const Subspace& o) const {
  return annihilator().sum(o.annihilator()).annihilator();
}

ProjectedLattice projected_lattice(const Subspace& L) {
  ProjectedLattice pl;
  pl.d = L.ambient();
  pl.ell = L.dim();
  int d = pl.d, ell = pl.ell;
  pl.lbasis = L.basis();
  IntMatrix qinv;
  if (ell == 0) {
    qinv = IntMatrix::identity(d);
  } else {
    auto s = snf(L.basis());
    qinv = to_int(inverse(to_rat(s.Q)));
  }
  pl.complement = IntMatrix(d - ell, d);
  for (int i = ell; i < d; ++i)
    for (int j = 0; j < d; ++j) pl.complement(i - ell, j) = qinv(i, j);
  IntMatrix F(d, d);
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < d; ++j) F(i, j) = pl.lbasis(i, j);
  for (int i = ell; i < d; ++i)
    for (int j = 0; j < d; ++j) F(i, j) = pl.complement(i - ell, j);
  IntMatrix G = to_int(inverse(to_rat(F.transpose())));
  pl.lcoord = IntMatrix(ell, d);
  pl.proj = IntMatrix(d - ell, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i < ell)
        pl.lcoord(i, j) = G(i, j);
      else
        pl.proj(i - ell, j) = G(i, j);
    }
  return pl;
}

}  // namespace iqp
