#include "iqp/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "iqp/errors.hpp"

namespace iqp {

namespace {

void subsets(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  if (k > n || k < 0) return;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    f(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

RatVec sub(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatMatrix rows_matrix(int cols, const std::vector<RatVec>& rows) {
  RatMatrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

Rat row_dot(const RatMatrix& A, int i, const RatVec& x) {
  Rat s = 0;
  for (int j = 0; j < A.cols; ++j) s += A(i, j) * x[j];
  return s;
}

bool feasible(const HRep& h, const RatVec& x) {
  for (int i = 0; i < h.A.rows; ++i)
    if (row_dot(h.A, i, x) > h.c[i]) return false;
  return true;
}

// complete homogeneous symmetric polynomial of degree m
Rat complete_h(const std::vector<Rat>& y, int m) {
  std::vector<Rat> acc(m + 1, Rat(0));
  acc[0] = 1;
  for (const auto& v : y)
    for (int j = 1; j <= m; ++j) acc[j] += v * acc[j - 1];
  return acc[m];
}

QP complete_h(const std::vector<QP>& y, int m, int N) {
  std::vector<QP> acc(m + 1, QP(N));
  acc[0] = QP::constant(N, 1);
  for (const auto& v : y)
    for (int j = 1; j <= m; ++j) acc[j] += v * acc[j - 1];
  return acc[m];
}

// Pulling triangulation of conv(pts) in its affine hull of dimension k; facets are cut out by rows
// of h. Returns simplices as index lists into pts.
void triangulate(const std::vector<RatVec>& pts, const std::vector<int>& idx, int k, const HRep& h,
                 std::vector<std::vector<int>>& out) {
  if (k == 0) {
    out.push_back({idx[0]});
    return;
  }
  int apex = idx[0];
  std::set<std::vector<int>> facets;
  for (int r = 0; r < h.A.rows; ++r) {
    if (row_dot(h.A, r, pts[apex]) == h.c[r]) continue;
    std::vector<int> tight;
    for (int i : idx)
      if (row_dot(h.A, r, pts[i]) == h.c[r]) tight.push_back(i);
    if (tight.empty()) continue;
    std::vector<RatVec> tp;
    for (int i : tight) tp.push_back(pts[i]);
    if (affine_dim(tp) == k - 1) facets.insert(tight);
  }
  for (const auto& f : facets) {
    std::vector<std::vector<int>> sub_simplices;
    triangulate(pts, f, k - 1, h, sub_simplices);
    for (auto& s : sub_simplices) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
}

Rat simplex_volume(const std::vector<RatVec>& pts, const std::vector<int>& s, int d) {
  RatMatrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = pts[s[i + 1]][j] - pts[s[0]][j];
  return abs(det(m)) / Rat(factorial(d));
}

// ∫ over a full-dimensional polytope in R^k of Σ c (<a,z> + a0)^m/m!
Rat integrate_full(const std::vector<RatVec>& pts, const HRep& h, int k,
                   const std::vector<std::tuple<Rat, RatVec, Rat, int>>& forms) {
  if (pts.empty() || affine_dim(pts) < k) return 0;
  if (k == 0) {
    Rat s = 0;
    for (const auto& [c, a, a0, m] : forms) {
      Rat v = a0;
      Rat p = 1;
      for (int i = 0; i < m; ++i) p *= v;
      s += c * p / Rat(factorial(m));
    }
    return s;
  }
  std::vector<int> idx(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) idx[i] = static_cast<int>(i);
  std::vector<std::vector<int>> simplices;
  triangulate(pts, idx, k, h, simplices);
  Rat total = 0;
  for (const auto& s : simplices) {
    Rat vol = simplex_volume(pts, s, k);
    for (const auto& [c, a, a0, m] : forms) {
      std::vector<Rat> y;
      for (int i : s) y.push_back(dot(a, pts[i]) + a0);
      total += c * vol * Rat(factorial(k)) / Rat(factorial(k + m)) * complete_h(y, m);
    }
  }
  return total;
}

}  // namespace

int affine_dim(const std::vector<RatVec>& pts) {
  if (pts.size() <= 1) return 0;
  std::vector<RatVec> diffs;
  for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
  return rank(rows_matrix(static_cast<int>(pts[0].size()), diffs));
}

HRep hrep_from_vertices(int d, const std::vector<RatVec>& verts) {
  if (verts.empty()) throw schema_error("polytope needs at least one vertex");
  std::set<RatVec> uniq(verts.begin(), verts.end());
  std::vector<RatVec> pts(uniq.begin(), uniq.end());
  for (const auto& v : pts)
    if (static_cast<int>(v.size()) != d) throw schema_error("vertex length differs from d");
  std::vector<RatVec> rows;
  RatVec rhs;
  std::vector<RatVec> diffs;
  for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
  std::vector<RatVec> eqs = diffs.empty() ? std::vector<RatVec>{} : kernel(rows_matrix(d, diffs));
  if (diffs.empty())
    for (int j = 0; j < d; ++j) {
      RatVec e(d, Rat(0));
      e[j] = 1;
      eqs.push_back(e);
    }
  for (const auto& n : eqs) {
    RatVec neg = n;
    for (auto& x : neg) x = -x;
    rows.push_back(n);
    rhs.push_back(dot(n, pts[0]));
    rows.push_back(neg);
    rhs.push_back(-dot(n, pts[0]));
  }
  int k = affine_dim(pts);
  std::set<IntVec> seen;
  if (k > 0)
    subsets(static_cast<int>(pts.size()), k, [&](const std::vector<int>& s) {
      std::vector<RatVec> cons = eqs;
      for (size_t i = 1; i < s.size(); ++i) cons.push_back(sub(pts[s[i]], pts[s[0]]));
      auto ker = kernel(rows_matrix(d, cons));
      if (ker.size() != 1) return;
      IntVec n = primitive_of(ker[0]);
      RatVec nr = to_rat(n);
      Rat c0 = dot(nr, pts[s[0]]);
      int above = 0, below = 0;
      for (const auto& p : pts) {
        Rat v = dot(nr, p);
        if (v > c0) ++above;
        if (v < c0) ++below;
      }
      if (above && below) return;
      if (above) {
        for (auto& x : n) x = -x;
        for (auto& x : nr) x = -x;
        c0 = -c0;
      }
      if (!seen.insert(n).second) return;
      rows.push_back(nr);
      rhs.push_back(c0);
    });
  return HRep{rows_matrix(d, rows), rhs};
}

std::vector<RatVec> vertices_from_hrep(int d, const HRep& h) {
  std::set<RatVec> out;
  if (d == 0) return {RatVec{}};
  subsets(h.A.rows, d, [&](const std::vector<int>& s) {
    RatMatrix m(d, d);
    RatVec r(d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) m(i, j) = h.A(s[i], j);
      r[i] = h.c[s[i]];
    }
    if (det(m) == 0) return;
    RatVec x = inverse(m) * r;
    if (feasible(h, x)) out.insert(x);
  });
  return std::vector<RatVec>(out.begin(), out.end());
}

VPolytope vpolytope(int d, const std::vector<RatVec>& verts) {
  VPolytope p;
  p.d = d;
  p.h = hrep_from_vertices(d, verts);
  p.vertices = vertices_from_hrep(d, p.h);
  return p;
}

VPolytope vpolytope(const ParametricPolytope& pp, const RatVec& b) {
  VPolytope p;
  p.d = pp.d;
  p.h = HRep{to_rat(pp.mu), b};
  p.vertices = vertices_from_hrep(pp.d, p.h);
  return p;
}

Rat brute_intermediate_sum(const VPolytope& p, const Subspace& L, const Weight& h, long bound) {
  int d = p.d;
  if (L.ambient() != d) throw domain_error("DimensionMismatch", "subspace ambient differs from d");
  if (p.vertices.empty()) return 0;
  ProjectedLattice pl = projected_lattice(L);
  int l = pl.ell, t = d - l;
  // bounding box of the projection
  std::vector<Int> lo(t), hi(t);
  for (int j = 0; j < t; ++j) {
    bool first = true;
    for (const auto& v : p.vertices) {
      Rat y = 0;
      for (int i = 0; i < d; ++i) y += Rat(pl.proj(j, i)) * v[i];
      Int a = ceil(y), b = floor(y);
      if (first || a < lo[j]) lo[j] = a;
      if (first || b > hi[j]) hi[j] = b;
      first = false;
    }
    if (lo[j] > hi[j]) return 0;
  }
  Int count = 1;
  for (int j = 0; j < t; ++j) count *= hi[j] - lo[j] + 1;
  if (count > bound) throw resource_error("more than " + std::to_string(bound) + " cosets to enumerate");

  // x = Σ a_i lbasis_i + Σ y_j complement_j
  RatMatrix AL(p.h.A.rows, l);
  for (int r = 0; r < p.h.A.rows; ++r)
    for (int i = 0; i < l; ++i) {
      Rat s = 0;
      for (int k = 0; k < d; ++k) s += p.h.A(r, k) * Rat(pl.lbasis(i, k));
      AL(r, i) = s;
    }
  Rat total = 0;
  std::vector<Int> y = lo;
  for (;;) {
    RatVec x0(d, Rat(0));
    for (int j = 0; j < t; ++j)
      for (int k = 0; k < d; ++k) x0[k] += Rat(y[j] * pl.complement(j, k));
    if (l == 0) {
      if (feasible(p.h, x0))
        for (const auto& term : h.terms) {
          Rat v = dot(term.ell, x0), pw = 1;
          for (int i = 0; i < term.power; ++i) pw *= v;
          total += term.coeff * pw / Rat(factorial(term.power));
        }
    } else {
      HRep slice{AL, RatVec(p.h.A.rows)};
      for (int r = 0; r < p.h.A.rows; ++r) slice.c[r] = p.h.c[r] - row_dot(p.h.A, r, x0);
      auto sv = vertices_from_hrep(l, slice);
      if (!sv.empty() && affine_dim(sv) == l) {
        std::vector<std::tuple<Rat, RatVec, Rat, int>> forms;
        for (const auto& term : h.terms) {
          RatVec a(l);
          for (int i = 0; i < l; ++i) a[i] = dot(to_rat(IntVec(pl.lbasis.row(i))), term.ell);
          forms.emplace_back(term.coeff, a, dot(term.ell, x0), term.power);
        }
        total += integrate_full(sv, slice, l, forms);
      }
    }
    int j = 0;
    while (j < t && y[j] == hi[j]) {
      y[j] = lo[j];
      ++j;
    }
    if (j == t) break;
    ++y[j];
  }
  return total;
}

Rat integrate_polytope(const VPolytope& p, const RatVec& ell, int m) {
  Weight h{{WeightTerm{Rat(1), ell, m}}};
  return integrate_polytope(p, h);
}

Rat integrate_polytope(const VPolytope& p, const Weight& h) {
  std::vector<std::tuple<Rat, RatVec, Rat, int>> forms;
  for (const auto& term : h.terms) forms.emplace_back(term.coeff, term.ell, Rat(0), term.power);
  return integrate_full(p.vertices, p.h, p.d, forms);
}

QP integrate_parametric(const ParametricPolytope& pp, const Chamber& ch, const Weight& h) {
  int d = pp.d, N = pp.N;
  // vertices of 𝔭(b*) labelled by their bases; the triangulation's combinatorics is that of the chamber
  std::vector<RatVec> pts;
  for (const auto& B : ch.bases) pts.push_back(B.s * ch.sample);
  HRep hr{to_rat(pp.mu), ch.sample};
  QP total(N);
  if (affine_dim(pts) < d) return total;
  std::vector<int> idx(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) idx[i] = static_cast<int>(i);
  std::vector<std::vector<int>> simplices;
  triangulate(pts, idx, d, hr, simplices);
  auto linear_of = [&](const RatVec& ell, const RatMatrix& s) {
    RatVec eta(N, Rat(0));
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < d; ++i) eta[j] += ell[i] * s(i, j);
    return QP::linear(N, eta);
  };
  for (const auto& simp : simplices) {
    // d! vol = |det(s_i − s_0)|, sign fixed on the chamber
    std::vector<std::vector<QP>> m(d, std::vector<QP>(d, QP(N)));
    for (int i = 0; i < d; ++i) {
      RatMatrix diff = ch.bases[simp[i + 1]].s;
      const RatMatrix& s0 = ch.bases[simp[0]].s;
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < N; ++c) diff(r, c) -= s0(r, c);
      for (int j = 0; j < d; ++j) {
        RatVec e(d, Rat(0));
        e[j] = 1;
        m[i][j] = linear_of(e, diff);
      }
    }
    std::function<QP(std::vector<int>, int)> det_qp = [&](std::vector<int> cols, int row) -> QP {
      if (row == d) return QP::constant(N, 1);
      QP acc(N);
      for (size_t c = 0; c < cols.size(); ++c) {
        std::vector<int> rest = cols;
        rest.erase(rest.begin() + c);
        QP minor = m[row][cols[c]] * det_qp(rest, row + 1);
        acc.add_scaled(minor, Rat(c % 2 == 0 ? 1 : -1));
      }
      return acc;
    };
    std::vector<int> all(d);
    for (int j = 0; j < d; ++j) all[j] = j;
    QP dv = det_qp(all, 0);
    if (dv.eval(ch.sample) < 0) dv = dv * QP::constant(N, -1);
    for (const auto& term : h.terms) {
      std::vector<QP> y;
      for (int i : simp) y.push_back(linear_of(term.ell, ch.bases[i].s));
      Rat c = term.coeff / Rat(factorial(d + term.power));
      total.add_scaled(dv * complete_h(y, term.power, N), c);
    }
  }
  return total;
}

bool indicator_check(const std::vector<HalfOpenSimplicialCone>& cells, const HalfOpenSimplicialCone& target,
                     const std::vector<RatVec>& points) {
  auto member = [](const HalfOpenSimplicialCone& c, const RatVec& x) {
    RatMatrix g(c.d, c.rank());
    for (int j = 0; j < c.rank(); ++j)
      for (int i = 0; i < c.d; ++i) g(i, j) = c.gens[j][i];
    RatVec lam;
    if (!solve(g, x, lam)) return false;
    for (int j = 0; j < c.rank(); ++j) {
      if (lam[j] < 0) return false;
      if (lam[j] == 0 && c.open[j]) return false;
    }
    return true;
  };
  for (const auto& x : points) {
    long s = 0;
    for (const auto& c : cells)
      if (member(c, x)) s += c.sign;
    if (s != (member(target, x) ? target.sign : 0)) return false;
  }
  return true;
}

}  // namespace iqp
