#include "iqp/parametric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "iqp/errors.hpp"

namespace iqp {

namespace {

void combinations(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  if (k > n) return;
  for (;;) {
    f(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

RatMatrix submatrix_rows(const IntMatrix& mu, const std::vector<int>& rows) {
  RatMatrix m(static_cast<int>(rows.size()), mu.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < mu.cols; ++j) m(i, j) = mu(rows[i], j);
  return m;
}

// <μ_k, x>
Rat row_dot(const IntMatrix& mu, int k, const RatVec& x) {
  Rat s = 0;
  for (int j = 0; j < mu.cols; ++j) s += Rat(mu(k, j)) * x[j];
  return s;
}

bool positively_spanning(const IntMatrix& mu) {
  int d = mu.cols;
  if (rank(mu) != d) return false;
  // otherwise {x : μx ≤ 0} is a pointed cone; a nonzero one has an extreme ray cut out by
  // d−1 independent rows
  bool ok = true;
  combinations(mu.rows, d - 1, [&](const std::vector<int>& rows) {
    if (!ok) return;
    RatMatrix sub = submatrix_rows(mu, rows);
    if (d > 1 && rank(sub) != d - 1) return;
    RatVec r;
    if (d == 1) {
      r = {Rat(1)};
    } else {
      auto ker = kernel(sub);
      if (ker.size() != 1) return;
      r = ker[0];
    }
    for (int sgn = -1; sgn <= 1; sgn += 2) {
      bool all = true;
      for (int k = 0; k < mu.rows && all; ++k)
        if (sgn * row_dot(mu, k, r) > 0) all = false;
      if (all) ok = false;
    }
  });
  return ok;
}

std::vector<Rat> slacks(const ParametricPolytope& pp, const BasisSubset& B, const RatVec& b) {
  RatVec v = B.s * b;
  std::vector<Rat> out;
  for (int k = 0; k < pp.N; ++k) {
    if (std::find(B.B.begin(), B.B.end(), k) != B.B.end()) continue;
    out.push_back(b[k] - row_dot(pp.mu, k, v));
  }
  return out;
}

const std::vector<Int> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                  43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
constexpr int kResidueSamples = 100;

struct Contribution {
  size_t basis;
  Subspace L;
  Rat coeff;
};

RatVec choose_rho(int d, const RatVec& ell, const std::vector<const std::vector<UnimodularCell>*>& cells) {
  std::vector<RatVec> flat;  // generators orthogonal to ℓ
  for (const auto* cs : cells)
    for (const auto& c : *cs) {
      for (const auto& g : c.lgens)
        if (dot(ell, to_rat(g)) == 0) flat.push_back(to_rat(g));
      for (const auto& g : c.tgens)
        if (dot(ell, g) == 0) flat.push_back(g);
    }
  for (const auto& r : kPrimes) {
    RatVec rho(d);
    Int p = 1;
    for (int i = 0; i < d; ++i) {
      rho[i] = Rat(p);
      p *= r;
    }
    bool ok = true;
    for (const auto& g : flat)
      if (dot(rho, g) == 0) {
        ok = false;
        break;
      }
    if (ok) return rho;
  }
  throw domain_error("DegenerateDirection", "no generic direction found after 25 retries");
}

// Σ_B e^{<ξ,s_B>} Σ_L coeff·M^L(s_B, 𝔠_B)(ξ) at ξ = t(ℓ+ερ), read off at t^m ε^0, after checking
// that every coefficient which must vanish by analyticity does.
QP assemble(const ParametricPolytope& pp, const Chamber& ch, const std::vector<Contribution>& cs,
            const Weight& h) {
  int d = pp.d, N = pp.N;
  std::map<std::pair<size_t, Subspace>, std::vector<UnimodularCell>> cache;
  std::vector<const std::vector<UnimodularCell>*> cells;
  for (const auto& c : cs) {
    auto key = std::make_pair(c.basis, c.L);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, decompose_for_subspace(closed_cone(d, ch.bases[c.basis].cone), c.L)).first;
    cells.push_back(&it->second);
  }
  QP result(N);
  for (const auto& term : h.terms) {
    if (static_cast<int>(term.ell.size()) != d)
      throw domain_error("DimensionMismatch", "weight form length differs from d");
    if (term.coeff == 0) continue;
    int m = term.power;
    RatVec rho = choose_rho(d, term.ell, cells);
    std::vector<BiLaurentSeries> F;
    for (size_t b = 0; b < ch.bases.size(); ++b) F.emplace_back(N, -d, m, -d, 0);
    for (size_t i = 0; i < cs.size(); ++i) {
      AffineShift sh{ch.bases[cs[i].basis].s};
      for (const auto& cell : *cells[i])
        F[cs[i].basis].add_scaled(cell_series(cell, sh, term.ell, rho, m, 0), cs[i].coeff);
    }
    // Total[j'][e], j' ∈ [−d, m], e ∈ [−d, 0]
    BiLaurentSeries total(N, -d, m, -d, 0);
    for (size_t b = 0; b < ch.bases.size(); ++b) {
      const RatMatrix& s = ch.bases[b].s;
      RatVec ls(N, Rat(0)), rs(N, Rat(0));
      for (int j = 0; j < N; ++j)
        for (int i = 0; i < d; ++i) {
          ls[j] += term.ell[i] * s(i, j);
          rs[j] += rho[i] * s(i, j);
        }
      int rmax = m + d;
      std::vector<QP> lp{QP::constant(N, 1)}, rp{QP::constant(N, 1)};
      for (int r = 1; r <= rmax; ++r) {
        lp.push_back(lp.back() * QP::linear(N, ls));
        rp.push_back(rp.back() * QP::linear(N, rs));
      }
      for (int j = -d; j <= m; ++j)
        for (int e1 = -d; e1 <= 0; ++e1) {
          const QP& f = F[b].at(j, e1);
          if (f.is_zero()) continue;
          for (int r = 0; j + r <= m; ++r)
            for (int e2 = 0; e2 <= r && e1 + e2 <= 0; ++e2) {
              // [t^r ε^e2] e^{t(<ℓ,s> + ε<ρ,s>)} = C(r,e2)/r! <ℓ,s>^{r−e2} <ρ,s>^{e2}
              Rat c = Rat(binomial(r, e2)) / Rat(factorial(r));
              total.ref(j + r, e1 + e2) += c * (f * (lp[r - e2] * rp[e2]));
            }
        }
    }
    QP zero(N);
    for (int j = -d; j <= m; ++j)
      for (int e = -d; e <= 0; ++e) {
        if (j >= 0 && e == 0) continue;
        const QP& x = total.at(j, e);
        if (!x.is_zero() && !qp_equivalent(x, zero, kResidueSamples))
          throw internal_error("ResidueCancellationFailure",
                               "coefficient t^" + std::to_string(j) + " eps^" + std::to_string(e) +
                                   " of the vertex sum does not vanish");
      }
    result.add_scaled(total.at(m, 0), term.coeff);
  }
  return result;
}

// On a simplex the Barvinok family is indexed by subpartitions of the vertices and the
// patching values have a closed form; compare the two.
void cross_check_simplex(const ParametricPolytope& pp, const Chamber& ch, int k, const PatchFunction& rho) {
  int d = pp.d;
  if (static_cast<int>(ch.bases.size()) != d + 1 || k >= d) return;
  std::vector<RatVec> v;
  for (const auto& B : ch.bases) v.push_back(B.s * ch.sample);
  for (const auto& [L, r] : rho) {
    std::vector<int> comp(d + 1);
    for (int i = 0; i <= d; ++i) comp[i] = i;
    for (int i = 0; i <= d; ++i)
      for (int j = i + 1; j <= d; ++j) {
        RatVec diff(d);
        for (int a = 0; a < d; ++a) diff[a] = v[j][a] - v[i][a];
        if (L.contains(diff)) {
          int from = comp[j], to = comp[i];
          for (auto& c : comp)
            if (c == from) c = to;
        }
      }
    std::map<int, int> sizes;
    for (int c : comp) ++sizes[c];
    std::vector<int> blocks;
    for (const auto& [c, n] : sizes)
      if (n > 1) blocks.push_back(n);
    if (sigma_simplex(d, k, blocks) != r)
      throw internal_error("PatchingMismatch", "Möbius patching values disagree with the simplex closed form");
  }
}

void check_chamber(const ParametricPolytope& pp, const Chamber& ch) {
  if (ch.bases.empty()) throw domain_error("EmptyChamber", "chamber has no feasible basis");
  if (static_cast<int>(ch.sample.size()) != pp.N)
    throw domain_error("DimensionMismatch", "chamber sample length differs from N");
}

}  // namespace

// ---------------------------------------------------------------- polytopes and chambers

ParametricPolytope make_polytope(const IntMatrix& mu) {
  if (mu.rows == 0 || mu.cols == 0) throw schema_error("mu must be a non-empty N x d matrix");
  if (!positively_spanning(mu))
    throw domain_error("NotPositivelySpanning", "rows of mu do not positively span R^d; 𝔭(b) would be unbounded");
  return ParametricPolytope{mu, mu.rows, mu.cols};
}

RatMatrix vertex_map(const ParametricPolytope& pp, const std::vector<int>& B) {
  RatMatrix inv = inverse(submatrix_rows(pp.mu, B));
  RatMatrix s(pp.d, pp.N);
  for (int i = 0; i < pp.d; ++i)
    for (int c = 0; c < pp.d; ++c) s(i, B[c]) = inv(i, c);
  return s;
}

BasisSubset make_basis(const ParametricPolytope& pp, const std::vector<int>& B) {
  if (static_cast<int>(B.size()) != pp.d) throw domain_error("DimensionMismatch", "basis needs d indices");
  RatMatrix inv = inverse(submatrix_rows(pp.mu, B));
  BasisSubset bs;
  bs.B = B;
  bs.s = RatMatrix(pp.d, pp.N);
  for (int i = 0; i < pp.d; ++i)
    for (int c = 0; c < pp.d; ++c) bs.s(i, B[c]) = inv(i, c);
  for (int c = 0; c < pp.d; ++c) {
    RatVec g = inv.col(c);
    for (auto& x : g) x = -x;
    bs.cone.push_back(primitive_of(g));
  }
  return bs;
}

std::vector<BasisSubset> enumerate_bases(const ParametricPolytope& pp) {
  std::vector<BasisSubset> out;
  combinations(pp.N, pp.d, [&](const std::vector<int>& B) {
    if (det(submatrix_rows(pp.mu, B)) != 0) out.push_back(make_basis(pp, B));
  });
  return out;
}

Chamber chamber_of(const ParametricPolytope& pp, const RatVec& bstar) {
  if (static_cast<int>(bstar.size()) != pp.N) throw domain_error("DimensionMismatch", "b has wrong length");
  Chamber ch;
  ch.sample = bstar;
  for (auto& B : enumerate_bases(pp)) {
    bool feasible = true;
    for (const auto& s : slacks(pp, B, bstar)) {
      if (s == 0) throw domain_error("OnWall", "b lies on a wall between chambers");
      if (s < 0) feasible = false;
    }
    if (feasible) ch.bases.push_back(std::move(B));
  }
  if (ch.bases.empty()) throw domain_error("EmptyChamber", "𝔭(b) is empty for this b");
  return ch;
}

bool in_closure(const ParametricPolytope& pp, const Chamber& ch, const RatVec& b) {
  if (static_cast<int>(b.size()) != pp.N) throw domain_error("DimensionMismatch", "b has wrong length");
  for (const auto& B : ch.bases)
    for (const auto& s : slacks(pp, B, b))
      if (s < 0) return false;
  return true;
}

int Weight::degree() const {
  int m = 0;
  for (const auto& t : terms) m = std::max(m, t.power);
  return m;
}

Weight Weight::one(int d) { return Weight{{WeightTerm{Rat(1), RatVec(d, Rat(0)), 0}}}; }

// ---------------------------------------------------------------- the three quasi-polynomials

QP intermediate_ehrhart_qp(const ParametricPolytope& pp, const Chamber& ch, const Subspace& L,
                           const Weight& h) {
  check_chamber(pp, ch);
  if (L.ambient() != pp.d) throw domain_error("DimensionMismatch", "subspace ambient differs from d");
  std::vector<Contribution> cs;
  for (size_t b = 0; b < ch.bases.size(); ++b) cs.push_back({b, L, Rat(1)});
  return assemble(pp, ch, cs, h);
}

SubspaceFamily barvinok_family(const ParametricPolytope& pp, const Chamber& ch, int k) {
  check_chamber(pp, ch);
  int d = pp.d;
  if (k < 0 || k > d) throw domain_error("OutOfRange", "need 0 <= k <= d");
  std::set<Subspace> faces;
  for (const auto& B : ch.bases)
    for (unsigned J = 0; J < (1u << d); ++J) {
      if (__builtin_popcount(J) > k) continue;
      std::vector<IntVec> g;
      for (int i = 0; i < d; ++i)
        if (!(J >> i & 1)) g.push_back(B.cone[i]);
      faces.insert(Subspace::span(d, g));
    }
  return close_under_sum(d, std::vector<Subspace>(faces.begin(), faces.end()));
}

QP barvinok_patched_qp(const ParametricPolytope& pp, const Chamber& ch, int k, const Weight& h) {
  auto fam = barvinok_family(pp, ch, k);
  auto rho = patching_rho(fam);
  cross_check_simplex(pp, ch, k, rho);
  std::vector<Contribution> cs;
  for (const auto& [L, r] : rho) {
    if (r == 0) continue;
    for (size_t b = 0; b < ch.bases.size(); ++b) cs.push_back({b, L, Rat(r)});
  }
  return assemble(pp, ch, cs, h);
}

QP cone_by_cone_qp(const ParametricPolytope& pp, const Chamber& ch, int k, const Weight& h) {
  check_chamber(pp, ch);
  int d = pp.d;
  if (k < 0 || k > d) throw domain_error("OutOfRange", "need 0 <= k <= d");
  std::set<RatVec> verts;
  for (const auto& B : ch.bases)
    if (!verts.insert(B.s * ch.sample).second)
      throw domain_error("NonSimplePolytope", "two bases share a vertex; cone-by-cone needs a simple polytope");
  std::vector<Contribution> cs;
  for (size_t b = 0; b < ch.bases.size(); ++b)
    for (unsigned I = 0; I < (1u << d); ++I) {
      int c = __builtin_popcount(I);
      if (c < d - k) continue;
      Int r = rho_cone_closed_form(d, k, c);
      if (r == 0) continue;
      std::vector<IntVec> g;
      for (int i = 0; i < d; ++i)
        if (I >> i & 1) g.push_back(ch.bases[b].cone[i]);
      cs.push_back({b, Subspace::span(d, g), Rat(r)});
    }
  return assemble(pp, ch, cs, h);
}

QP chamber_qp(const ParametricPolytope& pp, const Chamber& ch, const Variant& v, const Weight& h) {
  switch (v.kind) {
    case Variant::Exact:
      return intermediate_ehrhart_qp(pp, ch, v.L.ambient() == 0 && pp.d > 0 ? Subspace::zero(pp.d) : v.L, h);
    case Variant::Barvinok:
      return barvinok_patched_qp(pp, ch, v.k, h);
    case Variant::ConeByCone:
      return cone_by_cone_qp(pp, ch, v.k, h);
  }
  throw internal_error("BadVariant", "unknown variant");
}

QP dilation_qp(const ParametricPolytope& pp, const Chamber& ch, const RatVec& b0, const Variant& v,
               const Weight& h) {
  if (!in_closure(pp, ch, b0)) throw domain_error("OutsideChamber", "b0 is not in the closure of the chamber");
  RatMatrix T(pp.N, 1);
  for (int j = 0; j < pp.N; ++j) T(j, 0) = b0[j];
  return chamber_qp(pp, ch, v, h).specialize(T);
}

// ---------------------------------------------------------------- Minkowski systems

std::vector<RatVec> polytope_vertices(const ParametricPolytope& pp, const RatVec& b) {
  std::set<RatVec> vs;
  combinations(pp.N, pp.d, [&](const std::vector<int>& B) {
    RatMatrix sub = submatrix_rows(pp.mu, B);
    if (det(sub) == 0) return;
    RatVec rhs(pp.d);
    for (int i = 0; i < pp.d; ++i) rhs[i] = b[B[i]];
    RatVec x = inverse(sub) * rhs;
    for (int k = 0; k < pp.N; ++k)
      if (row_dot(pp.mu, k, x) > b[k]) return;
    vs.insert(x);
  });
  return std::vector<RatVec>(vs.begin(), vs.end());
}

std::vector<RatVec> minkowski_support(const std::vector<std::vector<RatVec>>& vertex_lists,
                                      const IntMatrix& mu) {
  ParametricPolytope pp = make_polytope(mu);
  std::vector<RatVec> out;
  for (const auto& verts : vertex_lists) {
    if (verts.empty()) throw schema_error("empty vertex list");
    RatVec b(pp.N);
    for (int j = 0; j < pp.N; ++j) {
      for (size_t v = 0; v < verts.size(); ++v) {
        if (static_cast<int>(verts[v].size()) != pp.d)
          throw schema_error("vertex length differs from d");
        Rat x = row_dot(mu, j, verts[v]);
        if (v == 0 || x > b[j]) b[j] = x;
      }
    }
    std::set<RatVec> given(verts.begin(), verts.end());
    auto got = polytope_vertices(pp, b);
    if (std::vector<RatVec>(given.begin(), given.end()) != got)
      throw domain_error("NormalsInsufficient", "the normals of mu do not reproduce the given polytope");
    out.push_back(b);
  }
  return out;
}

Chamber minkowski_chamber(const ParametricPolytope& pp, const std::vector<RatVec>& bs) {
  if (bs.empty()) throw schema_error("no summands");
  RatVec base(pp.N, Rat(0));
  for (const auto& b : bs)
    for (int j = 0; j < pp.N; ++j) base[j] += b[j];
  std::vector<Rat> deltas = {Rat(0), rat(1, 97), rat(-1, 97), rat(1, 997), rat(-1, 997), rat(1, 9973)};
  for (int w = 0; w < 4; ++w)
    for (const auto& delta : deltas) {
      RatVec s = base;
      for (int j = 0; j < pp.N; ++j) {
        if (w > 0) s[j] += Rat(w) * bs[j % bs.size()][j];
        s[j] += delta * Rat(Int(1) << (j % 20)) / Rat(j + 3);
      }
      try {
        Chamber ch = chamber_of(pp, s);
        bool ok = true;
        for (const auto& b : bs) ok = ok && in_closure(pp, ch, b);
        if (ok) return ch;
      } catch (const Error& e) {
        if (e.code() != "OnWall" && e.code() != "EmptyChamber") throw;
      }
    }
  throw domain_error("NoCommonChamber", "the summands do not share a chamber closure");
}

// ---------------------------------------------------------------- partition polytopes

PartitionConversion partition_to_parametric(const IntMatrix& Phi, const RatVec& lambda) {
  int N = Phi.cols, r = Phi.rows;
  if (static_cast<int>(lambda.size()) != r) throw schema_error("lambda length differs from rows of Phi");
  if (rank(Phi) != r) throw domain_error("NotFullRank", "Phi must have full row rank");
  int d = N - r;
  if (d == 0) throw domain_error("NotFullRank", "ker Phi is zero");
  auto ker = integer_kernel(Phi);
  PartitionConversion pc;
  pc.K = IntMatrix(N, d);
  IntMatrix mu(N, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < N; ++i) {
      pc.K(i, j) = ker[j][i];
      mu(i, j) = -ker[j][i];
    }
  try {
    pc.pp = make_polytope(mu);
  } catch (const Error& e) {
    if (e.code() == "NotPositivelySpanning")
      throw domain_error("NotPointed", "the columns of Phi do not span a pointed cone; the polytope is unbounded");
    throw;
  }
  // Φ b = λ through the Smith form: D y = P λ, b = Q y
  auto s = snf(Phi);
  RatVec pl = mul(s.P, lambda);
  RatVec y(N, Rat(0));
  pc.integral = true;
  for (int i = 0; i < r; ++i) {
    y[i] = pl[i] / Rat(s.D(i, i));
    if (!is_integer(y[i])) pc.integral = false;
  }
  pc.b = mul(s.Q, y);
  return pc;
}

}  // namespace iqp
