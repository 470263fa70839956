#include "iqp/cones.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "iqp/errors.hpp"

namespace iqp {

namespace {

RatMatrix gen_matrix(const std::vector<IntVec>& gens, int d) {
  RatMatrix m(d, static_cast<int>(gens.size()));
  for (int j = 0; j < m.cols; ++j)
    for (int i = 0; i < d; ++i) m(i, j) = gens[j][i];
  return m;
}

struct Raw {
  std::vector<IntVec> gens;
  int sign;
};

// Replace generators by w according to its coordinates alpha (the exchange identity,
// exact up to lower-dimensional cones once w is oriented into the non-negative side).
void exchange(const Raw& r, IntVec w, RatVec alpha, std::vector<Raw>& out) {
  bool any_pos = false;
  for (const auto& a : alpha)
    if (a > 0) any_pos = true;
  if (!any_pos) {
    for (auto& x : w) x = -x;
    for (auto& a : alpha) a = -a;
  }
  for (size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] == 0) continue;
    Raw c = r;
    c.gens[j] = w;
    c.sign = r.sign * sgn(alpha[j]);
    out.push_back(std::move(c));
  }
}

// Half-open flags: pick y with λ_j(y) > 0 on the closed facets of the input and < 0 on its open
// ones, generic for every output cone; a facet of an output cone is open iff λ_j(y) < 0.
std::vector<HalfOpenSimplicialCone> apply_flags(const HalfOpenSimplicialCone& in,
                                                const std::vector<Raw>& out) {
  int d = in.d;
  std::vector<RatMatrix> inv;
  inv.reserve(out.size());
  for (const auto& r : out) inv.push_back(inverse(gen_matrix(r.gens, d)));
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<long> u(1, 997);
  for (int attempt = 0; attempt < 200; ++attempt) {
    RatVec y(d, Rat(0));
    for (int j = 0; j < in.rank(); ++j) {
      Rat coef = 1 + rat(u(rng), 1009);
      if (in.open[j]) coef = -coef;
      for (int i = 0; i < d; ++i) y[i] += coef * in.gens[j][i];
    }
    std::vector<HalfOpenSimplicialCone> res;
    bool ok = true;
    for (size_t k = 0; k < out.size() && ok; ++k) {
      RatVec lam = inv[k] * y;
      HalfOpenSimplicialCone c;
      c.d = d;
      c.gens = out[k].gens;
      c.sign = out[k].sign;
      for (const auto& l : lam) {
        if (l == 0) {
          ok = false;
          break;
        }
        c.open.push_back(l < 0);
      }
      res.push_back(std::move(c));
    }
    if (ok) return res;
  }
  throw internal_error("NonGenericFlagPoint", "no generic point found for half-open flags");
}

void check_full(const HalfOpenSimplicialCone& c) {
  if (c.rank() != c.d || static_cast<int>(c.open.size()) != c.rank())
    throw domain_error("DependentGenerators", "expected d generators with one flag each");
  for (const auto& g : c.gens)
    if (static_cast<int>(g.size()) != c.d)
      throw domain_error("DimensionMismatch", "generator length differs from d");
  if (c.d > 0 && det(gen_matrix(c.gens, c.d)) == 0)
    throw domain_error("DependentGenerators", "cone generators are linearly dependent");
}

Rat center(const Rat& a) {
  // representative in (-1/2, 1/2]
  return a - Rat(ceil(a - rat(1, 2)));
}

}  // namespace

HalfOpenSimplicialCone closed_cone(int d, const std::vector<IntVec>& gens, int sign) {
  HalfOpenSimplicialCone c;
  c.d = d;
  c.gens = gens;
  c.open.assign(gens.size(), false);
  c.sign = sign;
  return c;
}

bool cone_contains(const HalfOpenSimplicialCone& c, const RatVec& x) {
  RatVec a;
  if (!solve(gen_matrix(c.gens, c.d), x, a)) return false;
  for (int j = 0; j < c.rank(); ++j) {
    if (a[j] < 0) return false;
    if (a[j] == 0 && c.open[j]) return false;
  }
  return true;
}

Int cone_index(const HalfOpenSimplicialCone& c) {
  IntMatrix m(c.d, c.d);
  for (int j = 0; j < c.d; ++j)
    for (int i = 0; i < c.d; ++i) m(i, j) = c.gens[j][i];
  return abs(det(m));
}

// ---------------------------------------------------------------- L-adaptation

Adaptation adapt_to_subspace(const HalfOpenSimplicialCone& c, const Subspace& L) {
  check_full(c);
  if (L.ambient() != c.d) throw domain_error("DimensionMismatch", "subspace ambient differs from cone");
  int ell = L.dim();
  Adaptation res;
  auto in_L = [&](const std::vector<IntVec>& gens) {
    std::vector<bool> f;
    for (const auto& g : gens) f.push_back(L.contains(to_rat(g)));
    return f;
  };
  if (ell == 0) {
    res.cells.push_back(AdaptedCell{c, std::vector<bool>(c.d, false)});
    return res;
  }
  std::vector<Raw> work{Raw{c.gens, c.sign}}, done;
  while (!work.empty()) {
    Raw r = std::move(work.back());
    work.pop_back();
    auto f = in_L(r.gens);
    std::vector<IntVec> rest;
    for (int j = 0; j < c.d; ++j)
      if (!f[j]) rest.push_back(r.gens[j]);
    if (c.d - static_cast<int>(rest.size()) == ell) {
      done.push_back(std::move(r));
      continue;
    }
    // L ∩ span(non-L generators) has dimension ell - |G_L| > 0 and meets span(G_L) trivially
    Subspace I = L.intersection(Subspace::span(c.d, rest));
    IntVec w = I.basis_rows().at(0);
    RatVec alpha;
    if (!solve(gen_matrix(r.gens, c.d), to_rat(w), alpha))
      throw internal_error("AdaptationFailed", "inserted vector outside the cone's span");
    exchange(r, w, alpha, work);
  }
  if (done.size() == 1 && done[0].gens == c.gens) {
    res.cells.push_back(AdaptedCell{c, in_L(c.gens)});
    return res;
  }
  for (auto& hc : apply_flags(c, done)) {
    auto f = in_L(hc.gens);
    res.cells.push_back(AdaptedCell{std::move(hc), std::move(f)});
  }
  return res;
}

// ---------------------------------------------------------------- unimodular decomposition

std::vector<HalfOpenSimplicialCone> unimodularize(const HalfOpenSimplicialCone& c0) {
  check_full(c0);
  int d = c0.d;
  HalfOpenSimplicialCone c = c0;
  for (auto& g : c.gens) g = primitive(g);
  if (d == 0 || cone_index(c) == 1) return {c};

  std::vector<Raw> work{Raw{c.gens, c.sign}}, leaves;
  while (!work.empty()) {
    Raw r = std::move(work.back());
    work.pop_back();
    IntMatrix G(d, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) G(i, j) = r.gens[j][i];
    Int index = abs(det(G));
    if (index == 1) {
      leaves.push_back(std::move(r));
      continue;
    }
    if (index > 1000000) throw resource_error("cone index too large to enumerate");
    // group Z^d / G Z^d: coordinates alpha = Q (k_i / d_i) modulo 1
    auto s = snf(G);
    std::vector<long> dims(d);
    for (int i = 0; i < d; ++i) dims[i] = s.D(i, i).get_si();
    std::vector<long> k(d, 0);
    RatVec best;
    Rat best_max = 1;
    int best_nz = d + 1;
    for (;;) {
      int pos = 0;
      while (pos < d && ++k[pos] == dims[pos]) k[pos++] = 0;
      if (pos == d) break;
      RatVec a(d, Rat(0));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (k[j]) a[i] += Rat(s.Q(i, j)) * rat(k[j], dims[j]);
      Rat mx = 0;
      int nz = 0;
      for (auto& x : a) {
        x = center(x);
        if (x != 0) ++nz;
        mx = std::max(mx, Rat(abs(x)));
      }
      if (mx < best_max || (mx == best_max && (nz < best_nz || (nz == best_nz && a < best)))) {
        best = a;
        best_max = mx;
        best_nz = nz;
      }
    }
    RatVec wr(d, Rat(0));
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) wr[i] += best[j] * Rat(G(i, j));
    IntVec w = to_int(wr);
    Int g = gcd_entries(w);
    for (auto& x : w) x /= g;
    exchange(r, w, best, work);
  }
  return apply_flags(c, leaves);
}

std::vector<HalfOpenSimplicialCone> unimodularize(const HalfOpenSimplicialCone& c,
                                                  const IntMatrix& lattice) {
  check_full(c);
  if (lattice.rows != c.d || lattice.cols != c.d)
    throw domain_error("DimensionMismatch", "lattice basis must be d × d");
  RatMatrix Minv = inverse(to_rat(lattice));
  HalfOpenSimplicialCone lc = c;
  for (auto& g : lc.gens) {
    RatVec h = Minv * to_rat(g);
    for (const auto& x : h)
      if (!is_integer(x)) throw domain_error("NotInLattice", "generator outside the given lattice");
    g = to_int(h);
  }
  auto parts = unimodularize(lc);
  for (auto& p : parts)
    for (auto& g : p.gens) g = primitive(lattice * g);
  return parts;
}

// ---------------------------------------------------------------- full pipeline

std::vector<UnimodularCell> decompose_for_subspace(const HalfOpenSimplicialCone& c, const Subspace& L) {
  int d = c.d;
  ProjectedLattice pl = projected_lattice(L);
  int ell = pl.ell, dp = d - ell;
  std::vector<UnimodularCell> out;
  for (const auto& cell : adapt_to_subspace(c, L).cells) {
    std::vector<IntVec> lg, tg;
    std::vector<bool> topen;
    for (int j = 0; j < d; ++j) {
      if (cell.in_L[j]) {
        lg.push_back(cell.cone.gens[j]);
      } else {
        tg.push_back(cell.cone.gens[j]);
        topen.push_back(cell.cone.open[j]);
      }
    }
    Int lvol = 1;
    if (ell > 0) {
      IntMatrix lm(ell, ell);
      for (int j = 0; j < ell; ++j) {
        IntVec co = pl.lcoord * lg[j];
        for (int i = 0; i < ell; ++i) lm(i, j) = co[i];
      }
      lvol = abs(det(lm));
    }
    if (dp == 0) {
      out.push_back(UnimodularCell{cell.cone.sign, lvol, lg, {}, {}, {}});
      continue;
    }
    HalfOpenSimplicialCone pc;
    pc.d = dp;
    pc.sign = cell.cone.sign;
    pc.open = topen;
    IntMatrix P(dp, dp);
    for (int j = 0; j < dp; ++j) {
      IntVec p = pl.proj * tg[j];
      for (int i = 0; i < dp; ++i) P(i, j) = p[i];
      pc.gens.push_back(p);
    }
    RatMatrix TG(d, dp);
    for (int j = 0; j < dp; ++j)
      for (int i = 0; i < d; ++i) TG(i, j) = tg[j][i];
    RatMatrix A = TG * inverse(to_rat(P));  // lifts projected vectors into span(tg)
    for (const auto& leaf : unimodularize(pc)) {
      UnimodularCell u;
      u.sign = leaf.sign;
      u.lvol = lvol;
      u.lgens = lg;
      IntMatrix H(dp, dp);
      for (int j = 0; j < dp; ++j)
        for (int i = 0; i < dp; ++i) H(i, j) = leaf.gens[j][i];
      IntMatrix Hinv = to_int(inverse(to_rat(H)));
      IntMatrix tc = Hinv * pl.proj;
      for (int j = 0; j < dp; ++j) {
        u.tgens.push_back(A * to_rat(leaf.gens[j]));
        u.tcoord.push_back(tc.row(j));
      }
      u.open = leaf.open;
      out.push_back(std::move(u));
    }
  }
  return out;
}

std::vector<LinearFormQ> collect_psi(const HalfOpenSimplicialCone& c, const Subspace& L) {
  std::set<RatVec> forms;
  for (const auto& cell : decompose_for_subspace(c, L))
    for (const auto& t : cell.tcoord) forms.insert(to_rat(t));
  std::vector<LinearFormQ> out;
  for (const auto& f : forms) out.emplace_back(f);
  return out;
}

ReducedProblem reduce_lower_dim(const HalfOpenSimplicialCone& c, const AffineShift& shift,
                                const Subspace& L) {
  int d = c.d;
  if (L.ambient() != d || shift.S.rows != d)
    throw domain_error("DimensionMismatch", "cone, shift and subspace ambients differ");
  Subspace W = Subspace::span(d, c.gens);
  if (W.dim() != c.rank()) throw domain_error("DependentGenerators", "cone generators are dependent");
  ReducedProblem r;
  if (!W.contains(L)) {
    r.zero = true;
    return r;
  }
  Subspace Wa = W.annihilator();
  for (const auto& a : Wa.basis_rows())
    for (int j = 0; j < shift.S.cols; ++j) {
      Rat v = 0;
      for (int i = 0; i < d; ++i) v += Rat(a[i]) * shift.S(i, j);
      if (v != 0)
        throw domain_error("NonUniformCosetCondition",
                           "vertex leaves lin(c); lattice coset condition depends on b");
    }
  ProjectedLattice pw = projected_lattice(W);
  int r0 = W.dim();
  r.wbasis = W.basis();
  r.cone.d = r0;
  r.cone.sign = c.sign;
  r.cone.open = c.open;
  for (const auto& g : c.gens) r.cone.gens.push_back(pw.lcoord * g);
  r.shift.S = to_rat(pw.lcoord) * shift.S;
  std::vector<IntVec> lg;
  for (const auto& b : L.basis_rows()) lg.push_back(pw.lcoord * b);
  r.L = Subspace::span(r0, lg);
  return r;
}

}  // namespace iqp
