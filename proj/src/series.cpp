#include <map>

#include "iqp/cones.hpp"
#include "iqp/errors.hpp"

namespace iqp {

BiLaurentSeries::BiLaurentSeries(int N, int tmin, int tmax, int emin, int emax)
    : N_(N), tmin_(tmin), tmax_(tmax), emin_(emin), emax_(emax), zero_(N) {
  c_.assign(static_cast<size_t>(std::max(0, tmax - tmin + 1)) * std::max(0, emax - emin + 1), QP(N));
}

const QP& BiLaurentSeries::at(int t, int e) const {
  if (!in_window(t, e)) return zero_;
  return c_[static_cast<size_t>(t - tmin_) * (emax_ - emin_ + 1) + (e - emin_)];
}

QP& BiLaurentSeries::ref(int t, int e) {
  if (!in_window(t, e)) throw internal_error("SeriesWindow", "coefficient outside truncation window");
  return c_[static_cast<size_t>(t - tmin_) * (emax_ - emin_ + 1) + (e - emin_)];
}

void BiLaurentSeries::add_scaled(const BiLaurentSeries& o, const Rat& c) {
  for (int t = o.tmin_; t <= o.tmax_; ++t)
    for (int e = o.emin_; e <= o.emax_; ++e) {
      const QP& x = o.at(t, e);
      if (x.is_zero()) continue;
      ref(t, e).add_scaled(x, c);
    }
}

QP bernoulli_poly(int n, const QP& delta) {
  QP r(delta.params());
  QP p = QP::constant(delta.params(), 1);  // delta^(n-k), built from k = n downwards
  for (int k = n; k >= 0; --k) {
    Rat c = Rat(binomial(n, k)) * bernoulli_number(k);
    if (c != 0) r.add_scaled(p, c);
    if (k > 0) p = p * delta;
  }
  return r;
}

namespace {

// polynomial in ε with orders [0, hi]
using EpsPoly = std::vector<Rat>;

EpsPoly mul_trunc(const EpsPoly& a, const EpsPoly& b, int hi) {
  EpsPoly r(hi + 1, Rat(0));
  for (size_t i = 0; i < a.size() && static_cast<int>(i) <= hi; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size() && static_cast<int>(i + j) <= hi; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

struct CellDfs {
  int d, N, hi, E, budget;
  std::vector<std::vector<EpsPoly>> fac;  // fac[i][n] = (λ_i + ερ_i)^n / n!
  std::vector<std::vector<QP>> bern;      // bern[i][n] = B_n(δ_i)
  BiLaurentSeries* out;

  void run(size_t i, int used, const EpsPoly& eps, const QP& q) {
    if (i == fac.size()) {
      int j = used - d;
      // eps holds orders -E .. hi - E
      for (int k = 0; k <= hi; ++k)
        if (eps[k] != 0 && out->in_window(j, k - E)) out->ref(j, k - E).add_scaled(q, eps[k]);
      return;
    }
    for (int n = 0; used + n <= budget; ++n) {
      run(i + 1, used + n, mul_trunc(eps, fac[i][n], hi), n == 0 ? q : q * bern[i][n]);
    }
  }
};

}  // namespace

BiLaurentSeries cell_series(const UnimodularCell& cell, const AffineShift& shift, const RatVec& ell,
                            const RatVec& rho, int m_max, int e_max) {
  int N = shift.params();
  int ellL = static_cast<int>(cell.lgens.size());
  int dp = static_cast<int>(cell.tgens.size());
  int d = ellL + dp;
  if (static_cast<int>(ell.size()) != d || static_cast<int>(rho.size()) != d || shift.S.rows != d)
    throw domain_error("DimensionMismatch", "direction or shift length differs from d");

  std::vector<RatVec> all;
  for (const auto& g : cell.lgens) all.push_back(to_rat(g));
  for (const auto& g : cell.tgens) all.push_back(g);
  std::vector<Rat> lam, rh;
  int E = 0;
  for (const auto& g : all) {
    lam.push_back(dot(ell, g));
    rh.push_back(dot(rho, g));
    if (lam.back() == 0) {
      if (rh.back() == 0)
        throw domain_error("DegenerateDirection", "<l,g> and <rho,g> both vanish on a generator");
      ++E;
    }
  }
  int hi = e_max + E;
  BiLaurentSeries out(N, -d, m_max, -d, e_max);
  if (hi < 0) return out;

  // Π 1/(λ_g + ερ_g) = ε^{-E} Π_{λ=0} 1/ρ_g · Π_{λ≠0} (1/λ) Σ_k (−ρ/λ)^k ε^k
  EpsPoly base(hi + 1, Rat(0));
  base[0] = Rat(cell.sign) * Rat(cell.lvol) * (d % 2 ? -1 : 1);
  for (size_t g = 0; g < all.size(); ++g) {
    if (lam[g] == 0) {
      for (auto& x : base) x /= rh[g];
      continue;
    }
    EpsPoly inv(hi + 1);
    Rat r = -rh[g] / lam[g], p = 1 / lam[g];
    for (int k = 0; k <= hi; ++k) {
      inv[k] = p;
      p *= r;
    }
    base = mul_trunc(base, inv, hi);
  }

  CellDfs dfs;
  dfs.d = d;
  dfs.N = N;
  dfs.hi = hi;
  dfs.E = E;
  dfs.budget = d + m_max;
  dfs.out = &out;
  for (int i = 0; i < dp; ++i) {
    const Rat& l = lam[ellL + i];
    const Rat& r = rh[ellL + i];
    std::vector<EpsPoly> f;
    std::vector<QP> b;
    // transverse coordinate c_i(b) = <tcoord_i, S b>
    RatVec eta(N, Rat(0));
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < d; ++k) eta[j] += Rat(cell.tcoord[i][k]) * shift.S(k, j);
    QP delta(N);
    if (cell.open[i]) {
      delta = QP::constant(N, 1) - QP::step(N, eta);
    } else {
      RatVec neg = eta;
      for (auto& x : neg) x = -x;
      delta = QP::step(N, neg);
    }
    EpsPoly pw{Rat(1)};  // (λ + ερ)^n
    for (int n = 0; n <= dfs.budget; ++n) {
      EpsPoly fn(pw.size());
      Rat fact = Rat(factorial(n));
      for (size_t k = 0; k < pw.size(); ++k) fn[k] = pw[k] / fact;
      f.push_back(fn);
      b.push_back(bernoulli_poly(n, delta));
      EpsPoly nx(pw.size() + 1, Rat(0));
      for (size_t k = 0; k < pw.size(); ++k) {
        nx[k] += pw[k] * l;
        nx[k + 1] += pw[k] * r;
      }
      pw = nx;
    }
    dfs.fac.push_back(std::move(f));
    dfs.bern.push_back(std::move(b));
  }
  dfs.run(0, 0, base, QP::constant(N, 1));
  return out;
}

BiLaurentSeries cone_intermediate_series(const HalfOpenSimplicialCone& c, const AffineShift& shift,
                                         const Subspace& L, const RatVec& ell, const RatVec& rho,
                                         int m_max, int e_max) {
  BiLaurentSeries total(shift.params(), -c.d, m_max, -c.d, e_max);
  for (const auto& cell : decompose_for_subspace(c, L))
    total.add_scaled(cell_series(cell, shift, ell, rho, m_max, e_max), 1);
  return total;
}

}  // namespace iqp
