#include "iqp/patchwork.hpp"

#include <algorithm>
#include <set>

#include "iqp/errors.hpp"

namespace iqp {

SubspaceFamily::SubspaceFamily(int d, std::vector<Subspace> members) : d_(d), m_(std::move(members)) {
  std::sort(m_.begin(), m_.end());
  m_.erase(std::unique(m_.begin(), m_.end()), m_.end());
  for (const auto& a : m_) {
    if (a.ambient() != d) throw domain_error("DimensionMismatch", "family member in another ambient");
    for (const auto& b : m_)
      if (!contains(a.sum(b))) throw domain_error("NotSumClosed", "family is not closed under sum");
  }
}

bool SubspaceFamily::contains(const Subspace& L) const {
  return std::binary_search(m_.begin(), m_.end(), L);
}

SubspaceFamily close_under_sum(int d, const std::vector<Subspace>& gens) {
  std::set<Subspace> fam;
  for (const auto& g : gens) {
    if (g.ambient() != d) throw domain_error("DimensionMismatch", "subspaces in different ambients");
    fam.insert(g);
  }
  std::vector<Subspace> frontier(fam.begin(), fam.end());
  while (!frontier.empty()) {
    std::vector<Subspace> next;
    std::vector<Subspace> cur(fam.begin(), fam.end());
    for (const auto& a : frontier)
      for (const auto& b : cur) {
        Subspace s = a.sum(b);
        if (fam.insert(s).second) next.push_back(s);
      }
    frontier = std::move(next);
  }
  return SubspaceFamily(d, std::vector<Subspace>(fam.begin(), fam.end()));
}

PatchFunction patching_rho(const SubspaceFamily& fam) {
  // μ(0̂,L) = −1 − Σ_{L'⊊L} μ(0̂,L'); process by dimension so the sum is complete
  std::vector<Subspace> order = fam.members();
  std::stable_sort(order.begin(), order.end(),
                   [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
  std::map<Subspace, Int> mu;
  for (const auto& L : order) {
    Int m = -1;
    for (const auto& [K, v] : mu)
      if (K.dim() < L.dim() && L.contains(K)) m -= v;
    mu[L] = m;
  }
  PatchFunction rho;
  for (const auto& [L, v] : mu) rho[L] = -v;
  return rho;
}

Int rho_cone_closed_form(int d, int k, int cardI) {
  if (k < 0 || k > d || cardI < d - k || cardI > d)
    throw domain_error("OutOfRange", "need 0 <= k <= d and d-k <= |I| <= d");
  if (k == d && cardI == 0) return 1;  // the zero subspace alone at the bottom
  Int c = binomial(cardI - 1, d - k - 1);
  return (cardI - d + k) % 2 ? Int(-c) : c;
}

namespace {

// m!·[z^m] of −ln Σ_{p=0}^{q} z^p/p!
Rat neg_log_coeff(int q, int m) {
  // a(z) = Σ_{p≤q} z^p/p!, f = ln a: f' a = a'  ⇒  f_j computed by the usual recurrence
  std::vector<Rat> a(m + 1, Rat(0)), f(m + 1, Rat(0));
  for (int p = 0; p <= std::min(q, m); ++p) a[p] = 1 / Rat(factorial(p));
  for (int j = 1; j <= m; ++j) {
    // j f_j = j a_j − Σ_{i=1}^{j-1} i f_i a_{j−i}
    Rat s = j * a[j];
    for (int i = 1; i < j; ++i) s -= i * f[i] * a[j - i];
    f[j] = s / j;
  }
  return -f[m] * Rat(factorial(m));
}

}  // namespace

Int sigma_simplex(int d, int k, const std::vector<int>& blocks) {
  if (k < 0 || k > d - 1) throw domain_error("OutOfRange", "need 0 <= k <= d-1");
  if (blocks.empty()) throw domain_error("InvalidBlocks", "empty subpartition");
  int total = 0;
  Int prod = 1;
  for (int n : blocks) {
    if (n < d - k + 1) throw domain_error("InvalidBlocks", "block smaller than d-k+1");
    total += n;
    // the limit of the sum is d−k (the printed d−k−1 contradicts σ_{3,2}(2) = 1)
    Rat v = neg_log_coeff(d - k, n);
    prod *= to_int(RatVec{v})[0];
  }
  if (total > d + 1) throw domain_error("InvalidBlocks", "blocks exceed d+1 labels");
  return blocks.size() % 2 ? prod : Int(-prod);
}

std::vector<Int> subpartition_mobius(int n, int Nmax) {
  if (n < 2) throw domain_error("OutOfRange", "block lower bound must be at least 2");
  // A(N) = Σ over subpartitions J of [N] (blocks ≥ n, J = ∅ allowed) of Π μ(|B|);
  // μ_N = −(A(N) − μ_N) by the Möbius recursion at the single block [N].
  std::vector<Int> mu(Nmax + 1, Int(0)), A(Nmax + 1, Int(0));
  A[0] = 1;
  for (int N = 1; N <= Nmax; ++N) {
    Int rest = A[N - 1];
    for (int s = n; s < N; ++s) rest += binomial(N - 1, s - 1) * mu[s] * A[N - s];
    if (N >= n) {
      mu[N] = -rest;
      A[N] = rest + mu[N];
    } else {
      A[N] = rest;
    }
  }
  mu[0] = 0;
  if (Nmax >= 1) mu[1] = 1;  // the convention, not a poset value when n ≥ 2
  return mu;
}

SubspaceFamily cone_face_family(int d, const std::vector<IntVec>& gens, int k) {
  if (static_cast<int>(gens.size()) != d) throw domain_error("DimensionMismatch", "need d generators");
  if (k < 0 || k > d) throw domain_error("OutOfRange", "need 0 <= k <= d");
  std::vector<Subspace> fam;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    if (__builtin_popcount(mask) < d - k) continue;
    std::vector<IntVec> g;
    for (int i = 0; i < d; ++i)
      if (mask >> i & 1) g.push_back(gens[i]);
    fam.push_back(Subspace::span(d, g));
  }
  return SubspaceFamily(d, fam);
}

}  // namespace iqp
