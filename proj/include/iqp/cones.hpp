#pragma once

#include <vector>

#include "iqp/lattice.hpp"
#include "iqp/steppoly.hpp"

namespace iqp {

// Simplicial cone {Σ k_i g_i : k_i ≥ 0, k_i > 0 where open[i]}, counted with sign.
struct HalfOpenSimplicialCone {
  int d = 0;
  std::vector<IntVec> gens;
  std::vector<bool> open;
  int sign = 1;

  int rank() const { return static_cast<int>(gens.size()); }
};

HalfOpenSimplicialCone closed_cone(int d, const std::vector<IntVec>& gens, int sign = 1);
// exact membership; x must have length d
bool cone_contains(const HalfOpenSimplicialCone& c, const RatVec& x);
// |det| of the generators w.r.t. Z^d (full-rank cones only)
Int cone_index(const HalfOpenSimplicialCone& c);

// vertex s(b) = S b of a parametric shifted cone; S is d × N
struct AffineShift {
  RatMatrix S;
  int params() const { return S.cols; }
};

// Cell of an L-adapted decomposition: the generators in_L[i] span L.
struct AdaptedCell {
  HalfOpenSimplicialCone cone;
  std::vector<bool> in_L;
};

// Exact signed decomposition of c into cones having a face parallel to L.
// Half-open flags make it a pointwise identity, so no lower-dimensional remainders are produced;
// the second list is kept for the interface and is always empty.
struct Adaptation {
  std::vector<AdaptedCell> cells;
  std::vector<HalfOpenSimplicialCone> lower;
};
Adaptation adapt_to_subspace(const HalfOpenSimplicialCone& c, const Subspace& L);

// Signed half-open decomposition into cones unimodular w.r.t. the lattice spanned by
// the columns of `lattice` (d × d, default Z^d). Generators stay in ambient coordinates.
std::vector<HalfOpenSimplicialCone> unimodularize(const HalfOpenSimplicialCone& c);
std::vector<HalfOpenSimplicialCone> unimodularize(const HalfOpenSimplicialCone& c,
                                                  const IntMatrix& lattice);

// A leaf of the full pipeline: L-part generators, transverse generators (lifted back to V)
// unimodular for the projected lattice, and the integer forms giving the transverse coordinates
// of a point of V.
struct UnimodularCell {
  int sign = 1;
  Int lvol = 1;
  std::vector<IntVec> lgens;
  std::vector<RatVec> tgens;
  std::vector<IntVec> tcoord;
  std::vector<bool> open;
};
std::vector<UnimodularCell> decompose_for_subspace(const HalfOpenSimplicialCone& c, const Subspace& L);

// Ψ^L_c: the transverse coordinate forms of all cells, deduplicated and sorted
std::vector<LinearFormQ> collect_psi(const HalfOpenSimplicialCone& c, const Subspace& L);

// Lower-dimensional cone: either nothing to sum (L not inside lin c) or the same problem
// restated in coordinates of the saturated lattice of W = lin c.
struct ReducedProblem {
  bool zero = false;
  HalfOpenSimplicialCone cone;  // in W-coordinates
  AffineShift shift;            // in W-coordinates
  Subspace L;                   // in W-coordinates
  IntMatrix wbasis;             // rows: basis of Λ∩W
};
ReducedProblem reduce_lower_dim(const HalfOpenSimplicialCone& c, const AffineShift& shift,
                                const Subspace& L);

// ---------------------------------------------------------------- series

// Truncated Laurent series in t and ε with quasi-polynomial coefficients.
class BiLaurentSeries {
 public:
  BiLaurentSeries() = default;
  BiLaurentSeries(int N, int tmin, int tmax, int emin, int emax);

  int params() const { return N_; }
  int tmin() const { return tmin_; }
  int tmax() const { return tmax_; }
  int emin() const { return emin_; }
  int emax() const { return emax_; }
  bool in_window(int t, int e) const {
    return t >= tmin_ && t <= tmax_ && e >= emin_ && e <= emax_;
  }
  // zero outside the window
  const QP& at(int t, int e) const;
  QP& ref(int t, int e);
  void add_scaled(const BiLaurentSeries& o, const Rat& c);

 private:
  int N_ = 0, tmin_ = 0, tmax_ = -1, emin_ = 0, emax_ = -1;
  std::vector<QP> c_;
  QP zero_;
};

// Expansion of e^{-<ξ,s(b)>} S^L(s(b) + cell)(ξ) at ξ = t(ℓ + ερ), t-orders [-d, m_max],
// ε-orders [-d, e_max].  Throws DegenerateDirection when <ℓ,g> = <ρ,g> = 0 for a generator.
BiLaurentSeries cell_series(const UnimodularCell& cell, const AffineShift& shift, const RatVec& ell,
                            const RatVec& rho, int m_max, int e_max = 0);

BiLaurentSeries cone_intermediate_series(const HalfOpenSimplicialCone& c, const AffineShift& shift,
                                         const Subspace& L, const RatVec& ell, const RatVec& rho,
                                         int m_max, int e_max = 0);

// Bernoulli polynomial B_n(δ) of a quasi-polynomial argument
QP bernoulli_poly(int n, const QP& delta);

}  // namespace iqp
