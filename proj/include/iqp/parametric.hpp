#pragma once

#include <vector>

#include "iqp/cones.hpp"
#include "iqp/patchwork.hpp"

namespace iqp {

// 𝔭(b) = {x ∈ R^d : <μ_j, x> ≤ b_j}, μ is N × d
struct ParametricPolytope {
  IntMatrix mu;
  int N = 0, d = 0;
};

// throws Domain "NotPositivelySpanning" unless the rows of μ positively span R^d
ParametricPolytope make_polytope(const IntMatrix& mu);

// indices are 0-based
struct BasisSubset {
  std::vector<int> B;
  RatMatrix s;               // d × N vertex map, zero outside the columns of B
  std::vector<IntVec> cone;  // primitive generators of 𝔠_B, cone[i] is the edge leaving wall B[i]
};

std::vector<BasisSubset> enumerate_bases(const ParametricPolytope& pp);
RatMatrix vertex_map(const ParametricPolytope& pp, const std::vector<int>& B);
BasisSubset make_basis(const ParametricPolytope& pp, const std::vector<int>& B);

struct Chamber {
  std::vector<BasisSubset> bases;
  RatVec sample;
};

// throws Domain "OnWall" / "EmptyChamber"
Chamber chamber_of(const ParametricPolytope& pp, const RatVec& bstar);
// b_k − <μ_k, s_B(b)> ≥ 0 for every B of the chamber and k ∉ B
bool in_closure(const ParametricPolytope& pp, const Chamber& ch, const RatVec& b);

// h(x) = Σ coeff·<ell,x>^power / power!
struct WeightTerm {
  Rat coeff;
  RatVec ell;
  int power = 0;
};
struct Weight {
  std::vector<WeightTerm> terms;
  int degree() const;
  static Weight one(int d);
};

// E^L(μ, h, τ)
QP intermediate_ehrhart_qp(const ParametricPolytope& pp, const Chamber& ch, const Subspace& L,
                           const Weight& h);

// faces of codimension ≤ k at the sample point, closed under sum
SubspaceFamily barvinok_family(const ParametricPolytope& pp, const Chamber& ch, int k);
QP barvinok_patched_qp(const ParametricPolytope& pp, const Chamber& ch, int k, const Weight& h);
QP cone_by_cone_qp(const ParametricPolytope& pp, const Chamber& ch, int k, const Weight& h);

struct Variant {
  enum Kind { Exact, Barvinok, ConeByCone } kind = Exact;
  Subspace L;  // Exact
  int k = 0;   // patched variants
};
QP chamber_qp(const ParametricPolytope& pp, const Chamber& ch, const Variant& v, const Weight& h);
// quasi-polynomial in t of the dilations 𝔭(t·b0), b0 in the closure of the chamber
QP dilation_qp(const ParametricPolytope& pp, const Chamber& ch, const RatVec& b0, const Variant& v,
               const Weight& h);

// b^i_j = max over the vertices of polytope i of <μ_j, x>; checks each 𝔭(b^i) has exactly
// those vertices (Domain "NormalsInsufficient" otherwise)
std::vector<RatVec> minkowski_support(const std::vector<std::vector<RatVec>>& vertex_lists,
                                      const IntMatrix& mu);
// a chamber whose closure contains every b^i (sample near Σ b^i)
Chamber minkowski_chamber(const ParametricPolytope& pp, const std::vector<RatVec>& bs);
// vertices of 𝔭(b), sorted and deduplicated
std::vector<RatVec> polytope_vertices(const ParametricPolytope& pp, const RatVec& b);

// {y ∈ R^N : Φy = λ, y ≥ 0} as 𝔭(μ, b) in lattice coordinates x of ker Φ, with y = b + K x
struct PartitionConversion {
  ParametricPolytope pp;
  RatVec b;
  IntMatrix K;  // N × d, columns a basis of ker Φ ∩ Z^N
  bool integral = false;  // b integer, so lattice points correspond
};
PartitionConversion partition_to_parametric(const IntMatrix& Phi, const RatVec& lambda);

}  // namespace iqp
