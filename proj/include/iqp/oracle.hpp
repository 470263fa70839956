#pragma once

#include <vector>

#include "iqp/cones.hpp"
#include "iqp/parametric.hpp"

// Brute-force reference computations. Nothing here uses the cone decompositions.
namespace iqp {

// {x : A x ≤ c}
struct HRep {
  RatMatrix A;
  RatVec c;
};

struct VPolytope {
  int d = 0;
  std::vector<RatVec> vertices;
  HRep h;
};

// facets plus the equations of the affine hull (as pairs of inequalities)
HRep hrep_from_vertices(int d, const std::vector<RatVec>& verts);
// all basic feasible points, sorted; empty if infeasible
std::vector<RatVec> vertices_from_hrep(int d, const HRep& h);

VPolytope vpolytope(int d, const std::vector<RatVec>& verts);
// no vertices if 𝔭(b) is empty
VPolytope vpolytope(const ParametricPolytope& pp, const RatVec& b);

int affine_dim(const std::vector<RatVec>& pts);

// Σ over cosets y + L through lattice points of ∫_{𝔭∩(y+L)} h, with Lebesgue measure normalized
// by Λ∩L.  At most `bound` cosets are visited (Resource error beyond).
Rat brute_intermediate_sum(const VPolytope& p, const Subspace& L, const Weight& h, long bound = 1000000);

// ∫_𝔭 <ℓ,x>^m/m! dx; 0 for lower-dimensional 𝔭
Rat integrate_polytope(const VPolytope& p, const RatVec& ell, int m);
Rat integrate_polytope(const VPolytope& p, const Weight& h);

// ∫_{𝔭(b)} h as a polynomial in b, valid on the closure of the chamber
QP integrate_parametric(const ParametricPolytope& pp, const Chamber& ch, const Weight& h);

// Σ sign·[x ∈ cell] == [x ∈ target] at every point
bool indicator_check(const std::vector<HalfOpenSimplicialCone>& cells, const HalfOpenSimplicialCone& target,
                     const std::vector<RatVec>& points);

}  // namespace iqp
