#pragma once

#include <map>
#include <vector>

#include "iqp/lattice.hpp"

namespace iqp {

// Sum-closed family of subspaces, sorted by the canonical order of Subspace.
class SubspaceFamily {
 public:
  SubspaceFamily() = default;
  // throws Domain "NotSumClosed" unless the members are closed under pairwise sum
  SubspaceFamily(int d, std::vector<Subspace> members);

  int ambient() const { return d_; }
  const std::vector<Subspace>& members() const { return m_; }
  size_t size() const { return m_.size(); }
  bool contains(const Subspace& L) const;

 private:
  int d_ = 0;
  std::vector<Subspace> m_;
};

using PatchFunction = std::map<Subspace, Int>;

SubspaceFamily close_under_sum(int d, const std::vector<Subspace>& gens);
// ρ(L) = −μ(0̂, L) on the family with a bottom element adjoined
PatchFunction patching_rho(const SubspaceFamily& fam);

// ρ on the face-span family {L_I : |I| ≥ d−k} of a simplicial cone
Int rho_cone_closed_form(int d, int k, int cardI);
// patching value on the Barvinok family of a d-simplex, by block sizes of the subpartition
Int sigma_simplex(int d, int k, const std::vector<int>& blocks);
// Möbius values μ_N(n), N = 0..Nmax, of the subpartition posets with blocks ≥ n, by recursion
// over block sizes (μ_1 = 1 and μ_N = 0 for 2 ≤ N < n by convention)
std::vector<Int> subpartition_mobius(int n, int Nmax);

// {span{g_i : i ∈ I} : |I| ≥ d−k}
SubspaceFamily cone_face_family(int d, const std::vector<IntVec>& gens, int k);

}  // namespace iqp
