#pragma once

#include <vector>

#include "iqp/matrix.hpp"

namespace iqp {

struct HNFResult {
  IntMatrix H, U;  // H = U*M, U unimodular
};
struct SNFResult {
  IntMatrix D, P, Q;  // D = P*M*Q, diagonal with d_i | d_{i+1}
};

// row-style Hermite normal form: positive pivots, entries above pivots in [0, pivot)
HNFResult hnf(const IntMatrix& m);
SNFResult snf(const IntMatrix& m);

IntVec primitive(const IntVec& v);

// rows spanning the integer right kernel {x in Z^n : m x = 0}; always saturated
std::vector<IntVec> integer_kernel(const IntMatrix& m);

// A rational subspace L of Q^d, stored as the HNF basis of the saturated lattice L ∩ Z^d.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(int d);
  static Subspace full(int d);
  static Subspace span(int d, const std::vector<RatVec>& gens);
  static Subspace span(int d, const std::vector<IntVec>& gens);

  int ambient() const { return d_; }
  int dim() const { return basis_.rows; }
  const IntMatrix& basis() const { return basis_; }
  std::vector<IntVec> basis_rows() const;

  bool contains(const RatVec& v) const;
  bool contains(const Subspace& o) const;
  Subspace sum(const Subspace& o) const;
  Subspace intersection(const Subspace& o) const;
  // L^⊥ in the dual lattice, in the same coordinates
  Subspace annihilator() const;

  bool operator==(const Subspace& o) const { return d_ == o.d_ && basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  bool operator<(const Subspace& o) const {
    if (d_ != o.d_) return d_ < o.d_;
    if (dim() != o.dim()) return dim() < o.dim();
    return basis_.a < o.basis_.a;
  }

 private:
  int d_ = 0;
  IntMatrix basis_;
};

// Lattice basis of Z^d adapted to L: lbasis spans Λ∩L, complement rows w_i map to
// a basis of the projected lattice Λ_{V/L}.  For x in Q^d,
//   x = Σ_i (lcoord·x)_i lbasis_i + Σ_j (proj·x)_j complement_j.
struct ProjectedLattice {
  int d = 0, ell = 0;
  IntMatrix lbasis;      // ell × d
  IntMatrix complement;  // (d-ell) × d
  IntMatrix lcoord;      // ell × d
  IntMatrix proj;        // (d-ell) × d
};

ProjectedLattice projected_lattice(const Subspace& L);

}  // namespace iqp
