#pragma once

// Intermediate lattices L ⊂ L' ⊂ L*, in particular U(M) = pi^-1(M).

#include <vector>

#include "latcor/discform.hpp"

namespace latcor {

/// A lattice L' with L ⊂ L' ⊂ L (x) Q, stored by an HNF-canonical basis.
struct OverLattice {
  /// Basis rows in L-coordinates.
  RatMatrix basis;
  /// basis * gram_L * basis^T.
  RatMatrix gram;
  /// [L' : L].
  Integer index;

  Eigen::Index rank() const { return basis.rows(); }

  friend bool operator==(const OverLattice& a, const OverLattice& b) { return a.basis == b.basis; }
};

/// L + span(vectors), basis canonicalized by HNF with denominators cleared.
OverLattice span_over(const Lattice& lattice, const std::vector<DualVector>& vectors);

/// U(H) = pi^-1(H). Never fails: integrality is a separate query.
OverLattice overlattice(const Lattice& lattice, const DiscGroup& group, const Subgroup& h);

bool is_integral(const OverLattice& u);
bool is_unimodular(const OverLattice& u);

/// (L')* in L-coordinates. Throws NotIntegral.
OverLattice dual_of(const Lattice& lattice, const OverLattice& u);

struct IndexPair {
  Integer over;  ///< [L' : L]
  Integer dual;  ///< [L* : (L')*]
};

/// Both sides of [L':L] = [L*:(L')*]. Throws NotIntegral.
IndexPair index_check(const Lattice& lattice, const OverLattice& u);

/// The integral overlattice as a lattice in its own basis. Throws NotIntegral.
Lattice as_lattice(const OverLattice& u);

}  // namespace latcor
