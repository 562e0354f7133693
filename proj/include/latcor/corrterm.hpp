#pragma once

// Lattice correction terms: exact minimization of chi^2 over characteristic
// cosets, the set D of correction terms of the unimodular overlattices, and
// the embedding test built on it.

#include <cstdint>
#include <vector>

#include "latcor/discform.hpp"
#include "latcor/overlattice.hpp"

namespace latcor {

/// Result of minimizing y^T form y over a coset shift + 2 Z^n.
struct CosetMinimum {
  Rational value;
  RatVector point;
  std::uint64_t nodes = 0;
};

/// Exact branch-and-bound over shift + 2 Z^n for a positive definite
/// rational form. Coordinates are fixed last-to-first against the LDL^T
/// factor of the form; the incumbent starts from greedy nearest-plane
/// rounding. The returned point is the first minimizer in depth-first
/// order, so it does not depend on the thread count.
CosetMinimum minimize_coset(const RatMatrix& form, const RatVector& shift, unsigned threads = 1);

struct MinimizationResult {
  Integer minimum;
  /// Characteristic vector achieving the minimum, in the lattice's basis.
  DualVector witness;
  std::uint64_t nodes_visited = 0;
};

/// min chi^2 over Char(U) for a unimodular positive definite lattice U.
MinimizationResult min_char_square(const Lattice& u, unsigned threads = 1);

/// d_U = (min chi^2 - rank) / 4.
Rational d_lattice(const Lattice& u, unsigned threads = 1);

struct CorrOptions {
  std::size_t max_group = kDefaultMaxGroup;
  unsigned threads = 1;
};

struct DSetEntry {
  Subgroup metabolizer;
  OverLattice overlattice;
  Rational d;
  /// Minimizing characteristic vector of U(M), in L-coordinates.
  DualVector witness;
};

struct DSet {
  std::vector<DSetEntry> entries;
  bool contains_zero = false;
};

/// One correction term per metabolizer of L*/L; empty without metabolizers.
DSet d_set(const Lattice& lattice, const CorrOptions& options = {});

/// L embeds in the standard lattice of its rank iff 0 is in D.
bool embeds_in_standard(const Lattice& lattice, const CorrOptions& options = {});

struct ConstrainedMinimum {
  Rational value;
  /// Characteristic covector of L achieving the value, in L-coordinates.
  DualVector witness;
};

/// min (chi^2 - n) / 4 over chi in Char(L) with pi(chi) in H.
/// Throws EmptyConstraintSet when no characteristic covector projects into H.
ConstrainedMinimum constrained_min(const Lattice& lattice, const DiscGroup& group, const Subgroup& h,
                                   unsigned threads = 1);

}  // namespace latcor
