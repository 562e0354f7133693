#pragma once

#include "latcor/exactmat.hpp"

namespace latcor {

enum class Orientation { AsGiven, Negated };

/// An element of L (x) Q, in coordinates with respect to the basis of L.
struct DualVector {
  RatVector coords;

  friend bool operator==(const DualVector& a, const DualVector& b) { return a.coords == b.coords; }
};

/// A positive definite integral lattice (L, Q) given by its Gram matrix.
///
/// Negative definite input is negated on construction; orientation()
/// records that so reports can be phrased against the original form.
class Lattice {
 public:
  /// Throws NotSymmetric, SingularForm or IndefiniteForm.
  static Lattice make(const IntMatrix& gram);

  const IntMatrix& gram() const { return gram_; }
  const RatMatrix& gram_inverse() const { return gram_inverse_; }
  Orientation orientation() const { return orientation_; }
  Eigen::Index rank() const { return gram_.rows(); }

  /// Q(x, y) extended to L (x) Q.
  Rational pair(const DualVector& x, const DualVector& y) const;
  Rational square(const DualVector& x) const { return pair(x, x); }

  /// Pairings with the basis of L, i.e. gram * coords.
  RatVector basis_pairings(const DualVector& x) const;
  bool contains_dual(const DualVector& x) const;
  /// Integer pairings with the basis; throws NotInDualLattice.
  IntVector dual_coordinates(const DualVector& x) const;
  /// The dual vector whose basis pairings are z.
  DualVector from_dual_coordinates(const IntVector& z) const;

 private:
  Lattice(IntMatrix gram, Orientation orientation);

  IntMatrix gram_;
  RatMatrix gram_inverse_;
  Orientation orientation_;
};

inline Lattice make_lattice(const IntMatrix& gram) { return Lattice::make(gram); }

/// |det(gram)|.
Integer discriminant(const Lattice& lattice);

inline bool is_unimodular(const Lattice& lattice) { return discriminant(lattice) == 1; }

/// Q(chi, y) = Q(y, y) mod 2 for every y in L. Throws NotInDualLattice.
bool is_characteristic(const Lattice& lattice, const DualVector& chi);

/// The coset base + 2 * span(sublattice rows), rows in L-coordinates.
struct CharCoset {
  DualVector base;
  RatMatrix sublattice;
};

/// Char(L) = base + 2 L*, where base pairs with the basis of L to the
/// parities of the diagonal of the Gram matrix.
CharCoset characteristic_base(const Lattice& lattice);

/// Gram matrices of standard lattices, all positive definite.
namespace gram {

IntMatrix standard(Eigen::Index n);
/// Root lattice A_n (tridiagonal 2 / -1).
IntMatrix a_root(Eigen::Index n);
/// Root lattice D_n, n >= 4.
IntMatrix d_root(Eigen::Index n);
IntMatrix e8();
IntMatrix diagonal(std::initializer_list<long> entries);
IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b);

}  // namespace gram

}  // namespace latcor
