#include "latcor/lattice.hpp"

#include <utility>

namespace latcor {

Lattice::Lattice(IntMatrix gram, Orientation orientation)
    : gram_(std::move(gram)), gram_inverse_(inverse(gram_)), orientation_(orientation) {}

Lattice Lattice::make(const IntMatrix& gram) {
  if (gram.rows() == 0) throw Error(Errc::InvalidArgument, "lattice of rank 0");
  if (!is_symmetric(gram)) throw Error(Errc::NotSymmetric, "Gram matrix is not symmetric");
  if (det(gram) == 0) throw Error(Errc::SingularForm, "Gram matrix is singular");
  if (is_positive_definite(to_rational(gram))) return Lattice(gram, Orientation::AsGiven);
  IntMatrix negated = -gram;
  if (is_positive_definite(to_rational(negated))) return Lattice(negated, Orientation::Negated);
  throw Error(Errc::IndefiniteForm, "form is indefinite");
}

Rational Lattice::pair(const DualVector& x, const DualVector& y) const {
  return x.coords.dot(to_rational(gram_) * y.coords);
}

RatVector Lattice::basis_pairings(const DualVector& x) const { return to_rational(gram_) * x.coords; }

bool Lattice::contains_dual(const DualVector& x) const {
  const RatVector p = basis_pairings(x);
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (!is_integer(p(i))) return false;
  return true;
}

IntVector Lattice::dual_coordinates(const DualVector& x) const {
  if (x.coords.size() != rank()) throw Error(Errc::InvalidArgument, "dual vector has the wrong length");
  if (!contains_dual(x)) throw Error(Errc::NotInDualLattice, "vector does not lie in the dual lattice");
  return to_integer(basis_pairings(x));
}

DualVector Lattice::from_dual_coordinates(const IntVector& z) const {
  return DualVector{gram_inverse_ * to_rational(z)};
}

Integer discriminant(const Lattice& lattice) { return abs(det(lattice.gram())); }

bool is_characteristic(const Lattice& lattice, const DualVector& chi) {
  const IntVector z = lattice.dual_coordinates(chi);
  for (Eigen::Index i = 0; i < z.size(); ++i)
    if (mod_floor(z(i) - lattice.gram()(i, i), 2) != 0) return false;
  return true;
}

CharCoset characteristic_base(const Lattice& lattice) {
  const Eigen::Index n = lattice.rank();
  IntVector parity(n);
  for (Eigen::Index i = 0; i < n; ++i) parity(i) = mod_floor(lattice.gram()(i, i), 2);
  return CharCoset{lattice.from_dual_coordinates(parity), lattice.gram_inverse()};
}

namespace gram {

IntMatrix standard(Eigen::Index n) { return IntMatrix::Identity(n, n); }

IntMatrix a_root(Eigen::Index n) {
  IntMatrix g = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = 2;
    if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
  }
  return g;
}

IntMatrix d_root(Eigen::Index n) {
  if (n < 4) throw Error(Errc::InvalidArgument, "D_n needs n >= 4");
  IntMatrix g = a_root(n - 1);
  IntMatrix out = IntMatrix::Zero(n, n);
  out.topLeftCorner(n - 1, n - 1) = g;
  out(n - 1, n - 1) = 2;
  out(n - 1, n - 3) = out(n - 3, n - 1) = -1;
  return out;
}

IntMatrix e8() {
  // chain 0-1-2-3-4-5-6 with node 7 attached to node 4
  IntMatrix g = IntMatrix::Zero(8, 8);
  g.topLeftCorner(7, 7) = a_root(7);
  g(7, 7) = 2;
  g(7, 4) = g(4, 7) = -1;
  return g;
}

IntMatrix diagonal(std::initializer_list<long> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  IntMatrix g = IntMatrix::Zero(n, n);
  Eigen::Index i = 0;
  for (long e : entries) {
    g(i, i) = e;
    ++i;
  }
  return g;
}

IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix g = IntMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  g.topLeftCorner(a.rows(), a.cols()) = a;
  g.bottomRightCorner(b.rows(), b.cols()) = b;
  return g;
}

}  // namespace gram

}  // namespace latcor
