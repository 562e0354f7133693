#include "latcor/overlattice.hpp"

namespace latcor {

namespace {

// Canonical basis of the lattice spanned by the rows of `generators`
// (which must contain a full-rank sublattice).
OverLattice from_rows(const Lattice& lattice, const RatMatrix& generators) {
  const Eigen::Index n = lattice.rank();
  const Integer scale = common_denominator(generators);
  const IntMatrix scaled = to_integer(RatMatrix(generators * Rational(scale)));
  const HermiteDecomposition h = hnf(scaled);
  if (h.rank != n) throw Error(Errc::InvalidArgument, "generators do not span a full-rank lattice");

  OverLattice out;
  out.basis = to_rational(IntMatrix(h.h.topRows(n))) / Rational(scale);
  out.gram = out.basis * to_rational(lattice.gram()) * out.basis.transpose();
  const Rational volume = abs(det(out.basis));
  out.index = numerator(Rational(1) / volume);
  if (!is_integer(Rational(1) / volume))
    throw Error(Errc::InvalidArgument, "span does not contain L");
  return out;
}

}  // namespace

OverLattice span_over(const Lattice& lattice, const std::vector<DualVector>& vectors) {
  const Eigen::Index n = lattice.rank();
  RatMatrix rows(n + static_cast<Eigen::Index>(vectors.size()), n);
  rows.topRows(n) = RatMatrix::Identity(n, n);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    rows.row(n + static_cast<Eigen::Index>(i)) = vectors[i].coords.transpose();
  return from_rows(lattice, rows);
}

OverLattice overlattice(const Lattice& lattice, const DiscGroup& group, const Subgroup& h) {
  std::vector<DualVector> lifts;
  for (const auto& g : h.generators) lifts.push_back(group.lift(g));
  return span_over(lattice, lifts);
}

bool is_integral(const OverLattice& u) { return latcor::is_integral(u.gram); }

bool is_unimodular(const OverLattice& u) { return is_integral(u) && abs(det(u.gram)) == 1; }

OverLattice dual_of(const Lattice& lattice, const OverLattice& u) {
  if (!is_integral(u)) throw Error(Errc::NotIntegral, "dual_of needs an integral overlattice");
  // rows c with c * gram * basis^T = identity pair integrally with all of L'
  const RatMatrix rows = inverse(RatMatrix(to_rational(lattice.gram()) * u.basis.transpose()));
  return from_rows(lattice, rows);
}

IndexPair index_check(const Lattice& lattice, const OverLattice& u) {
  const OverLattice dual = dual_of(lattice, u);
  // [L*:L] = disc and [(L')*:L] = dual.index
  return IndexPair{u.index, discriminant(lattice) / dual.index};
}

Lattice as_lattice(const OverLattice& u) { return Lattice::make(to_integer(u.gram)); }

}  // namespace latcor
