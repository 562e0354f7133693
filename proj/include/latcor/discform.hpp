#pragma once

// The discriminant group L*/L with its Q/Z-valued pairing, and the finite
// subgroup enumeration built on it (subgroups, metabolizers, annihilators).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "latcor/lattice.hpp"

namespace latcor {

inline constexpr std::size_t kDefaultMaxGroup = 10000;

/// Coefficients (a_1, ..., a_k) with 0 <= a_i < d_i against the cyclic
/// generators of a DiscGroup.
struct GroupElement {
  std::vector<std::int64_t> coeffs;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// A finite abelian group Z/d_1 + ... + Z/d_k (d_1 | ... | d_k, d_i > 1)
/// carrying a symmetric pairing into Q/Z.
///
/// Groups built from a lattice also carry dual-vector lifts of the cyclic
/// generators and the projection L* -> L*/L; groups read from a d-invariant
/// table are abstract and carry neither.
class DiscGroup {
 public:
  /// Validates orders (divisibility chain, all > 1) and the pairing
  /// (symmetric, in [0, 1), order-compatible, nondegenerate).
  static DiscGroup abstract(std::vector<std::int64_t> orders, RatMatrix pairing);

  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  Integer order() const;
  /// |G| as a machine integer; throws GroupTooLarge above cap.
  std::size_t checked_order(std::size_t cap) const;
  const RatMatrix& pairing() const { return pairing_; }
  const std::vector<DualVector>& generators() const { return generators_; }
  bool has_lattice() const { return from_lattice_; }

  GroupElement zero() const { return GroupElement{std::vector<std::int64_t>(orders_.size(), 0)}; }
  GroupElement basis_element(std::size_t i) const;
  GroupElement add(const GroupElement& x, const GroupElement& y) const;
  GroupElement negate(const GroupElement& x) const;
  GroupElement multiple(const GroupElement& x, std::int64_t m) const;
  std::int64_t order_of(const GroupElement& x) const;
  /// Reduces arbitrary integer coefficients into canonical range.
  GroupElement reduce(const std::vector<Integer>& coeffs) const;
  bool is_valid(const GroupElement& x) const;

  /// Mixed-radix index in [0, |G|), first coefficient most significant.
  std::size_t index_of(const GroupElement& x) const;
  GroupElement element_at(std::size_t index) const;
  /// All elements in index order; throws GroupTooLarge above cap.
  std::vector<GroupElement> elements(std::size_t cap = kDefaultMaxGroup) const;

  /// A dual vector lifting x (requires a lattice-backed group).
  DualVector lift(const GroupElement& x) const;

 private:
  friend DiscGroup disc_group(const Lattice& lattice);
  friend GroupElement project(const DiscGroup& group, const Lattice& lattice, const DualVector& v);

  std::vector<std::int64_t> orders_;
  RatMatrix pairing_;
  std::vector<DualVector> generators_;
  // rows of the SNF transform restricted to nontrivial divisors
  IntMatrix projector_;
  bool from_lattice_ = false;
};

/// L*/L in Smith normal form coordinates; the trivial group for unimodular L.
DiscGroup disc_group(const Lattice& lattice);

/// pi(v) for v in L*. Throws NotInDualLattice.
GroupElement project(const DiscGroup& group, const Lattice& lattice, const DualVector& v);

/// lambda(x, y) = -Q(x~, y~) mod 1, in [0, 1).
Rational lambda(const DiscGroup& group, const GroupElement& x, const GroupElement& y);

/// A subgroup given by its full, sorted element list.
struct Subgroup {
  std::vector<GroupElement> elements;
  /// Irredundant generators: greedily picked in element order.
  std::vector<GroupElement> generators;

  std::size_t size() const { return elements.size(); }
  bool contains(const GroupElement& x) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements == b.elements; }
  friend bool operator<(const Subgroup& a, const Subgroup& b) { return a.elements < b.elements; }
};

/// Subgroup generated by the given elements.
Subgroup generate(const DiscGroup& group, const std::vector<GroupElement>& generators);

Subgroup whole_group(const DiscGroup& group, std::size_t cap = kDefaultMaxGroup);

/// Every subgroup of order m, sorted and duplicate free.
/// Throws GroupTooLarge when |G| exceeds cap.
std::vector<Subgroup> subgroups_of_order(const DiscGroup& group, std::int64_t m,
                                         std::size_t cap = kDefaultMaxGroup);

/// True iff lambda vanishes on H x H.
bool is_isotropic(const DiscGroup& group, const Subgroup& h);

/// Subgroups M with |M|^2 = |G| on which lambda vanishes.
std::vector<Subgroup> metabolizers(const DiscGroup& group, std::size_t cap = kDefaultMaxGroup);
inline std::vector<Subgroup> metabolizers(const Lattice& lattice, std::size_t cap = kDefaultMaxGroup) {
  return metabolizers(disc_group(lattice), cap);
}

/// {x : lambda(x, h) = 0 for all h in H}.
Subgroup annihilator(const DiscGroup& group, const Subgroup& h, std::size_t cap = kDefaultMaxGroup);

/// Integer square root when n is a perfect square.
std::optional<Integer> exact_sqrt(const Integer& n);

}  // namespace latcor
