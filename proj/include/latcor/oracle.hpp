#pragma once

// Brute-force oracles. Each one is deliberately independent of the
// optimized path it cross-checks: box enumeration instead of LDL^T
// branch-and-bound, generated-by-k-elements instead of incremental
// subgroup extension, explicit vector search instead of correction terms.

#include <cstdint>
#include <optional>
#include <vector>

#include "latcor/discform.hpp"

namespace latcor::oracle {

struct EmbedCaps {
  long max_diagonal = 36;
  Eigen::Index max_rank = 8;
  std::uint64_t max_nodes = 50'000'000;
};

struct EmbedResult {
  bool embeds = false;
  /// Rows are images of the basis vectors in Z^n when embeds is true.
  std::vector<std::vector<long>> images;
};

/// Exhaustive search for v_1..v_n in Z^n with v_i . v_j = gram(i, j).
/// Throws SearchTooLarge outside the caps.
EmbedResult brute_embed(const Lattice& lattice, const EmbedCaps& caps = {});

/// min chi^2 over the characteristic coset of a unimodular lattice, by
/// enumerating every coset point in the box |y_i|^2 <= bound * (G^-1)_ii.
Integer brute_char_min(const Lattice& u, const Integer& bound, std::uint64_t max_points = 200'000'000);

/// Every subgroup, as the closures of all k-tuples of elements
/// (k = number of cyclic factors). Throws SearchTooLarge when |G| > 512.
std::vector<Subgroup> brute_subgroups(const DiscGroup& group);

/// True iff u has exactly 2n vectors of square 1 and they span u.
/// Throws SearchTooLarge for rank > 12 or an oversized search box.
bool is_standard(const Lattice& u, std::uint64_t max_points = 200'000'000);

/// All integer vectors x with x^T gram x <= bound, via the same box.
std::vector<std::vector<long>> short_vectors(const IntMatrix& gram, const Integer& bound,
                                             std::uint64_t max_points = 200'000'000);

}  // namespace latcor::oracle
