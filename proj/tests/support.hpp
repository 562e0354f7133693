#pragma once

// Random lattice generators shared by the property tests. Everything is
// driven by a caller-supplied mt19937 with a fixed seed.

#include <random>

#include "latcor/discform.hpp"

namespace latcor::testing {

inline long uniform(std::mt19937& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// B B^T for a random nonsingular integer B of the given rank; such a
/// lattice sits inside Z^n by construction and its discriminant is a square.
inline IntMatrix random_sublattice_gram(std::mt19937& rng, Eigen::Index n, long max_disc) {
  for (;;) {
    IntMatrix b(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) b(i, j) = Integer(uniform(rng, -2, 2));
    const Integer d = abs(det(b));
    if (d == 0 || d * d > max_disc) continue;
    IntMatrix g = b * b.transpose();
    return g;
  }
}

/// A random symmetric positive definite Gram matrix with small entries.
inline IntMatrix random_pd_gram(std::mt19937& rng, Eigen::Index n, long max_disc) {
  for (;;) {
    IntMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      g(i, i) = Integer(uniform(rng, 1, 6));
      for (Eigen::Index j = i + 1; j < n; ++j) g(i, j) = g(j, i) = Integer(uniform(rng, -2, 2));
    }
    if (!is_positive_definite(to_rational(g))) continue;
    if (det(g) > max_disc) continue;
    return g;
  }
}

/// Alternates both generators over ranks 1..max_rank.
inline IntMatrix random_lattice_gram(std::mt19937& rng, Eigen::Index max_rank, long max_disc) {
  const Eigen::Index n = uniform(rng, 1, max_rank);
  return uniform(rng, 0, 1) ? random_sublattice_gram(rng, n, max_disc) : random_pd_gram(rng, n, max_disc);
}

/// Product of a few elementary row operations with multipliers in {-1, 1}.
inline IntMatrix random_unimodular(std::mt19937& rng, Eigen::Index n, int steps) {
  IntMatrix p = IntMatrix::Identity(n, n);
  if (n < 2) return uniform(rng, 0, 1) ? p : IntMatrix(-p);
  for (int s = 0; s < steps; ++s) {
    const Eigen::Index i = uniform(rng, 0, n - 1);
    Eigen::Index j = uniform(rng, 0, n - 2);
    if (j >= i) ++j;
    switch (uniform(rng, 0, 2)) {
      case 0: p.row(i) += p.row(j); break;
      case 1: p.row(i) -= p.row(j); break;
      default: p.row(i).swap(p.row(j)); break;
    }
  }
  return p;
}

inline IntMatrix change_basis(const IntMatrix& gram, const IntMatrix& p) { return p * gram * p.transpose(); }

inline DualVector dual(std::initializer_list<Rational> entries) {
  RatVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const auto& e : entries) v(i++) = e;
  return DualVector{v};
}

inline GroupElement elem(std::initializer_list<std::int64_t> coeffs) { return GroupElement{coeffs}; }

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (long v : r) m(i, j++) = Integer(v);
    ++i;
  }
  return m;
}

/// The negative definite rank 9 filling: <-1> plus a -2 chain with +1 links.
inline IntMatrix negative_nine() {
  IntMatrix g = IntMatrix::Zero(9, 9);
  g(0, 0) = -1;
  for (Eigen::Index i = 1; i < 9; ++i) {
    g(i, i) = -2;
    if (i + 1 < 9) g(i, i + 1) = g(i + 1, i) = 1;
  }
  return g;
}

}  // namespace latcor::testing
