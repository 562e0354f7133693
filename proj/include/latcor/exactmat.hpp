#pragma once

// Exact integer and rational dense matrices.
//
// All lattice computations run over Eigen matrices whose scalars are
// GMP-backed boost::multiprecision numbers, so nothing ever overflows and no
// floating point enters a correctness path.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>
#include <vector>

#include "latcor/error.hpp"

namespace latcor {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = Vector<Integer>;
using RatVector = Vector<Rational>;

// ---------------------------------------------------------------------------
// Scalar helpers

/// Floor division; b must be nonzero.
Integer floor_div(const Integer& a, const Integer& b);
/// Representative of a mod b in [0, |b|).
Integer mod_floor(const Integer& a, const Integer& b);
Integer floor(const Rational& q);
/// q mod 1, in [0, 1).
Rational frac(const Rational& q);
bool is_integer(const Rational& q);
Integer lcm(const Integer& a, const Integer& b);

/// Parses "p/q", "p" or "-p/q" into a canonical rational.
Rational parse_rational(const std::string& text);
/// Canonical "p/q" text, or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// ---------------------------------------------------------------------------
// Matrix helpers

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != a(j, i)) return false;
  return true;
}

inline RatMatrix to_rational(const IntMatrix& a) { return a.cast<Rational>(); }
inline RatVector to_rational(const IntVector& a) { return a.cast<Rational>(); }

bool is_integral(const RatMatrix& a);
/// Throws NotIntegral when some entry has a nontrivial denominator.
IntMatrix to_integer(const RatMatrix& a);
IntVector to_integer(const RatVector& a);
/// Least common multiple of all entry denominators.
Integer common_denominator(const RatMatrix& a);

/// Exact determinant by fraction-free (Bareiss) elimination.
template <typename Derived>
typename Derived::Scalar det(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  if (input.rows() != input.cols())
    throw Error(Errc::InvalidArgument, "det: matrix is not square");
  Matrix<Scalar> a = input;
  const Eigen::Index n = a.rows();
  if (n == 0) return Scalar(1);
  Scalar sign(1);
  Scalar previous(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return Scalar(0);
      a.row(k).swap(a.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
      }
      a(i, k) = 0;
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Exact inverse; throws SingularMatrix.
RatMatrix inverse(const RatMatrix& a);
inline RatMatrix inverse(const IntMatrix& a) { return inverse(to_rational(a)); }

// ---------------------------------------------------------------------------
// Normal forms

/// Row Hermite normal form: h = t * a, t unimodular. Pivots are positive,
/// entries above a pivot lie in [0, pivot), zero rows come last.
struct HermiteDecomposition {
  IntMatrix h;
  IntMatrix t;
  /// Number of nonzero rows of h.
  Eigen::Index rank = 0;
};

HermiteDecomposition hnf(const IntMatrix& a);

/// u * a * v = d with d diagonal, d_1 | d_2 | ... followed by zeros.
struct SmithDecomposition {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;

  /// The diagonal of d (length min(rows, cols)), zeros included.
  std::vector<Integer> divisors() const;
};

SmithDecomposition snf(const IntMatrix& a);

// ---------------------------------------------------------------------------
// Square-root-free Cholesky

/// g = l * diag(d) * l^T with l unit lower triangular.
struct LdltDecomposition {
  RatMatrix l;
  RatVector d;

  RatMatrix reconstruct() const { return l * d.asDiagonal() * l.transpose(); }
};

/// Exact LDL^T of a symmetric rational matrix. Throws NotPositiveDefinite
/// unless every pivot is strictly positive.
LdltDecomposition rational_cholesky(const RatMatrix& g);

/// True iff rational_cholesky(g) succeeds.
bool is_positive_definite(const RatMatrix& g);

}  // namespace latcor
