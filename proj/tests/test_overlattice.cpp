#include <doctest.h>

#include "latcor/overlattice.hpp"
#include "support.hpp"

using namespace latcor;
using latcor::testing::int_matrix;

TEST_CASE("U(M) for <9> is the unit lattice") {
  const Lattice l = Lattice::make(int_matrix({{9}}));
  const DiscGroup g = disc_group(l);
  const OverLattice u = overlattice(l, g, metabolizers(g).front());
  CHECK(u.basis == RatMatrix::Constant(1, 1, Rational(1, 3)));
  CHECK(u.gram == RatMatrix::Constant(1, 1, Rational(1)));
  CHECK(u.index == 3);
  CHECK(is_unimodular(u));
  CHECK(as_lattice(u).gram() == gram::standard(1));
}

TEST_CASE("non-isotropic subgroups give non-integral overlattices") {
  const Lattice l = Lattice::make(int_matrix({{9}}));
  const DiscGroup g = disc_group(l);
  const OverLattice whole = overlattice(l, g, whole_group(g));
  CHECK_FALSE(is_integral(whole));
  CHECK(whole.index == 9);
  try {
    as_lattice(whole);
    FAIL("expected NotIntegral");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotIntegral);
  }
  CHECK_THROWS_AS(dual_of(l, whole), Error);
}

TEST_CASE("trivial subgroup gives L itself") {
  const Lattice l = Lattice::make(gram::a_root(3));
  const DiscGroup g = disc_group(l);
  const OverLattice u = overlattice(l, g, generate(g, {}));
  CHECK(u.index == 1);
  CHECK(u.gram == to_rational(l.gram()));
  CHECK(dual_of(l, u).index == 4);
}

TEST_CASE("overlattice canonical form ignores the choice of lifts") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const Lattice l = Lattice::make(latcor::testing::random_lattice_gram(rng, 4, 36));
    const DiscGroup g = disc_group(l);
    for (std::int64_t m = 1; Integer(m) <= g.order(); ++m) {
      if (g.order() % m != 0) continue;
      for (const auto& h : subgroups_of_order(g, m)) {
        std::vector<DualVector> lifts;
        for (const auto& x : h.elements) {
          DualVector v = g.lift(x);
          v.coords(0) += latcor::testing::uniform(rng, -2, 2);
          lifts.push_back(v);
        }
        CHECK(span_over(l, lifts) == overlattice(l, g, h));
        CHECK(overlattice(l, g, h).index == static_cast<long>(h.size()));
      }
    }
  }
}

TEST_CASE("integral overlattices satisfy the index identities") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const Lattice l = Lattice::make(latcor::testing::random_lattice_gram(rng, 4, 36));
    const DiscGroup g = disc_group(l);
    for (std::int64_t m = 1; Integer(m) <= g.order(); ++m) {
      if (g.order() % m != 0) continue;
      for (const auto& h : subgroups_of_order(g, m)) {
        const OverLattice u = overlattice(l, g, h);
        CHECK(is_integral(u) == is_isotropic(g, h));
        if (!is_integral(u)) continue;
        const IndexPair idx = index_check(l, u);
        CHECK(idx.over == idx.dual);
        const Integer disc_u = abs(numerator(det(u.gram)));
        CHECK(discriminant(l) == disc_u * u.index * u.index);
        CHECK(is_unimodular(u) == (Integer(m) * m == g.order()));
        if (is_unimodular(u)) CHECK(dual_of(l, u) == u);
      }
    }
  }
}
