#include <doctest.h>

#include <cmath>

#include "latcor/corrterm.hpp"
#include "latcor/oracle.hpp"
#include "support.hpp"

using namespace latcor;
using latcor::testing::int_matrix;
using latcor::testing::uniform;

namespace {

// Plain box enumeration of min y^T F y over y in shift + 2 Z^n.
Rational box_minimum(const RatMatrix& form, const RatVector& shift) {
  const Eigen::Index n = form.rows();
  const Rational bound = shift.dot(form * shift);
  const RatMatrix inv = inverse(form);
  std::vector<long> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = std::sqrt((bound * inv(i, i)).convert_to<double>()) + 1;
    const long s = shift(i).convert_to<long>();
    lo[static_cast<std::size_t>(i)] = s - 2 * static_cast<long>(r / 2 + 1);
    hi[static_cast<std::size_t>(i)] = s + 2 * static_cast<long>(r / 2 + 1);
  }
  Rational best = bound;
  y = lo;
  for (;;) {
    RatVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = y[static_cast<std::size_t>(i)];
    const Rational value = v.dot(form * v);
    if (value < best) best = value;
    std::size_t k = 0;
    while (k < y.size() && (y[k] += 2) > hi[k]) y[k] = lo[k], ++k;
    if (k == y.size()) break;
  }
  return best;
}

RatVector parity_vector(std::mt19937& rng, Eigen::Index n) {
  RatVector s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = uniform(rng, 0, 1);
  return s;
}

}  // namespace

TEST_CASE("coset minimization matches box enumeration") {
  std::mt19937 rng(51);
  for (int trial = 0; trial < 150; ++trial) {
    const IntMatrix g = latcor::testing::random_pd_gram(rng, uniform(rng, 1, 4), 200);
    const RatVector shift = parity_vector(rng, g.rows());
    const CosetMinimum m = minimize_coset(to_rational(g), shift);
    CHECK(m.value == box_minimum(to_rational(g), shift));
    CHECK(m.point.dot(to_rational(g) * m.point) == m.value);
    for (Eigen::Index i = 0; i < g.rows(); ++i) CHECK(is_integer((m.point(i) - shift(i)) / 2));
  }
}

TEST_CASE("coset minimization is independent of the thread count") {
  std::mt19937 rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    const IntMatrix g = latcor::testing::random_pd_gram(rng, uniform(rng, 3, 6), 5000);
    const RatVector shift = parity_vector(rng, g.rows());
    const CosetMinimum one = minimize_coset(to_rational(g), shift, 1);
    for (unsigned threads : {2u, 4u}) {
      const CosetMinimum many = minimize_coset(to_rational(g), shift, threads);
      CHECK(many.value == one.value);
      CHECK(many.point == one.point);
    }
  }
}

TEST_CASE("correction terms of named unimodular lattices") {
  for (Eigen::Index n = 1; n <= 9; ++n) CHECK(d_lattice(Lattice::make(gram::standard(n))) == 0);
  CHECK(d_lattice(Lattice::make(gram::e8())) == -2);
  CHECK(d_lattice(Lattice::make(gram::direct_sum(gram::standard(1), gram::e8()))) == -2);
  const MinimizationResult e8 = min_char_square(Lattice::make(gram::e8()), 4);
  CHECK(e8.minimum == 0);
  CHECK(is_characteristic(Lattice::make(gram::e8()), e8.witness));
  const MinimizationResult z3 = min_char_square(Lattice::make(gram::standard(3)));
  CHECK(z3.minimum == 3);
  try {
    min_char_square(Lattice::make(int_matrix({{9}})));
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidArgument);
  }
}

TEST_CASE("D-set of the two fillings of the trefoil surgery") {
  const DSet trace = d_set(Lattice::make(int_matrix({{9}})));
  REQUIRE(trace.entries.size() == 1);
  CHECK(trace.entries[0].d == 0);
  CHECK(trace.contains_zero);
  CHECK(trace.entries[0].witness.coords.cwiseAbs() == RatVector::Constant(1, Rational(1, 3)));

  const DSet neg = d_set(Lattice::make(latcor::testing::negative_nine()));
  REQUIRE(neg.entries.size() == 1);
  CHECK(neg.entries[0].d == -2);
  CHECK_FALSE(neg.contains_zero);
  CHECK_FALSE(embeds_in_standard(Lattice::make(latcor::testing::negative_nine())));
}

TEST_CASE("lattices without metabolizers never embed") {
  CHECK(d_set(Lattice::make(gram::a_root(2))).entries.empty());
  CHECK_FALSE(embeds_in_standard(Lattice::make(int_matrix({{2}}))));
  CHECK(embeds_in_standard(Lattice::make(int_matrix({{4}}))));
  CHECK(embeds_in_standard(Lattice::make(gram::diagonal({1, 1, 4}))));
  // D4 is the even sublattice of Z^4
  CHECK(embeds_in_standard(Lattice::make(gram::d_root(4))));
}

TEST_CASE("constrained minimum") {
  const Lattice nine = Lattice::make(int_matrix({{9}}));
  const DiscGroup g = disc_group(nine);
  const Subgroup m = metabolizers(g).front();
  const ConstrainedMinimum c = constrained_min(nine, g, m);
  CHECK(c.value == 0);
  CHECK(is_characteristic(nine, c.witness));
  CHECK(m.contains(project(g, nine, c.witness)));
  CHECK(nine.square(c.witness) == 1);

  // over the whole group the minimum is the plain min over Char(L)
  const ConstrainedMinimum all = constrained_min(nine, g, whole_group(g));
  CHECK(all.value == (Rational(1, 9) - 1) / 4);
}

TEST_CASE("d_U(M) bounds the constrained minimum from above") {
  std::mt19937 rng(53);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 40; ++trial) {
    const Lattice l = Lattice::make(latcor::testing::random_sublattice_gram(rng, uniform(rng, 1, 4), 36));
    const DiscGroup g = disc_group(l);
    for (const auto& entry : d_set(l).entries) {
      const ConstrainedMinimum c = constrained_min(l, g, entry.metabolizer);
      CHECK(entry.d >= c.value);
      CHECK(entry.d <= 0);
      ++checked;
    }
  }
  CHECK(checked >= 40);
}

TEST_CASE("witnesses are characteristic and realize the minimum") {
  std::mt19937 rng(54);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const Lattice l = Lattice::make(latcor::testing::random_lattice_gram(rng, 4, 36));
    const DiscGroup g = disc_group(l);
    for (const auto& entry : d_set(l).entries) {
      const Lattice u = as_lattice(entry.overlattice);
      const MinimizationResult m = min_char_square(u);
      CHECK(is_characteristic(u, m.witness));
      CHECK(u.square(m.witness) == Rational(m.minimum));
      // the L-coordinate witness has the same square and lies over M
      CHECK(l.square(entry.witness) == Rational(m.minimum));
      CHECK(entry.metabolizer.contains(project(g, l, entry.witness)));

      const ConstrainedMinimum c = constrained_min(l, g, entry.metabolizer);
      CHECK(is_characteristic(l, c.witness));
      CHECK(entry.metabolizer.contains(project(g, l, c.witness)));
      CHECK((l.square(c.witness) - l.rank()) / 4 == c.value);
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("an orthogonal unit summand leaves d unchanged") {
  std::mt19937 rng(55);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const Lattice l = Lattice::make(latcor::testing::random_lattice_gram(rng, 4, 36));
    for (const auto& entry : d_set(l).entries) {
      const IntMatrix u = to_integer(entry.overlattice.gram);
      CHECK(d_lattice(Lattice::make(gram::direct_sum(gram::standard(1), u))) == entry.d);
      ++checked;
    }
  }
  CHECK(checked > 50);
  CHECK(d_lattice(Lattice::make(gram::direct_sum(gram::standard(3), gram::e8()))) == -2);
}
