#include "latcor/discform.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

namespace latcor {

namespace {

std::int64_t to_int64(const Integer& z, const char* what) {
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
    throw Error(Errc::GroupTooLarge, std::string(what) + " does not fit in 64 bits");
  return z.convert_to<std::int64_t>();
}

std::int64_t mod64(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

DiscGroup DiscGroup::abstract(std::vector<std::int64_t> orders, RatMatrix pairing) {
  const auto k = static_cast<Eigen::Index>(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] <= 1) throw Error(Errc::InvalidArgument, "group orders must exceed 1");
    if (i > 0 && orders[i] % orders[i - 1] != 0)
      throw Error(Errc::InvalidArgument, "group orders must form a divisibility chain");
  }
  if (pairing.rows() != k || pairing.cols() != k)
    throw Error(Errc::InvalidArgument, "pairing must be " + std::to_string(k) + "x" + std::to_string(k));
  if (!is_symmetric(pairing)) throw Error(Errc::InvalidArgument, "pairing is not symmetric");
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      const Rational& p = pairing(i, j);
      if (p < 0 || p >= 1) throw Error(Errc::InvalidArgument, "pairing entries must lie in [0, 1)");
      if (!is_integer(p * Rational(orders[static_cast<std::size_t>(i)])))
        throw Error(Errc::InvalidArgument, "pairing entry " + to_string(p) + " is incompatible with the group orders");
    }

  DiscGroup group;
  group.orders_ = std::move(orders);
  group.pairing_ = std::move(pairing);

  // nondegeneracy: every nonzero x pairs nontrivially with some generator
  const std::size_t size = group.checked_order(kDefaultMaxGroup);
  for (std::size_t idx = 1; idx < size; ++idx) {
    const GroupElement x = group.element_at(idx);
    bool detected = false;
    for (std::size_t j = 0; j < group.rank() && !detected; ++j)
      detected = lambda(group, x, group.basis_element(j)) != 0;
    if (!detected) throw Error(Errc::InvalidArgument, "pairing is degenerate");
  }
  return group;
}

Integer DiscGroup::order() const {
  Integer n = 1;
  for (auto d : orders_) n *= d;
  return n;
}

std::size_t DiscGroup::checked_order(std::size_t cap) const {
  const Integer n = order();
  if (n > cap)
    throw Error(Errc::GroupTooLarge,
                "group of order " + n.str() + " exceeds the enumeration cap " + std::to_string(cap));
  return n.convert_to<std::size_t>();
}

GroupElement DiscGroup::basis_element(std::size_t i) const {
  GroupElement e = zero();
  e.coeffs.at(i) = 1;
  return e;
}

GroupElement DiscGroup::add(const GroupElement& x, const GroupElement& y) const {
  GroupElement out = zero();
  for (std::size_t i = 0; i < orders_.size(); ++i) out.coeffs[i] = mod64(x.coeffs[i] + y.coeffs[i], orders_[i]);
  return out;
}

GroupElement DiscGroup::negate(const GroupElement& x) const {
  GroupElement out = zero();
  for (std::size_t i = 0; i < orders_.size(); ++i) out.coeffs[i] = mod64(-x.coeffs[i], orders_[i]);
  return out;
}

GroupElement DiscGroup::multiple(const GroupElement& x, std::int64_t m) const {
  GroupElement out = zero();
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const Integer c = mod_floor(Integer(x.coeffs[i]) * m, orders_[i]);
    out.coeffs[i] = c.convert_to<std::int64_t>();
  }
  return out;
}

std::int64_t DiscGroup::order_of(const GroupElement& x) const {
  Integer n = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const Integer d = orders_[i];
    n = lcm(n, d / gcd(d, Integer(x.coeffs[i])));
  }
  return n.convert_to<std::int64_t>();
}

GroupElement DiscGroup::reduce(const std::vector<Integer>& coeffs) const {
  if (coeffs.size() != orders_.size()) throw Error(Errc::InvalidArgument, "element has the wrong number of coefficients");
  GroupElement out = zero();
  for (std::size_t i = 0; i < orders_.size(); ++i)
    out.coeffs[i] = mod_floor(coeffs[i], orders_[i]).convert_to<std::int64_t>();
  return out;
}

bool DiscGroup::is_valid(const GroupElement& x) const {
  if (x.coeffs.size() != orders_.size()) return false;
  for (std::size_t i = 0; i < orders_.size(); ++i)
    if (x.coeffs[i] < 0 || x.coeffs[i] >= orders_[i]) return false;
  return true;
}

std::size_t DiscGroup::index_of(const GroupElement& x) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i)
    idx = idx * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(x.coeffs[i]);
  return idx;
}

GroupElement DiscGroup::element_at(std::size_t index) const {
  GroupElement out = zero();
  for (std::size_t i = orders_.size(); i-- > 0;) {
    const auto d = static_cast<std::size_t>(orders_[i]);
    out.coeffs[i] = static_cast<std::int64_t>(index % d);
    index /= d;
  }
  return out;
}

std::vector<GroupElement> DiscGroup::elements(std::size_t cap) const {
  const std::size_t n = checked_order(cap);
  std::vector<GroupElement> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(element_at(i));
  return out;
}

DualVector DiscGroup::lift(const GroupElement& x) const {
  if (!from_lattice_) throw Error(Errc::InvalidArgument, "abstract group has no dual-vector lifts");
  const Eigen::Index n = projector_.cols();
  RatVector c = RatVector::Zero(n);
  for (std::size_t i = 0; i < generators_.size(); ++i) c += Rational(x.coeffs.at(i)) * generators_[i].coords;
  return DualVector{c};
}

DiscGroup disc_group(const Lattice& lattice) {
  const IntMatrix& g = lattice.gram();
  const Eigen::Index n = g.rows();
  const SmithDecomposition smith = snf(g);
  const IntMatrix u_inverse = to_integer(inverse(smith.u));

  DiscGroup group;
  group.from_lattice_ = true;
  std::vector<Eigen::Index> nontrivial;
  for (Eigen::Index i = 0; i < n; ++i)
    if (smith.d(i, i) != 1) nontrivial.push_back(i);

  const auto k = static_cast<Eigen::Index>(nontrivial.size());
  group.projector_ = IntMatrix(k, n);
  for (Eigen::Index r = 0; r < k; ++r) {
    const Eigen::Index i = nontrivial[static_cast<std::size_t>(r)];
    group.orders_.push_back(to_int64(smith.d(i, i), "elementary divisor"));
    group.projector_.row(r) = smith.u.row(i);
    // dual vector pairing with the basis as column i of u^-1, reduced mod L
    DualVector gen = lattice.from_dual_coordinates(u_inverse.col(i));
    for (Eigen::Index j = 0; j < n; ++j) gen.coords(j) = frac(gen.coords(j));
    group.generators_.push_back(std::move(gen));
  }

  group.pairing_ = RatMatrix(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      group.pairing_(i, j) = frac(-lattice.pair(group.generators_[static_cast<std::size_t>(i)],
                                                group.generators_[static_cast<std::size_t>(j)]));
  return group;
}

GroupElement project(const DiscGroup& group, const Lattice& lattice, const DualVector& v) {
  if (!group.from_lattice_) throw Error(Errc::InvalidArgument, "abstract group has no projection");
  const IntVector z = lattice.dual_coordinates(v);
  std::vector<Integer> coeffs;
  for (Eigen::Index r = 0; r < group.projector_.rows(); ++r) coeffs.push_back(group.projector_.row(r).dot(z));
  return group.reduce(coeffs);
}

Rational lambda(const DiscGroup& group, const GroupElement& x, const GroupElement& y) {
  Rational total = 0;
  const RatMatrix& p = group.pairing();
  for (std::size_t i = 0; i < group.rank(); ++i) {
    if (x.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < group.rank(); ++j) {
      if (y.coeffs[j] == 0) continue;
      total += Rational(x.coeffs[i] * y.coeffs[j]) * p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return frac(total);
}

bool Subgroup::contains(const GroupElement& x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

namespace {

// Closure of `base` (a subgroup, as sorted indices) with one more element.
std::vector<std::size_t> extend(const DiscGroup& group, const std::vector<std::size_t>& base,
                                const GroupElement& g) {
  std::set<std::size_t> out(base.begin(), base.end());
  GroupElement step = g;
  while (!out.contains(group.index_of(step))) {
    for (std::size_t s : base) out.insert(group.index_of(group.add(group.element_at(s), step)));
    step = group.add(step, g);
  }
  return {out.begin(), out.end()};
}

// Generators picked greedily in element order.
std::vector<GroupElement> canonical_generators(const DiscGroup& group, const std::vector<std::size_t>& elements) {
  std::vector<GroupElement> gens;
  std::vector<std::size_t> span{group.index_of(group.zero())};
  for (std::size_t idx : elements) {
    if (std::binary_search(span.begin(), span.end(), idx)) continue;
    const GroupElement x = group.element_at(idx);
    gens.push_back(x);
    span = extend(group, span, x);
  }
  return gens;
}

Subgroup make_subgroup(const DiscGroup& group, const std::vector<std::size_t>& indices) {
  Subgroup h;
  for (std::size_t idx : indices) h.elements.push_back(group.element_at(idx));
  h.generators = canonical_generators(group, indices);
  return h;
}

}  // namespace

Subgroup generate(const DiscGroup& group, const std::vector<GroupElement>& generators) {
  std::vector<std::size_t> span{group.index_of(group.zero())};
  for (const auto& g : generators) {
    if (!group.is_valid(g)) throw Error(Errc::InvalidArgument, "generator is not a valid group element");
    span = extend(group, span, g);
  }
  return make_subgroup(group, span);
}

Subgroup whole_group(const DiscGroup& group, std::size_t cap) {
  const std::size_t n = group.checked_order(cap);
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  return make_subgroup(group, all);
}

std::vector<Subgroup> subgroups_of_order(const DiscGroup& group, std::int64_t m, std::size_t cap) {
  const std::size_t size = group.checked_order(cap);
  if (m <= 0 || size % static_cast<std::size_t>(m) != 0)
    throw Error(Errc::InvalidArgument, "subgroup order must divide the group order");
  const auto target = static_cast<std::size_t>(m);

  std::set<std::vector<std::size_t>> seen;
  std::set<std::vector<std::size_t>> found;
  std::deque<std::vector<std::size_t>> queue;
  const std::vector<std::size_t> trivial{group.index_of(group.zero())};
  seen.insert(trivial);
  queue.push_back(trivial);

  while (!queue.empty()) {
    std::vector<std::size_t> current = std::move(queue.front());
    queue.pop_front();
    if (current.size() == target) {
      found.insert(std::move(current));
      continue;
    }
    for (std::size_t idx = 0; idx < size; ++idx) {
      if (std::binary_search(current.begin(), current.end(), idx)) continue;
      std::vector<std::size_t> next = extend(group, current, group.element_at(idx));
      if (target % next.size() != 0) continue;
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }

  std::vector<Subgroup> out;
  for (const auto& indices : found) out.push_back(make_subgroup(group, indices));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_isotropic(const DiscGroup& group, const Subgroup& h) {
  for (std::size_t i = 0; i < h.generators.size(); ++i)
    for (std::size_t j = i; j < h.generators.size(); ++j)
      if (lambda(group, h.generators[i], h.generators[j]) != 0) return false;
  return true;
}

std::optional<Integer> exact_sqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  Integer r = sqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

std::vector<Subgroup> metabolizers(const DiscGroup& group, std::size_t cap) {
  const auto root = exact_sqrt(group.order());
  if (!root) return {};
  std::vector<Subgroup> out;
  for (auto& h : subgroups_of_order(group, root->convert_to<std::int64_t>(), cap))
    if (is_isotropic(group, h)) out.push_back(std::move(h));
  return out;
}

Subgroup annihilator(const DiscGroup& group, const Subgroup& h, std::size_t cap) {
  const std::size_t size = group.checked_order(cap);
  std::vector<std::size_t> out;
  for (std::size_t idx = 0; idx < size; ++idx) {
    const GroupElement x = group.element_at(idx);
    const bool kills = std::all_of(h.generators.begin(), h.generators.end(),
                                   [&](const GroupElement& y) { return lambda(group, x, y) == 0; });
    if (kills) out.push_back(idx);
  }
  return make_subgroup(group, out);
}

}  // namespace latcor
