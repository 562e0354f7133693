#include "latcor/oracle.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

namespace latcor::oracle {

namespace {

long to_long(const Integer& z) {
  if (abs(z) > Integer(1) << 40) throw Error(Errc::SearchTooLarge, "entry too large for brute force");
  return z.convert_to<long>();
}

std::vector<std::vector<long>> to_rows(const IntMatrix& m) {
  std::vector<std::vector<long>> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(to_long(m(i, j)));
  return out;
}

long dot(const std::vector<long>& a, const std::vector<long>& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

long quad(const std::vector<std::vector<long>>& g, const std::vector<long>& y) {
  long s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    long row = 0;
    for (std::size_t j = 0; j < y.size(); ++j) row += g[i][j] * y[j];
    s += y[i] * row;
  }
  return s;
}

// All v in Z^n with v.v == norm.
std::vector<std::vector<long>> vectors_of_norm(Eigen::Index n, long norm) {
  std::vector<std::vector<long>> out;
  std::vector<long> v(static_cast<std::size_t>(n), 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long remaining) {
    if (i == v.size()) {
      if (remaining == 0) out.push_back(v);
      return;
    }
    for (long x = 0; x * x <= remaining; ++x) {
      for (long s : {1L, -1L}) {
        if (x == 0 && s == -1) continue;
        v[i] = s * x;
        rec(i + 1, remaining - x * x);
      }
    }
    v[i] = 0;
  };
  rec(0, norm);
  return out;
}

// Coordinates bounded by |y_i| <= sqrt(bound * (G^-1)_ii).
std::vector<long> box_radii(const IntMatrix& gram, const Integer& bound) {
  const RatMatrix inv = inverse(gram);
  std::vector<long> radii;
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    const Integer cap = floor(Rational(bound) * inv(i, i));
    radii.push_back(to_long(sqrt(cap)));
  }
  return radii;
}

// Visits every y with |y_i| <= radii[i] and y_i = parity[i] mod 2 (parity
// -1 means any), passing y and y^T g y. The form is updated incrementally
// along the odometer walk, one column per changed coordinate.
template <typename Visit>
void for_each_box_point(const std::vector<std::vector<long>>& g, const std::vector<long>& radii,
                        const std::vector<long>& parity, std::uint64_t max_points, Visit&& visit) {
  const std::size_t n = radii.size();
  std::vector<std::vector<long>> values(n);
  long double count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (long x = -radii[i]; x <= radii[i]; ++x)
      if (parity[i] < 0 || ((x - parity[i]) % 2 + 2) % 2 == 0) values[i].push_back(x);
    count *= static_cast<long double>(values[i].size());
    if (values[i].empty()) return;
  }
  if (count > static_cast<long double>(max_points))
    throw Error(Errc::SearchTooLarge, "search box holds too many points");

  std::vector<std::size_t> digit(n, 0);
  std::vector<long> y(n), gy(n, 0);
  long q = 0;
  auto move = [&](std::size_t i, long to) {
    const long delta = to - y[i];
    q += delta * (2 * gy[i] + delta * g[i][i]);
    for (std::size_t k = 0; k < n; ++k) gy[k] += delta * g[k][i];
    y[i] = to;
  };
  for (std::size_t i = 0; i < n; ++i) move(i, values[i][0]);
  while (true) {
    visit(y, q);
    std::size_t i = 0;
    while (i < n) {
      if (++digit[i] < values[i].size()) {
        move(i, values[i][digit[i]]);
        break;
      }
      digit[i] = 0;
      move(i, values[i][0]);
      ++i;
    }
    if (i == n) return;
  }
}

}  // namespace

EmbedResult brute_embed(const Lattice& lattice, const EmbedCaps& caps) {
  const Eigen::Index n = lattice.rank();
  if (n > caps.max_rank) throw Error(Errc::SearchTooLarge, "brute_embed: rank exceeds the oracle cap");
  const auto g = to_rows(lattice.gram());
  for (Eigen::Index i = 0; i < n; ++i)
    if (g[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] > caps.max_diagonal)
      throw Error(Errc::SearchTooLarge, "brute_embed: diagonal entry exceeds the oracle cap");

  std::vector<std::vector<std::vector<long>>> candidates;
  for (Eigen::Index i = 0; i < n; ++i)
    candidates.push_back(vectors_of_norm(n, g[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]));

  // v_1 up to signed permutations: nonnegative, non-increasing coordinates
  std::erase_if(candidates[0], [](const std::vector<long>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 0) return true;
      if (i > 0 && v[i] > v[i - 1]) return true;
    }
    return false;
  });

  EmbedResult result;
  std::vector<std::vector<long>> chosen;
  std::uint64_t nodes = 0;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == static_cast<std::size_t>(n)) return true;
    for (const auto& v : candidates[i]) {
      if (++nodes > caps.max_nodes) throw Error(Errc::SearchTooLarge, "brute_embed: node cap reached");
      bool fits = true;
      for (std::size_t j = 0; j < i && fits; ++j) fits = dot(v, chosen[j]) == g[i][j];
      if (!fits) continue;
      chosen.push_back(v);
      if (rec(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  result.embeds = rec(0);
  if (result.embeds) result.images = chosen;
  return result;
}

std::vector<std::vector<long>> short_vectors(const IntMatrix& gram, const Integer& bound, std::uint64_t max_points) {
  const auto g = to_rows(gram);
  const long limit = to_long(bound);
  std::vector<std::vector<long>> out;
  const std::vector<long> radii = box_radii(gram, bound);
  for_each_box_point(g, radii, std::vector<long>(radii.size(), -1), max_points,
                     [&](const std::vector<long>& y, long q) {
                       if (q <= limit) out.push_back(y);
                     });
  return out;
}

Integer brute_char_min(const Lattice& u, const Integer& bound, std::uint64_t max_points) {
  if (!is_unimodular(u)) throw Error(Errc::InvalidArgument, "brute_char_min needs a unimodular lattice");
  const auto g = to_rows(u.gram());
  const Eigen::Index n = u.rank();
  // chi_0 = G^-1 (diag mod 2) is integral for unimodular G
  IntVector parity_target(n);
  for (Eigen::Index i = 0; i < n; ++i) parity_target(i) = mod_floor(u.gram()(i, i), 2);
  const IntVector base = to_integer(RatVector(inverse(u.gram()) * to_rational(parity_target)));
  std::vector<long> parity;
  for (Eigen::Index i = 0; i < n; ++i) parity.push_back(to_long(mod_floor(base(i), 2)));

  const long limit = to_long(bound);
  std::optional<long> best;
  // the parity class of chi_0 mod 2U is exactly the characteristic coset
  for_each_box_point(g, box_radii(u.gram(), bound), parity, max_points, [&](const std::vector<long>&, long q) {
    if (q <= limit && (!best || q < *best)) best = q;
  });
  if (!best) throw Error(Errc::InvalidArgument, "brute_char_min: bound is below the minimum");
  return *best;
}

std::vector<Subgroup> brute_subgroups(const DiscGroup& group) {
  if (group.order() > 512) throw Error(Errc::SearchTooLarge, "brute_subgroups: group order exceeds 512");
  const std::size_t size = group.checked_order(512);
  const std::size_t k = group.rank();
  long double tuples = 1;
  for (std::size_t i = 0; i < k; ++i) tuples *= static_cast<long double>(size);
  if (tuples > 2e7L) throw Error(Errc::SearchTooLarge, "brute_subgroups: too many generator tuples");

  std::set<std::vector<std::size_t>> found;
  std::vector<std::size_t> tuple(k, 0);
  while (true) {
    std::set<std::size_t> closure{group.index_of(group.zero())};
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::size_t> current(closure.begin(), closure.end());
      for (std::size_t a : current)
        for (std::size_t gi : tuple) {
          const std::size_t s = group.index_of(group.add(group.element_at(a), group.element_at(gi)));
          if (closure.insert(s).second) grew = true;
        }
    }
    found.insert(std::vector<std::size_t>(closure.begin(), closure.end()));

    std::size_t i = 0;
    while (i < k) {
      if (++tuple[i] < size) break;
      tuple[i] = 0;
      ++i;
    }
    if (i == k) break;
  }

  std::vector<Subgroup> out;
  for (const auto& indices : found) {
    Subgroup h;
    for (std::size_t idx : indices) {
      h.elements.push_back(group.element_at(idx));
      if (idx != 0) h.generators.push_back(group.element_at(idx));
    }
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_standard(const Lattice& u, std::uint64_t max_points) {
  const Eigen::Index n = u.rank();
  if (n > 12) throw Error(Errc::SearchTooLarge, "is_standard: rank exceeds 12");
  const auto g = to_rows(u.gram());
  std::vector<std::vector<long>> units;
  for (auto& v : short_vectors(u.gram(), 1, max_points))
    if (quad(g, v) == 1) units.push_back(std::move(v));
  if (static_cast<Eigen::Index>(units.size()) != 2 * n) return false;

  // one of each +- pair: first nonzero coordinate positive
  IntMatrix basis(n, n);
  Eigen::Index row = 0;
  for (const auto& v : units) {
    const auto first = std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
    if (*first < 0) continue;
    for (Eigen::Index j = 0; j < n; ++j) basis(row, j) = v[static_cast<std::size_t>(j)];
    ++row;
  }
  return row == n && abs(det(basis)) == 1;
}

}  // namespace latcor::oracle
