#include "latcor/corrterm.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <optional>
#include <thread>

namespace latcor {

namespace {

// Candidates of shift + 2Z ordered by distance to center.
class ZigZag {
 public:
  ZigZag(const Rational& center, const Rational& shift) : center_(center) {
    const Integer k = floor((center - shift) / 2 + Rational(1, 2));
    nearest_ = shift + Rational(2 * k);
    up_ = nearest_ + 2;
    down_ = nearest_ - 2;
  }

  // Next candidate on an open side; nullopt once both sides are closed.
  std::optional<Rational> next() {
    if (last_ == Side::None) {
      last_ = Side::Nearest;
      return nearest_;
    }
    const bool take_up = up_open_ && (!down_open_ || abs(up_ - center_) <= abs(down_ - center_));
    if (take_up) {
      last_ = Side::Up;
      up_ += 2;
      return up_ - 2;
    }
    if (down_open_) {
      last_ = Side::Down;
      down_ -= 2;
      return down_ + 2;
    }
    return std::nullopt;
  }

  // The last candidate was over budget, so is everything farther on its side.
  void close_last() {
    if (last_ == Side::Nearest || last_ == Side::Up) up_open_ = false;
    if (last_ == Side::Nearest || last_ == Side::Down) down_open_ = false;
  }

 private:
  enum class Side { None, Nearest, Up, Down };

  Rational center_;
  Rational nearest_;
  Rational up_;
  Rational down_;
  Side last_ = Side::None;
  bool up_open_ = true;
  bool down_open_ = true;
};

class CosetSearcher {
 public:
  CosetSearcher(const LdltDecomposition& factor, const RatVector& shift)
      : factor_(factor), shift_(shift), n_(shift.size()), point_(RatVector::Zero(shift.size())) {}

  // Nearest-plane rounding from the last coordinate down.
  void seed_greedy() {
    Rational total = 0;
    for (Eigen::Index j = n_; j-- > 0;) {
      const Rational mu = center(j);
      ZigZag candidates(mu, shift_(j));
      point_(j) = *candidates.next();
      const Rational diff = point_(j) - mu;
      total += factor_.d(j) * diff * diff;
    }
    best_ = total;
    best_point_ = point_;
    has_best_ = true;
  }

  // Strict improvement search below the incumbent.
  void improve(Eigen::Index level, const Rational& partial) { visit(level, partial, Mode::Improve); }

  // First point in depth-first order with value exactly `target`.
  bool find_first(const Rational& target) {
    best_ = target;
    found_ = false;
    visit(n_ - 1, Rational(0), Mode::FindFirst);
    return found_;
  }

  // Level-(n-1) candidates admissible under the incumbent, in zigzag order.
  std::vector<Rational> top_candidates() const {
    std::vector<Rational> out;
    const Eigen::Index j = n_ - 1;
    ZigZag candidates(Rational(0), shift_(j));
    while (auto c = candidates.next()) {
      const Rational contribution = factor_.d(j) * (*c) * (*c);
      if (contribution >= best_) {
        candidates.close_last();
        continue;
      }
      out.push_back(*c);
    }
    return out;
  }

  // Explores the subtree with the top coordinate fixed.
  void improve_from_top(const Rational& top) {
    const Eigen::Index j = n_ - 1;
    const Rational contribution = factor_.d(j) * top * top;
    ++nodes_;
    if (contribution >= best_) return;
    point_(j) = top;
    if (j == 0) {
      best_ = contribution;
      best_point_ = point_;
      return;
    }
    visit(j - 1, contribution, Mode::Improve);
  }

  const Rational& best() const { return best_; }
  const RatVector& best_point() const { return best_point_; }
  void offer(const Rational& value, const RatVector& point) {
    if (!has_best_ || value < best_) {
      best_ = value;
      best_point_ = point;
      has_best_ = true;
    }
  }
  std::uint64_t nodes() const { return nodes_; }

 private:
  enum class Mode { Improve, FindFirst };

  Rational center(Eigen::Index j) const {
    Rational mu = 0;
    for (Eigen::Index i = j + 1; i < n_; ++i) mu -= factor_.l(i, j) * point_(i);
    return mu;
  }

  bool admissible(const Rational& total, Mode mode) const {
    return mode == Mode::Improve ? total < best_ : total <= best_;
  }

  void visit(Eigen::Index j, const Rational& partial, Mode mode) {
    const Rational mu = center(j);
    ZigZag candidates(mu, shift_(j));
    while (auto c = candidates.next()) {
      ++nodes_;
      const Rational diff = *c - mu;
      const Rational total = partial + factor_.d(j) * diff * diff;
      if (!admissible(total, mode)) {
        candidates.close_last();
        continue;
      }
      point_(j) = *c;
      if (j == 0) {
        if (mode == Mode::FindFirst) {
          if (total == best_) {
            best_point_ = point_;
            found_ = true;
            return;
          }
        } else {
          best_ = total;
          best_point_ = point_;
        }
        continue;
      }
      visit(j - 1, total, mode);
      if (found_) return;
    }
  }

  const LdltDecomposition& factor_;
  const RatVector& shift_;
  Eigen::Index n_;
  RatVector point_;
  Rational best_;
  RatVector best_point_;
  std::uint64_t nodes_ = 0;
  bool found_ = false;
  bool has_best_ = false;
};

}  // namespace

CosetMinimum minimize_coset(const RatMatrix& form, const RatVector& shift, unsigned threads) {
  const Eigen::Index n = form.rows();
  if (n == 0 || shift.size() != n) throw Error(Errc::InvalidArgument, "minimize_coset: dimension mismatch");
  const LdltDecomposition factor = rational_cholesky(form);

  CosetSearcher main(factor, shift);
  main.seed_greedy();
  std::uint64_t nodes = 0;

  if (threads <= 1) {
    main.improve(n - 1, Rational(0));
    nodes = main.nodes();
  } else {
    const std::vector<Rational> tops = main.top_candidates();
    std::mutex lock;
    std::atomic<std::size_t> cursor{0};
    std::atomic<std::uint64_t> node_total{0};
    auto worker = [&]() {
      CosetSearcher local(factor, shift);
      {
        std::scoped_lock guard(lock);
        local.offer(main.best(), main.best_point());
      }
      for (std::size_t i = cursor++; i < tops.size(); i = cursor++) {
        {
          std::scoped_lock guard(lock);
          local.offer(main.best(), main.best_point());
        }
        local.improve_from_top(tops[i]);
        std::scoped_lock guard(lock);
        main.offer(local.best(), local.best_point());
      }
      node_total += local.nodes();
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    nodes = node_total + main.nodes();
  }

  const Rational minimum = main.best();
  CosetSearcher canonical(factor, shift);
  if (!canonical.find_first(minimum))
    throw Error(Errc::InvalidArgument, "minimize_coset: minimizer lost on the canonical pass");
  return CosetMinimum{minimum, canonical.best_point(), nodes + canonical.nodes()};
}

MinimizationResult min_char_square(const Lattice& u, unsigned threads) {
  if (!is_unimodular(u)) throw Error(Errc::InvalidArgument, "min_char_square needs a unimodular lattice");
  // unimodular: Char(U) = chi_0 + 2U with chi_0 integral
  const CharCoset coset = characteristic_base(u);
  const CosetMinimum found = minimize_coset(to_rational(u.gram()), coset.base.coords, threads);
  return MinimizationResult{numerator(found.value), DualVector{found.point}, found.nodes};
}

Rational d_lattice(const Lattice& u, unsigned threads) {
  const MinimizationResult m = min_char_square(u, threads);
  return Rational(m.minimum - u.rank()) / 4;
}

DSet d_set(const Lattice& lattice, const CorrOptions& options) {
  const DiscGroup group = disc_group(lattice);
  DSet out;
  for (auto& m : metabolizers(group, options.max_group)) {
    OverLattice over = overlattice(lattice, group, m);
    const Lattice u = as_lattice(over);
    const MinimizationResult found = min_char_square(u, options.threads);
    const Rational d = Rational(found.minimum - u.rank()) / 4;
    DualVector witness{over.basis.transpose() * found.witness.coords};
    if (d == 0) out.contains_zero = true;
    out.entries.push_back(DSetEntry{std::move(m), std::move(over), d, std::move(witness)});
  }
  return out;
}

bool embeds_in_standard(const Lattice& lattice, const CorrOptions& options) {
  return d_set(lattice, options).contains_zero;
}

ConstrainedMinimum constrained_min(const Lattice& lattice, const DiscGroup& group, const Subgroup& h,
                                   unsigned threads) {
  const Eigen::Index n = lattice.rank();
  if (n > 24) throw Error(Errc::SearchTooLarge, "constrained_min enumerates 2^n residue classes");
  const OverLattice over = overlattice(lattice, group, h);
  // rows of over.basis as basis pairings (integral: pi^-1(H) lies in L*)
  const IntMatrix pairings = to_integer(RatMatrix(over.basis * to_rational(lattice.gram())));

  std::optional<ConstrainedMinimum> best;
  const std::uint64_t classes = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < classes; ++mask) {
    RatVector eps(n);
    IntVector z = IntVector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const bool bit = (mask >> i) & 1U;
      eps(i) = bit ? 1 : 0;
      if (bit) z += pairings.row(i).transpose();
    }
    bool characteristic = true;
    for (Eigen::Index i = 0; i < n && characteristic; ++i)
      characteristic = mod_floor(z(i) - lattice.gram()(i, i), 2) == 0;
    if (!characteristic) continue;

    const CosetMinimum found = minimize_coset(over.gram, eps, threads);
    const Rational value = (found.value - n) / 4;
    if (!best || value < best->value)
      best = ConstrainedMinimum{value, DualVector{over.basis.transpose() * found.point}};
  }
  if (!best) throw Error(Errc::EmptyConstraintSet, "no characteristic covector projects into the subgroup");
  return *best;
}

}  // namespace latcor
