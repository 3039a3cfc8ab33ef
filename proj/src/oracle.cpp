#include "latticegrow/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <vector>

namespace latticegrow {

namespace {

// DFS over self-avoiding paths with two prunings:
//  * bound: partial + w_min * l1(remaining) >= best cannot improve;
//  * loop-erasure domination: a prefix reaching v no lighter than an earlier
//    prefix to v is dominated, since swapping the prefix and erasing loops
//    yields a path at least as light.
class FppSearch {
 public:
  FppSearch(const WeightField& field, const LatticeBox& box, const Vertex& target,
            const EnumerationBudget& budget)
      : field_(field),
        box_(box),
        target_(target),
        budget_(budget),
        on_path_(box.size(), 0),
        best_prefix_(box.size(), std::numeric_limits<double>::infinity()) {}

  double run(const Vertex& source) {
    w_min_ = min_box_weight();
    best_ = staircase_weight(source);
    Vertex x = source;
    on_path_[box_.index(x)] = 1;
    visit(x, 0.0);
    return best_;
  }

 private:
  double min_box_weight() const {
    double w_min = std::numeric_limits<double>::infinity();
    Vertex x(static_cast<std::size_t>(box_.dimension()));
    for (std::size_t i = 0; i < box_.size(); ++i) {
      box_.decode(i, x);
      for (int axis = 0; axis < box_.dimension(); ++axis) {
        if (x[static_cast<std::size_t>(axis)] == box_.radius()) continue;
        const double w = field_.edge_weight(x, axis);
        if (!(w > 0.0)) throw std::invalid_argument("brute_force_fpp: weights must be positive");
        w_min = std::min(w_min, w);
      }
    }
    return w_min;
  }

  // Weight of the coordinate-by-coordinate path: an upper bound to start from.
  double staircase_weight(Vertex x) const {
    double total = 0.0;
    for (std::size_t axis = 0; axis < x.size(); ++axis) {
      while (x[axis] != target_[axis]) {
        Vertex y = x;
        y[axis] += target_[axis] > x[axis] ? 1 : -1;
        total += field_.weight_at(x, y);
        x = std::move(y);
      }
    }
    return total;
  }

  void visit(Vertex& x, double partial) {
    if (++expansions_ > budget_.max_paths) {
      throw BudgetExceeded("brute_force_fpp: expansion budget exceeded");
    }
    if (x == target_) {
      best_ = std::min(best_, partial);
      return;
    }
    const std::size_t here = box_.index(x);
    if (partial >= best_prefix_[here]) return;
    best_prefix_[here] = partial;

    for (int axis = 0; axis < box_.dimension(); ++axis) {
      const auto ax = static_cast<std::size_t>(axis);
      for (int sign : {+1, -1}) {
        const std::int64_t next = x[ax] + sign;
        if (next < -box_.radius() || next > box_.radius()) continue;
        const std::int64_t old = x[ax];
        double w;
        if (sign > 0) {
          w = field_.edge_weight(x, axis);
          x[ax] = next;
        } else {
          x[ax] = next;
          w = field_.edge_weight(x, axis);
        }
        const std::size_t there = box_.index(x);
        if (!on_path_[there]) {
          const double extended = partial + w;
          const double bound =
              extended + w_min_ * static_cast<double>(l1_distance(x)) * (1.0 - 1e-12);
          if (bound < best_ || x == target_) {
            on_path_[there] = 1;
            visit(x, extended);
            on_path_[there] = 0;
          }
        }
        x[ax] = old;
      }
    }
  }

  std::int64_t l1_distance(const Vertex& x) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - target_[i]);
    return s;
  }

  const WeightField& field_;
  const LatticeBox& box_;
  const Vertex& target_;
  EnumerationBudget budget_;
  std::vector<std::uint8_t> on_path_;
  std::vector<double> best_prefix_;
  double best_ = 0.0;
  double w_min_ = 0.0;
  std::uint64_t expansions_ = 0;
};

}  // namespace

double brute_force_fpp(const WeightField& field, const LatticeBox& box, const Vertex& source,
                       const Vertex& target, const EnumerationBudget& budget) {
  if (field.attachment() != Attachment::Edge) {
    throw std::invalid_argument("brute_force_fpp: field must carry edge weights");
  }
  if (field.dimension() != box.dimension()) {
    throw std::invalid_argument("brute_force_fpp: field and box dimensions differ");
  }
  if (!box.contains(source) || !box.contains(target)) {
    throw std::invalid_argument("brute_force_fpp: endpoints must lie in the box");
  }
  if (box.size() > budget.max_box_vertices) {
    throw BudgetExceeded("brute_force_fpp: box has more vertices than the budget allows");
  }
  if (source == target) return 0.0;
  FppSearch search(field, box, target, budget);
  return search.run(source);
}

std::uint64_t oriented_path_count(const Vertex& target) {
  if (target.size() != 2) throw std::invalid_argument("oriented_path_count: d = 2 only");
  if (target[0] < 0 || target[1] < 0) {
    throw std::invalid_argument("oriented_path_count: negative coordinate");
  }
  const auto n = static_cast<std::uint64_t>(target[0] + target[1]);
  const auto k = static_cast<std::uint64_t>(std::min(target[0], target[1]));
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // c * (n - k + i) is divisible by i at every step
    const unsigned __int128 next = static_cast<unsigned __int128>(c) * (n - k + i) / i;
    if (next > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("oriented_path_count: overflow");
    }
    c = static_cast<std::uint64_t>(next);
  }
  return c;
}

LppEnumeration brute_force_lpp(const WeightField& field, const Vertex& target,
                               const EnumerationBudget& budget) {
  if (field.attachment() != Attachment::Vertex) {
    throw std::invalid_argument("brute_force_lpp: field must carry vertex weights");
  }
  if (field.dimension() != 2 || target.size() != 2) {
    throw std::invalid_argument("brute_force_lpp: d = 2 only");
  }
  if (oriented_path_count(target) > budget.max_paths) {
    throw BudgetExceeded("brute_force_lpp: path count exceeds the budget");
  }
  LppEnumeration out;
  out.time = -std::numeric_limits<double>::infinity();
  const std::int64_t a = target[0];
  const std::int64_t b = target[1];
  const std::int64_t steps = a + b;
  // Each path is a word of `steps` moves with exactly `a` moves along e1,
  // enumerated as a combination in lexicographic order.
  std::vector<std::int64_t> e1_positions(static_cast<std::size_t>(a));
  for (std::int64_t i = 0; i < a; ++i) e1_positions[static_cast<std::size_t>(i)] = i;
  std::vector<std::uint8_t> is_e1(static_cast<std::size_t>(steps));
  while (true) {
    std::fill(is_e1.begin(), is_e1.end(), 0);
    for (auto p : e1_positions) is_e1[static_cast<std::size_t>(p)] = 1;
    Vertex x{0, 0};
    double total = 0.0;
    for (std::int64_t s = 0; s < steps; ++s) {
      x[is_e1[static_cast<std::size_t>(s)] ? 0 : 1] += 1;
      total += field.weight_at(x);
    }
    out.time = std::max(out.time, total);
    ++out.paths;

    std::int64_t i = a - 1;
    while (i >= 0 && e1_positions[static_cast<std::size_t>(i)] == steps - a + i) --i;
    if (i < 0) break;
    ++e1_positions[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < a; ++j) {
      e1_positions[static_cast<std::size_t>(j)] = e1_positions[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  if (steps == 0) out.time = 0.0;
  return out;
}

}  // namespace latticegrow
