#include "latticegrow/growth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <ostream>

#include "latticegrow/format.hpp"
#include "latticegrow/fpp.hpp"
#include "latticegrow/rng.hpp"

namespace latticegrow {

namespace {

constexpr std::uint64_t kEdenTag = 0x6564656eULL;
constexpr std::uint64_t kIdlaTag = 0x69646c61ULL;

}  // namespace

LatticeSet::LatticeSet(int dimension, std::int64_t initial_radius)
    : dimension_(dimension), radius_(std::max<std::int64_t>(initial_radius, 1)) {
  if (dimension < 1) throw std::invalid_argument("lattice set: dimension must be >= 1");
  grow(radius_);
}

bool LatticeSet::inside(std::span<const std::int64_t> v) const {
  for (auto c : v) {
    if (c < -radius_ || c > radius_) return false;
  }
  return true;
}

std::size_t LatticeSet::index(std::span<const std::int64_t> v) const {
  const auto side = static_cast<std::size_t>(2 * radius_ + 1);
  std::size_t idx = 0;
  for (auto c : v) idx = idx * side + static_cast<std::size_t>(c + radius_);
  return idx;
}

bool LatticeSet::contains(std::span<const std::int64_t> v) const {
  return inside(v) && cells_[index(v)] != 0;
}

void LatticeSet::grow(std::int64_t needed) {
  radius_ = needed;
  const auto side = static_cast<std::size_t>(2 * radius_ + 1);
  std::size_t total = 1;
  for (int i = 0; i < dimension_; ++i) {
    if (total > (std::size_t{1} << 34) / side) throw std::length_error("lattice set: too large");
    total *= side;
  }
  cells_.assign(total, 0);
  for (const auto& m : members_) cells_[index(m)] = 1;
}

bool LatticeSet::insert(std::span<const std::int64_t> v) {
  if (static_cast<int>(v.size()) != dimension_) {
    throw std::invalid_argument("lattice set: dimension mismatch");
  }
  if (!inside(v)) grow(std::max(2 * radius_, linf_norm(v) + 1));
  auto& cell = cells_[index(v)];
  if (cell) return false;
  cell = 1;
  members_.emplace_back(v.begin(), v.end());
  ++count_;
  return true;
}

std::string to_string(GrowthModel model) {
  switch (model) {
    case GrowthModel::Eden: return "eden";
    case GrowthModel::Idla: return "idla";
    case GrowthModel::FppOrder: return "fpp-order";
  }
  return "unknown";
}

std::vector<Vertex> ClusterTrace::cluster(std::size_t n) const {
  if (n > added.size()) throw std::out_of_range("cluster: n exceeds trace length");
  std::vector<Vertex> s;
  s.reserve(n + 1);
  s.push_back(origin(dimension));
  s.insert(s.end(), added.begin(), added.begin() + static_cast<std::ptrdiff_t>(n));
  return s;
}

ClusterTrace eden_grow(std::uint64_t seed, int dimension, std::size_t steps) {
  if (dimension < 1) throw std::invalid_argument("eden_grow: dimension must be >= 1");
  if (steps < 1) throw std::invalid_argument("eden_grow: steps must be >= 1");
  const auto d = static_cast<std::size_t>(dimension);
  ClusterTrace trace{GrowthModel::Eden, seed, dimension, {}};
  trace.added.reserve(steps);
  SplitMix64 rng(hash_words(seed, {kEdenTag, d}));

  LatticeSet cluster(dimension);
  // Outer endpoints of boundary edges, d coordinates each. An entry goes
  // stale once its outer endpoint joins the cluster and is dropped lazily,
  // which keeps the draw uniform over the live edges.
  std::vector<std::int64_t> outer;
  Vertex v = origin(dimension);
  auto add_site = [&](const Vertex& x) {
    cluster.insert(x);
    Vertex y = x;
    for (std::size_t axis = 0; axis < d; ++axis) {
      for (int sign : {-1, +1}) {
        y[axis] += sign;
        if (!cluster.contains(y)) outer.insert(outer.end(), y.begin(), y.end());
        y[axis] -= sign;
      }
    }
  };
  add_site(v);

  while (trace.added.size() < steps) {
    const std::size_t edges = outer.size() / d;
    const std::size_t pick = rng.below(edges);
    std::copy_n(outer.begin() + static_cast<std::ptrdiff_t>(pick * d), d, v.begin());
    // swap-remove the chosen entry; it is either stale or about to be
    std::copy_n(outer.end() - static_cast<std::ptrdiff_t>(d), d,
                outer.begin() + static_cast<std::ptrdiff_t>(pick * d));
    outer.resize(outer.size() - d);
    if (cluster.contains(v)) continue;
    trace.added.push_back(v);
    add_site(v);
  }
  return trace;
}

ClusterTrace fpp_infection_order(const WeightField& field, std::size_t steps) {
  if (field.spec().kind() != DistributionKind::Exponential) {
    throw std::invalid_argument("fpp_infection_order: the Eden coupling needs exponential weights");
  }
  if (field.attachment() != Attachment::Edge) {
    throw std::invalid_argument("fpp_infection_order: field must carry edge weights");
  }
  if (steps < 1) throw std::invalid_argument("fpp_infection_order: steps must be >= 1");
  const auto limit = static_cast<std::int64_t>(steps) + 1;  // S_n lies within l1 distance n
  auto radius = std::min<std::int64_t>(
      limit, 4 * static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(steps)))) + 4);
  while (true) {
    const LatticeBox box(field.dimension(), radius);
    const auto map = fpp_dijkstra(field, origin(field.dimension()), SettledCount{steps + 1}, box);
    if (!map.boundary_hit() || radius == limit) {
      ClusterTrace trace{GrowthModel::FppOrder, field.seed(), field.dimension(), {}};
      auto order = map.settle_order();
      trace.added.assign(std::make_move_iterator(order.begin() + 1),
                         std::make_move_iterator(order.end()));
      return trace;
    }
    radius = std::min(limit, 2 * radius);
  }
}

ClusterTrace idla_grow(std::uint64_t seed, int dimension, std::size_t particles,
                       std::uint64_t max_walk_steps) {
  if (dimension < 1) throw std::invalid_argument("idla_grow: dimension must be >= 1");
  if (particles < 1) throw std::invalid_argument("idla_grow: particles must be >= 1");
  const auto d = static_cast<std::size_t>(dimension);
  ClusterTrace trace{GrowthModel::Idla, seed, dimension, {}};
  trace.added.reserve(particles);
  SplitMix64 rng(hash_words(seed, {kIdlaTag, d}));
  const std::uint64_t moves = 2 * d;
  const bool pow2 = std::has_single_bit(moves);
  const int bits = std::countr_zero(moves);
  const std::uint64_t mask = moves - 1;

  LatticeSet cluster(dimension);
  Vertex x = origin(dimension);
  cluster.insert(x);
  std::uint64_t pool = 0;
  int pool_left = 0;
  for (std::size_t particle = 0; particle < particles; ++particle) {
    std::fill(x.begin(), x.end(), 0);
    std::uint64_t walked = 0;
    while (cluster.contains(x)) {
      if (++walked > max_walk_steps) {
        throw WalkCapExceeded("idla_grow: walk exceeded " + std::to_string(max_walk_steps) +
                              " steps");
      }
      std::uint64_t move;
      if (pow2) {
        if (pool_left < bits) {
          pool = rng();
          pool_left = 64;
        }
        move = pool & mask;
        pool >>= bits;
        pool_left -= bits;
      } else {
        move = rng.below(moves);
      }
      x[move >> 1] += (move & 1) ? 1 : -1;
    }
    cluster.insert(x);
    trace.added.push_back(x);
  }
  return trace;
}

Roundness roundness(const ClusterTrace& trace, std::size_t n) {
  if (n > trace.length()) throw std::out_of_range("roundness: n exceeds trace length");
  const auto sites = trace.cluster(n);
  LatticeSet set(trace.dimension);
  for (const auto& s : sites) set.insert(s);

  // The nearest site outside S is adjacent to S: stepping it toward the
  // origin along its largest coordinate shortens it and lands in S.
  std::int64_t min_out2 = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_in2 = 0;
  Vertex y;
  for (const auto& s : sites) {
    std::int64_t n2 = 0;
    for (auto c : s) n2 += c * c;
    max_in2 = std::max(max_in2, n2);
    y = s;
    for (std::size_t axis = 0; axis < y.size(); ++axis) {
      for (int sign : {-1, +1}) {
        y[axis] += sign;
        if (!set.contains(y)) {
          std::int64_t m2 = 0;
          for (auto c : y) m2 += c * c;
          min_out2 = std::min(min_out2, m2);
        }
        y[axis] -= sign;
      }
    }
  }
  std::int64_t covered2 = 0;
  for (const auto& s : sites) {
    std::int64_t n2 = 0;
    for (auto c : s) n2 += c * c;
    if (n2 < min_out2) covered2 = std::max(covered2, n2);
  }
  return {std::sqrt(static_cast<double>(covered2)), std::sqrt(static_cast<double>(max_in2))};
}

void write_csv(std::ostream& out, const ClusterTrace& trace) {
  std::vector<std::string> header{"step"};
  for (int i = 1; i <= trace.dimension; ++i) header.push_back("x" + std::to_string(i));
  CsvWriter csv(out, header);
  for (std::size_t i = 0; i < trace.added.size(); ++i) {
    csv.cell(i + 1);
    for (auto c : trace.added[i]) csv.cell(static_cast<long long>(c));
    csv.end_row();
  }
}

}  // namespace latticegrow
