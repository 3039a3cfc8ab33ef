#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "latticegrow/vertex.hpp"
#include "latticegrow/weights.hpp"

namespace latticegrow {

/// The truncation [-R, R]^d of Z^d. Linear indices follow lexicographic
/// coordinate order, so comparing indices compares vertices.
class LatticeBox {
 public:
  LatticeBox(int dimension, std::int64_t radius);

  int dimension() const { return dimension_; }
  std::int64_t radius() const { return radius_; }
  std::size_t size() const { return size_; }

  bool contains(std::span<const std::int64_t> v) const;
  std::size_t index(std::span<const std::int64_t> v) const;
  Vertex vertex(std::size_t index) const;
  void decode(std::size_t index, std::span<std::int64_t> out) const;
  bool on_face(std::span<const std::int64_t> v) const;
  std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

 private:
  int dimension_;
  std::int64_t radius_;
  std::int64_t side_;
  std::size_t size_;
  std::vector<std::size_t> strides_;
};

/// Stop once every vertex with T <= tau is settled.
struct TimeBudget {
  double tau;
};
/// Stop once the target is settled (and every tie with its time).
struct TargetVertex {
  Vertex target;
};
/// Stop after this many vertices (source included) are settled.
struct SettledCount {
  std::size_t count;
};
using StopRule = std::variant<TimeBudget, TargetVertex, SettledCount>;

/// First-passage times T(source, .) on a truncated box. Immutable once built.
class PassageTimeMap {
 public:
  const Vertex& source() const { return source_; }
  const LatticeBox& box() const { return box_; }
  const WeightField& field() const { return field_; }

  bool settled(const Vertex& v) const;
  /// T(source, v); throws std::out_of_range if v was not settled.
  double time(const Vertex& v) const;
  /// Every box vertex with T <= horizon() is settled.
  double horizon() const { return horizon_; }
  /// The whole box was settled.
  bool frontier_exhausted() const { return frontier_exhausted_; }
  /// A settled vertex lies on a face of the box, so truncation may bias values.
  bool boundary_hit() const { return boundary_hit_; }

  std::size_t settled_count() const { return order_.size(); }
  /// Vertices in the order the solver settled them (source first).
  std::vector<Vertex> settle_order() const;
  /// Canonical predecessor of a settled non-source vertex.
  Vertex predecessor(const Vertex& v) const;

  /// Visits (vertex index, time) for settled vertices in lexicographic order.
  template <typename Fn>
  void for_each_settled(Fn&& fn) const {
    for (std::size_t i = 0; i < dist_.size(); ++i) {
      if (settled_[i]) fn(i, dist_[i]);
    }
  }

 private:
  friend PassageTimeMap fpp_dijkstra(const WeightField&, const Vertex&, const StopRule&,
                                     const LatticeBox&);
  PassageTimeMap(Vertex source, LatticeBox box, WeightField field);

  Vertex source_;
  LatticeBox box_;
  WeightField field_;
  std::vector<double> dist_;
  std::vector<std::uint32_t> pred_;
  std::vector<std::uint8_t> settled_;
  std::vector<std::uint32_t> order_;
  double horizon_ = 0.0;
  bool frontier_exhausted_ = false;
  bool boundary_hit_ = false;
};

/// A path with its passage time. `vertices` runs from start to end inclusive.
struct Geodesic {
  std::vector<Vertex> vertices;
  double time = 0.0;
  /// Rule that picked this path among minimizers.
  const char* tie_break = "lexicographically smallest predecessor";
};

/// Dijkstra from `source` over the edge field restricted to `box`.
PassageTimeMap fpp_dijkstra(const WeightField& field, const Vertex& source, const StopRule& stop,
                            const LatticeBox& box);

/// B(t) = {x settled : T(source, x) <= t}. Refuses t above the settled horizon.
std::vector<Vertex> fpp_ball(const PassageTimeMap& map, double t);

/// Backtracks canonical predecessors. The weight sum, accumulated from the
/// source, equals map.time(target) bit for bit.
Geodesic fpp_geodesic(const WeightField& field, const PassageTimeMap& map, const Vertex& target);

/// Largest Euclidean distance from a path vertex to the segment [x, y].
double wandering_deviation(std::span<const Vertex> path, const Vertex& x, const Vertex& y);
double wandering_deviation(const Geodesic& geo, const Vertex& x, const Vertex& y);

struct GreedyPath {
  std::vector<Vertex> vertices;
  double total = 0.0;
  std::vector<double> step_weights;
};

/// From 0, repeatedly take the lightest of the d forward edges x -> x + e_i.
GreedyPath greedy_forward_path(const WeightField& field, std::int64_t steps);

/// CSV with columns x1..xd,T over settled vertices, lexicographic order.
void write_csv(std::ostream& out, const PassageTimeMap& map);
/// CSV with columns x1..xd, one vertex per row.
void write_ball_csv(std::ostream& out, std::span<const Vertex> ball, int dimension);

}  // namespace latticegrow
