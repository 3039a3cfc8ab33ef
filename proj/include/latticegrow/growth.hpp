#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "latticegrow/vertex.hpp"
#include "latticegrow/weights.hpp"

namespace latticegrow {

/// Set of lattice sites backed by a dense grid that doubles its extent when
/// a site outside it is inserted.
class LatticeSet {
 public:
  explicit LatticeSet(int dimension, std::int64_t initial_radius = 8);

  bool contains(std::span<const std::int64_t> v) const;
  /// Returns false if already present.
  bool insert(std::span<const std::int64_t> v);
  std::size_t size() const { return count_; }
  int dimension() const { return dimension_; }

 private:
  std::size_t index(std::span<const std::int64_t> v) const;
  bool inside(std::span<const std::int64_t> v) const;
  void grow(std::int64_t needed);

  int dimension_;
  std::int64_t radius_;
  std::vector<std::uint8_t> cells_;
  std::vector<Vertex> members_;
  std::size_t count_ = 0;
};

enum class GrowthModel { Eden, Idla, FppOrder };

std::string to_string(GrowthModel model);

/// Sites in the order they joined: S_n = {0} u {added[0..n-1]}.
struct ClusterTrace {
  GrowthModel model = GrowthModel::Eden;
  std::uint64_t seed = 0;
  int dimension = 2;
  std::vector<Vertex> added;

  std::size_t length() const { return added.size(); }
  /// S_n as a list, origin first.
  std::vector<Vertex> cluster(std::size_t n) const;
};

/// Eden growth: each step picks a boundary edge of S uniformly and adds its
/// outer endpoint, so a site touching S along k edges has weight k.
ClusterTrace eden_grow(std::uint64_t seed, int dimension, std::size_t steps);

/// The first `steps` sites infected after the origin in FPP with Exp weights,
/// i.e. the Dijkstra settle order.
ClusterTrace fpp_infection_order(const WeightField& field, std::size_t steps);

/// Thrown when an IDLA walk runs past its step cap.
class WalkCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal DLA: each particle walks from 0 until it first stands outside S,
/// and that site joins S.
ClusterTrace idla_grow(std::uint64_t seed, int dimension, std::size_t particles,
                       std::uint64_t max_walk_steps = 1'000'000'000ULL);

struct Roundness {
  double inradius = 0.0;   // largest lattice norm r with every site of norm <= r in S_n
  double outradius = 0.0;  // largest Euclidean norm in S_n
};

Roundness roundness(const ClusterTrace& trace, std::size_t n);

/// CSV columns step,x1..xd.
void write_csv(std::ostream& out, const ClusterTrace& trace);

}  // namespace latticegrow
