#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "latticegrow/vertex.hpp"

namespace latticegrow {

enum class DistributionKind { Exponential, Geometric, Uniform, TwoPoint, Constant };

/// Law of a single weight. All supported laws live on [0, inf).
///
/// | kind        | parameters        | support      | token          |
/// |-------------|-------------------|--------------|----------------|
/// | Exponential | rate > 0          | [0, inf)     | `exp:1.0`      |
/// | Geometric   | p in (0,1)        | {1, 2, ...}  | `geom:0.5`     |
/// | Uniform     | 0 <= a < b        | [a, b)       | `unif:0.5:1.5` |
/// | TwoPoint    | P(1) = p in (0,1) | {1, 2}       | `twopoint:0.8` |
/// | Constant    | c >= 0            | {c}          | `const:1.0`    |
class DistributionSpec {
 public:
  static DistributionSpec exponential(double rate);
  static DistributionSpec geometric(double p);
  static DistributionSpec uniform(double a, double b);
  static DistributionSpec two_point(double p);
  static DistributionSpec constant(double c);

  /// Parses a text token such as `unif:0.5:1.5`. Throws std::invalid_argument.
  static DistributionSpec parse(const std::string& token);
  std::string token() const;

  DistributionKind kind() const { return kind_; }
  double param1() const { return a_; }
  double param2() const { return b_; }

  double mean() const;
  double variance() const;
  /// Infimum of the support.
  double min_value() const;
  bool has_atoms() const;

  /// Inverse CDF. Nondecreasing in u; u must lie in [0,1).
  double quantile(double u) const;

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;

 private:
  DistributionSpec(DistributionKind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

  DistributionKind kind_;
  double a_;
  double b_;
};

enum class Attachment { Edge, Vertex };

/// An i.i.d. environment on all of Z^d. Weights are computed on demand by
/// hashing (seed, element) so the field holds no per-element state and any
/// visiting order replays identically.
///
/// An edge {x, x + e_i} is identified by its lexicographically smaller
/// endpoint x and the axis i, so both orientations read the same weight.
class WeightField {
 public:
  WeightField(DistributionSpec spec, std::uint64_t seed, Attachment attachment, int dimension);

  const DistributionSpec& spec() const { return spec_; }
  std::uint64_t seed() const { return seed_; }
  Attachment attachment() const { return attachment_; }
  int dimension() const { return dimension_; }

  /// Weight of a vertex (vertex fields). Validates attachment and dimension.
  double weight_at(const Vertex& v) const;
  /// Weight of the edge {a, b} (edge fields). Validates adjacency.
  double weight_at(const Vertex& a, const Vertex& b) const;

  // Unchecked hot-path accessors used by the solvers.
  double vertex_weight(std::span<const std::int64_t> v) const;
  double edge_weight(std::span<const std::int64_t> lower, int axis) const;

  /// The same environment seen through a coordinate permutation:
  /// permuted(p).weight_at(x) == weight_at(y) with y[p[i]] = x[i].
  WeightField permuted(std::vector<int> permutation) const;

  /// Same law, seed, attachment, dimension and coordinate view.
  bool same_environment(const WeightField& other) const;

 private:
  double draw(std::uint64_t bits) const;
  std::uint64_t element_hash(std::span<const std::int64_t> coords, std::uint64_t axis_tag) const;

  DistributionSpec spec_;
  std::uint64_t seed_;
  Attachment attachment_;
  int dimension_;
  std::vector<int> permutation_;  // empty = identity
};

WeightField make_field(const DistributionSpec& spec, std::uint64_t seed, Attachment attachment,
                       int dimension);

}  // namespace latticegrow
