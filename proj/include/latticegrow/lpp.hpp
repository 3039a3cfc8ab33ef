#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "latticegrow/vertex.hpp"
#include "latticegrow/weights.hpp"

namespace latticegrow {

/// Oriented last-passage times T(0, x) for every 0 <= x <= corner.
///
/// Paths exclude their initial vertex, so T(0, 0) = 0 and the axis values are
/// plain cumulative sums starting at the first step.
class LppTimeMap {
 public:
  const Vertex& corner() const { return corner_; }
  const WeightField& field() const { return field_; }
  int dimension() const { return static_cast<int>(corner_.size()); }

  bool contains(std::span<const std::int64_t> x) const;
  double time(std::span<const std::int64_t> x) const;
  double time(std::int64_t x1, std::int64_t x2) const;
  std::size_t size() const { return table_.size(); }

  /// Raster-order table (last axis fastest).
  std::span<const double> table() const { return table_; }
  std::size_t index(std::span<const std::int64_t> x) const;
  Vertex vertex(std::size_t index) const;

 private:
  friend LppTimeMap lpp_dp(const WeightField&, const Vertex&);
  LppTimeMap(Vertex corner, WeightField field);

  Vertex corner_;
  WeightField field_;
  std::vector<std::size_t> strides_;
  std::vector<double> table_;
};

/// Oriented path from 0: `vertices` includes the initial vertex 0, `time`
/// sums weights of all vertices after it.
struct OrientedPath {
  std::vector<Vertex> vertices;
  double time = 0.0;
  std::size_t steps() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

/// Raster-order dynamic program T(x) = t_x + max over backward neighbours.
LppTimeMap lpp_dp(const WeightField& field, const Vertex& corner);

/// Argmax backtracking; on equal maxima the e1-predecessor (lowest axis) wins.
OrientedPath lpp_geodesic(const LppTimeMap& map, const WeightField& field, const Vertex& target);

enum class ShapeModel { ExponentialRate1, Geometric };

/// Closed-form two-dimensional LPP shape functions.
struct ExactShape {
  ShapeModel model = ShapeModel::ExponentialRate1;
  double p = 0.5;  // Geometric only; support {1, 2, ...}

  static ExactShape exponential() { return {ShapeModel::ExponentialRate1, 0.0}; }
  static ExactShape geometric(double p);
  /// The exact shape for a weight law, if one is known.
  static bool available_for(const DistributionSpec& spec);
  static ExactShape for_spec(const DistributionSpec& spec);
};

/// g(x1, x2): (sqrt x1 + sqrt x2)^2 for Exp(1); (x1 + x2 + 2 sqrt(x1 x2 (1-p))) / p
/// for geometric weights.
double exact_g(const ExactShape& shape, double x1, double x2);

/// mu + 2 sigma sqrt(a): leading behaviour of g(1, a) as a -> 0.
double martin_asymptote(double mu, double sigma, double a);

/// CSV with columns x1,x2,T (two-dimensional maps only).
void write_csv(std::ostream& out, const LppTimeMap& map);

}  // namespace latticegrow
