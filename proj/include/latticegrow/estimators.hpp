#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "latticegrow/vertex.hpp"
#include "latticegrow/weights.hpp"

namespace latticegrow {

enum class PassageModel { Fpp, Lpp };

std::string to_string(PassageModel model);

/// Which percolation model, which weight law, which dimension. FPP puts the
/// weights on edges, LPP on vertices.
struct ModelSpec {
  PassageModel model = PassageModel::Lpp;
  DistributionSpec dist = DistributionSpec::exponential(1.0);
  int dimension = 2;

  Attachment attachment() const {
    return model == PassageModel::Fpp ? Attachment::Edge : Attachment::Vertex;
  }
  WeightField field(std::uint64_t seed) const;
};

/// Per-trial and per-point worker options shared by all estimators.
struct RunOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  int workers = 1;
};

enum class Statistic { RadialMean, Variance, Wandering, ShapeGap };

std::string to_string(Statistic statistic);

struct SeriesPoint {
  std::int64_t n = 0;
  double value = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::size_t truncated_trials = 0;  // trials whose solver touched the box face
  bool anomaly = false;              // shape gap CI reaching below zero
};

/// A statistic of T(0, floor(n x)) over an n-grid. With RadialMean the values
/// are the means of T / n, the subadditive (FPP) or superadditive (LPP)
/// sequence a_n / n.
struct Series {
  Statistic statistic = Statistic::RadialMean;
  ModelSpec model;
  std::vector<double> direction;
  std::vector<SeriesPoint> points;
  std::vector<std::string> warnings;
};

using SubadditiveSequence = Series;

/// Lattice target floor(n x).
Vertex scaled_target(std::span<const double> direction, std::int64_t n);

/// Means of T(0, floor(n x)) / n with normal-approximation CIs.
SubadditiveSequence estimate_radial_g(const ModelSpec& model, std::span<const double> direction,
                                      std::span<const std::int64_t> n_grid,
                                      const RunOptions& run);

struct SubadditivityViolation {
  std::int64_t m = 0;
  std::int64_t n = 0;
  double excess = 0.0;     // a_{m+n} - a_m - a_n
  double tolerance = 0.0;  // 3 combined standard errors
};

struct FeketeReport {
  std::vector<std::int64_t> n;
  std::vector<double> ratio;     // a_n / n
  std::vector<double> envelope;  // running inf of a_k / k over k <= n
  std::vector<SubadditivityViolation> violations;
};

/// Works on a_n = n * value. Pairs (m, n) are checked whenever m, n and m + n
/// are all on the grid.
FeketeReport fekete_envelope(const SubadditiveSequence& seq);

struct RadialShapeEstimate {
  ModelSpec model;
  double t = 0.0;
  std::vector<double> angles;
  std::vector<double> reach;  // mean of max{r : r theta in B(t)/t}
  std::vector<double> std_error;
  std::size_t trials = 0;
  double min_ball_size = 0.0;  // smallest |B(t)| seen over trials
  double convexity_violation_fraction = 0.0;
  std::vector<std::string> warnings;
};

/// B(t) is read as the union of unit cells z + [0,1)^2 over sites z with
/// T(0, z) <= t. Two dimensions only; LPP angles must lie in [0, pi/2].
/// The convexity diagnostic checks the FPP ball itself, and for LPP the
/// complement {g >= 1} within the quadrant.
RadialShapeEstimate shape_boundary_estimate(const ModelSpec& model, double t,
                                            std::span<const double> angles,
                                            const RunOptions& run);

/// sup{r >= 0 : floor(r theta) = z}, or -1 if the ray misses the cell.
double ray_cell_exit(std::span<const double> theta, std::span<const std::int64_t> z);

struct FlatEdgeStats {
  double p = 0.0;
  std::int64_t n = 0;
  std::size_t trials = 0;
  double mean = 0.0;  // of T(0, (n, n)) / (2n)
  double std_error = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double min_ratio = 0.0;
  std::size_t truncated_trials = 0;
};

/// Diagonal FPP ratio T(0,(n,n)) / (2n) under two-point {1, 2} weights.
FlatEdgeStats flat_edge_probe(double p, std::int64_t n, const RunOptions& run);

/// Unbiased sample variance of T(0, floor(n x)) with percentile bootstrap CIs.
Series variance_series(const ModelSpec& model, std::span<const double> direction,
                       std::span<const std::int64_t> n_grid, const RunOptions& run,
                       std::size_t resamples = 1000);

/// Mean wandering deviation D(0, floor(n x)) of the canonical geodesic.
Series wandering_series(const ModelSpec& model, std::span<const double> direction,
                        std::span<const std::int64_t> n_grid, const RunOptions& run);

/// g(floor(n x)) - mean T(0, floor(n x)) for LPP laws with a closed-form g.
Series shape_gap_series(const ModelSpec& model, std::span<const double> direction,
                        std::span<const std::int64_t> n_grid, const RunOptions& run);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  std::int64_t n_min = 0;
  std::int64_t n_max = 0;
  std::size_t points = 0;
  Statistic statistic = Statistic::Variance;
  bool weighted = true;

  /// The exponent the statistic measures: slope / 2 for variances.
  double exponent() const { return statistic == Statistic::Variance ? slope / 2 : slope; }
  double exponent_stderr() const {
    return statistic == Statistic::Variance ? slope_stderr / 2 : slope_stderr;
  }
};

/// Log-log least squares. Weighted by (value / std_error)^2 when every std_error is
/// positive, otherwise unweighted with the residual-based slope error.
ExponentFit fit_exponent(std::span<const SeriesPoint> points, Statistic statistic);

struct KpzResidual {
  double value = 0.0;
  double std_error = 0.0;
};

/// chi - (2 xi - 1) with chi from a variance fit and xi from a wandering fit.
KpzResidual kpz_residual(const ExponentFit& chi_fit, const ExponentFit& xi_fit);

/// Header n,value,stderr,trials.
void write_series_csv(std::ostream& out, const Series& series);
/// Header theta,reach,stderr,trials.
void write_shape_csv(std::ostream& out, const RadialShapeEstimate& shape);

nlohmann::ordered_json to_json(const ExponentFit& fit);
nlohmann::ordered_json to_json(const FeketeReport& report);

}  // namespace latticegrow
