#include "latticegrow/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "latticegrow/format.hpp"
#include "latticegrow/fpp.hpp"
#include "latticegrow/lpp.hpp"
#include "latticegrow/rng.hpp"
#include "latticegrow/stats.hpp"

namespace latticegrow {

namespace {

constexpr std::uint64_t kRadialTag = 0x72616469616cULL;
constexpr std::uint64_t kVarianceTag = 0x766172ULL;
constexpr std::uint64_t kBootstrapTag = 0x626f6f74ULL;
constexpr std::uint64_t kWanderTag = 0x77616e646572ULL;
constexpr std::uint64_t kGapTag = 0x676170ULL;
constexpr std::uint64_t kShapeTag = 0x7368617065ULL;
constexpr std::uint64_t kFlatTag = 0x666c6174ULL;

constexpr double kZ95 = 1.959963984540054;

struct Trial {
  double time = 0.0;
  double wander = 0.0;
  bool truncated = false;
};

void check_run(const RunOptions& run, std::size_t min_trials) {
  if (run.trials < min_trials) {
    throw std::invalid_argument("trials: must be >= " + std::to_string(min_trials));
  }
  if (run.workers < 1) throw std::invalid_argument("workers: must be positive");
}

void check_series_args(const ModelSpec& model, std::span<const double> direction,
                       std::span<const std::int64_t> n_grid) {
  if (model.dimension < 1) throw std::invalid_argument("dimension: must be positive");
  if (direction.size() != static_cast<std::size_t>(model.dimension)) {
    throw std::invalid_argument("direction: needs one coordinate per dimension");
  }
  if (std::all_of(direction.begin(), direction.end(), [](double c) { return c == 0.0; })) {
    throw std::invalid_argument("direction: must be nonzero");
  }
  for (double c : direction) {
    if (!std::isfinite(c)) throw std::invalid_argument("direction: must be finite");
    if (model.model == PassageModel::Lpp && c < 0.0) {
      throw std::invalid_argument("direction: LPP needs a nonnegative direction");
    }
  }
  if (model.model == PassageModel::Fpp && model.dist.kind() == DistributionKind::Constant &&
      model.dist.param1() == 0.0) {
    throw std::invalid_argument("dist: FPP needs weights that are almost surely positive");
  }
  if (n_grid.empty()) throw std::invalid_argument("n-grid: must not be empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) throw std::invalid_argument("n-grid: entries must be positive");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw std::invalid_argument("n-grid: entries must be strictly increasing");
    }
  }
}

// One sample of T(0, target), plus the wandering of its canonical geodesic.
Trial passage_trial(const ModelSpec& model, const WeightField& field, const Vertex& target,
                    bool want_geodesic) {
  Trial out;
  const Vertex zero = origin(model.dimension);
  if (model.model == PassageModel::Lpp) {
    const auto map = lpp_dp(field, target);
    out.time = map.time(target);
    if (want_geodesic) {
      const auto path = lpp_geodesic(map, field, target);
      out.wander = wandering_deviation(path.vertices, zero, target);
    }
    return out;
  }
  // A box face touched while reaching the target may hide a shorter route, so
  // grow the box a few times before reporting truncation.
  auto radius = static_cast<std::int64_t>(std::ceil(1.25 * static_cast<double>(l1_norm(target)))) + 4;
  for (int attempt = 0;; ++attempt) {
    const LatticeBox box(model.dimension, radius);
    const auto map = fpp_dijkstra(field, zero, TargetVertex{target}, box);
    if (!map.boundary_hit() || attempt == 2) {
      out.time = map.time(target);
      out.truncated = map.boundary_hit();
      if (want_geodesic) out.wander = wandering_deviation(fpp_geodesic(field, map, target), zero, target);
      return out;
    }
    radius *= 2;
  }
}

std::vector<Trial> run_trials(const ModelSpec& model, std::span<const double> direction,
                              std::int64_t n, const RunOptions& run, std::uint64_t tag,
                              bool want_geodesic) {
  const Vertex target = scaled_target(direction, n);
  std::vector<Trial> trials(run.trials);
  parallel_for(run.trials, run.workers, [&](std::size_t i) {
    const auto field = model.field(child_seed(run.seed, tag, static_cast<std::uint64_t>(n), i));
    trials[i] = passage_trial(model, field, target, want_geodesic);
  });
  return trials;
}

std::size_t count_truncated(const std::vector<Trial>& trials) {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const Trial& t) { return t.truncated; }));
}

void note_truncation(Series& series, const SeriesPoint& p) {
  if (p.truncated_trials == 0) return;
  series.warnings.push_back("n=" + std::to_string(p.n) + ": " + std::to_string(p.truncated_trials) +
                            " of " + std::to_string(p.trials) +
                            " trials touched the box face; values may be biased");
}

SeriesPoint mean_point(std::int64_t n, const std::vector<double>& values, std::size_t truncated) {
  const auto s = summarize(values);
  SeriesPoint p;
  p.n = n;
  p.value = s.mean;
  p.std_error = s.std_error;
  p.trials = s.count;
  p.ci_lo = s.mean - kZ95 * s.std_error;
  p.ci_hi = s.mean + kZ95 * s.std_error;
  p.truncated_trials = truncated;
  return p;
}

Series make_series(Statistic statistic, const ModelSpec& model, std::span<const double> direction) {
  Series s;
  s.statistic = statistic;
  s.model = model;
  s.direction.assign(direction.begin(), direction.end());
  return s;
}

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

// Fraction of consecutive angular triples whose middle point lies on the wrong
// side of the chord of its neighbours by more than three combined standard
// errors. FPP balls are convex, so the middle point must not fall inside the
// chord. LPP g is superadditive, so {g >= 1} is the convex side and the middle
// point must not stick out past the chord.
double convexity_violations(const std::vector<double>& angles, const std::vector<double>& reach,
                            const std::vector<double>& se, bool concave_side) {
  const std::size_t k = angles.size();
  if (k < 3) return 0.0;
  const double span = angles.back() - angles.front();
  const bool wrap = span > std::numbers::pi;
  std::size_t triples = 0;
  std::size_t bad = 0;
  const std::size_t first = wrap ? 0 : 1;
  const std::size_t last = wrap ? k : k - 1;
  for (std::size_t b = first; b < last; ++b) {
    const std::size_t a = (b + k - 1) % k;
    const std::size_t c = (b + 1) % k;
    double gap = angles[c] - angles[a];
    if (gap < 0) gap += 2 * std::numbers::pi;
    if (gap >= std::numbers::pi) continue;
    const double ax = reach[a] * std::cos(angles[a]);
    const double ay = reach[a] * std::sin(angles[a]);
    const double cx = reach[c] * std::cos(angles[c]);
    const double cy = reach[c] * std::sin(angles[c]);
    const double ux = std::cos(angles[b]);
    const double uy = std::sin(angles[b]);
    const double denom = cross(ux, uy, cx - ax, cy - ay);
    if (std::abs(denom) < 1e-15) continue;
    const double chord = cross(ax, ay, cx - ax, cy - ay) / denom;
    ++triples;
    const double noise = std::sqrt(se[a] * se[a] + se[b] * se[b] + se[c] * se[c]);
    const bool wrong = concave_side ? reach[b] > chord + 3.0 * noise : reach[b] < chord - 3.0 * noise;
    if (wrong) ++bad;
  }
  return triples == 0 ? 0.0 : static_cast<double>(bad) / static_cast<double>(triples);
}

}  // namespace

std::string to_string(PassageModel model) {
  return model == PassageModel::Fpp ? "fpp" : "lpp";
}

std::string to_string(Statistic statistic) {
  switch (statistic) {
    case Statistic::RadialMean: return "radial-mean";
    case Statistic::Variance: return "variance";
    case Statistic::Wandering: return "wandering";
    case Statistic::ShapeGap: return "shape-gap";
  }
  return "unknown";
}

WeightField ModelSpec::field(std::uint64_t seed) const {
  return make_field(dist, seed, attachment(), dimension);
}

Vertex scaled_target(std::span<const double> direction, std::int64_t n) {
  std::vector<double> scaled(direction.size());
  for (std::size_t i = 0; i < direction.size(); ++i) {
    scaled[i] = static_cast<double>(n) * direction[i];
  }
  return lattice_floor(scaled);
}

SubadditiveSequence estimate_radial_g(const ModelSpec& model, std::span<const double> direction,
                                      std::span<const std::int64_t> n_grid,
                                      const RunOptions& run) {
  check_series_args(model, direction, n_grid);
  check_run(run, 2);
  auto series = make_series(Statistic::RadialMean, model, direction);
  for (auto n : n_grid) {
    const auto trials = run_trials(model, direction, n, run, kRadialTag, false);
    std::vector<double> ratio(trials.size());
    std::transform(trials.begin(), trials.end(), ratio.begin(),
                   [&](const Trial& t) { return t.time / static_cast<double>(n); });
    series.points.push_back(mean_point(n, ratio, count_truncated(trials)));
    note_truncation(series, series.points.back());
  }
  return series;
}

FeketeReport fekete_envelope(const SubadditiveSequence& seq) {
  FeketeReport report;
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < seq.points.size(); ++i) {
    const auto& p = seq.points[i];
    if (i > 0 && p.n <= seq.points[i - 1].n) {
      throw std::invalid_argument("fekete_envelope: n must be strictly increasing");
    }
    if (!std::isfinite(p.value)) throw std::invalid_argument("fekete_envelope: nonfinite mean");
    running = std::min(running, p.value);
    report.n.push_back(p.n);
    report.ratio.push_back(p.value);
    report.envelope.push_back(running);
  }
  auto find = [&](std::int64_t n) -> const SeriesPoint* {
    auto it = std::lower_bound(seq.points.begin(), seq.points.end(), n,
                               [](const SeriesPoint& p, std::int64_t v) { return p.n < v; });
    return it != seq.points.end() && it->n == n ? &*it : nullptr;
  };
  for (std::size_t i = 0; i < seq.points.size(); ++i) {
    for (std::size_t j = i; j < seq.points.size(); ++j) {
      const auto& pm = seq.points[i];
      const auto& pn = seq.points[j];
      const SeriesPoint* sum = find(pm.n + pn.n);
      if (!sum) continue;
      const auto a = [](const SeriesPoint& p) { return static_cast<double>(p.n) * p.value; };
      const auto se = [](const SeriesPoint& p) { return static_cast<double>(p.n) * p.std_error; };
      const double excess = a(*sum) - a(pm) - a(pn);
      const double tol = 3.0 * std::sqrt(se(*sum) * se(*sum) + se(pm) * se(pm) + se(pn) * se(pn));
      if (excess > tol) report.violations.push_back({pm.n, pn.n, excess, tol});
    }
  }
  return report;
}

double ray_cell_exit(std::span<const double> theta, std::span<const std::int64_t> z) {
  if (theta.size() != z.size()) throw std::invalid_argument("ray_cell_exit: dimension mismatch");
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const auto zi = static_cast<double>(z[i]);
    if (theta[i] > 0.0) {
      lo = std::max(lo, zi / theta[i]);
      hi = std::min(hi, (zi + 1.0) / theta[i]);
    } else if (theta[i] < 0.0) {
      lo = std::max(lo, (zi + 1.0) / theta[i]);
      hi = std::min(hi, zi / theta[i]);
    } else if (z[i] != 0) {
      return -1.0;
    }
  }
  if (std::isinf(hi)) throw std::invalid_argument("ray_cell_exit: zero direction");
  return lo < hi ? hi : -1.0;
}

RadialShapeEstimate shape_boundary_estimate(const ModelSpec& model, double t,
                                            std::span<const double> angles,
                                            const RunOptions& run) {
  if (model.dimension != 2) throw std::invalid_argument("dimension: shape estimates need d = 2");
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t: must be positive");
  if (angles.empty()) throw std::invalid_argument("angles: must not be empty");
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (!std::isfinite(angles[i])) throw std::invalid_argument("angles: must be finite");
    if (i > 0 && angles[i] <= angles[i - 1]) {
      throw std::invalid_argument("angles: must be strictly increasing");
    }
    if (model.model == PassageModel::Lpp &&
        (angles[i] < -1e-12 || angles[i] > std::numbers::pi / 2 + 1e-12)) {
      throw std::invalid_argument("angles: LPP directions lie in [0, pi/2]");
    }
  }
  if (model.model == PassageModel::Fpp && model.dist.kind() == DistributionKind::Constant &&
      model.dist.param1() == 0.0) {
    throw std::invalid_argument("dist: FPP needs weights that are almost surely positive");
  }
  check_run(run, 2);

  std::vector<std::array<double, 2>> dirs(angles.size());
  for (std::size_t a = 0; a < angles.size(); ++a) {
    for (std::size_t i = 0; i < 2; ++i) {
      const double c = i == 0 ? std::cos(angles[a]) : std::sin(angles[a]);
      dirs[a][i] = std::abs(c) < 1e-12 ? 0.0 : c;
    }
  }

  const std::size_t k = angles.size();
  std::vector<double> reach(run.trials * k);
  std::vector<std::size_t> ball(run.trials);
  std::vector<std::uint8_t> truncated(run.trials);
  const double mean = model.dist.mean();
  const double floor_w = model.dist.min_value();

  parallel_for(run.trials, run.workers, [&](std::size_t trial) {
    const auto field = model.field(child_seed(run.seed, kShapeTag, 0, trial));
    std::vector<double> best(k, 0.0);
    std::size_t size = 0;
    std::int64_t z[2];
    auto visit = [&](double time) {
      if (time > t) return;
      ++size;
      for (std::size_t a = 0; a < k; ++a) best[a] = std::max(best[a], ray_cell_exit(dirs[a], z));
    };
    if (model.model == PassageModel::Fpp) {
      // Every site of B(t) lies within l1 distance t / min weight when that is positive.
      const double scale = floor_w > 0.0 ? floor_w : 0.25 * mean;
      auto radius = static_cast<std::int64_t>(std::ceil(t / scale)) + 2;
      const std::int64_t cap =
          floor_w > 0.0 ? radius : 16 * radius;
      while (true) {
        const LatticeBox box(2, radius);
        const auto map = fpp_dijkstra(field, origin(2), TimeBudget{t}, box);
        if (map.boundary_hit() && radius < cap) {
          radius = std::min(cap, 2 * radius);
          continue;
        }
        truncated[trial] = map.boundary_hit();
        map.for_each_settled([&](std::size_t idx, double time) {
          box.decode(idx, z);
          visit(time);
        });
        break;
      }
    } else {
      auto side = static_cast<std::int64_t>(std::ceil(1.25 * t / mean)) + 10;
      for (int attempt = 0;; ++attempt) {
        const auto map = lpp_dp(field, Vertex{side, side});
        const bool escaped = map.time(side, 0) <= t || map.time(0, side) <= t;
        if (escaped && attempt < 4) {
          side *= 2;
          continue;
        }
        truncated[trial] = escaped;
        const auto table = map.table();
        for (std::size_t i = 0; i < table.size(); ++i) {
          z[0] = static_cast<std::int64_t>(i) / (side + 1);
          z[1] = static_cast<std::int64_t>(i) % (side + 1);
          visit(table[i]);
        }
        break;
      }
    }
    ball[trial] = size;
    for (std::size_t a = 0; a < k; ++a) reach[trial * k + a] = best[a] / t;
  });

  RadialShapeEstimate est;
  est.model = model;
  est.t = t;
  est.angles.assign(angles.begin(), angles.end());
  est.trials = run.trials;
  std::vector<double> column(run.trials);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t trial = 0; trial < run.trials; ++trial) column[trial] = reach[trial * k + a];
    const auto s = summarize(column);
    est.reach.push_back(s.mean);
    est.std_error.push_back(s.std_error);
  }
  est.min_ball_size = static_cast<double>(*std::min_element(ball.begin(), ball.end()));
  if (est.min_ball_size < 100) {
    est.warnings.push_back("some trial has fewer than 100 sites in B(t); increase t");
  }
  const auto cut = std::count(truncated.begin(), truncated.end(), 1);
  if (cut > 0) {
    est.warnings.push_back(std::to_string(cut) + " of " + std::to_string(run.trials) +
                           " trials were truncated by the solver domain");
  }
  est.convexity_violation_fraction = convexity_violations(est.angles, est.reach, est.std_error,
                                                           model.model == PassageModel::Lpp);
  return est;
}

FlatEdgeStats flat_edge_probe(double p, std::int64_t n, const RunOptions& run) {
  if (n < 50) throw std::invalid_argument("n: flat-edge probe needs n >= 50");
  check_run(run, 2);
  const ModelSpec model{PassageModel::Fpp, DistributionSpec::two_point(p), 2};
  const Vertex target{n, n};
  std::vector<double> ratio(run.trials);
  std::vector<std::uint8_t> truncated(run.trials);
  parallel_for(run.trials, run.workers, [&](std::size_t i) {
    const auto field = model.field(child_seed(run.seed, kFlatTag, static_cast<std::uint64_t>(n), i));
    const auto trial = passage_trial(model, field, target, false);
    ratio[i] = trial.time / static_cast<double>(2 * n);
    truncated[i] = trial.truncated;
  });
  const auto s = summarize(ratio);
  FlatEdgeStats out;
  out.p = p;
  out.n = n;
  out.trials = run.trials;
  out.mean = s.mean;
  out.std_error = s.std_error;
  out.ci_lo = s.mean - kZ95 * s.std_error;
  out.ci_hi = s.mean + kZ95 * s.std_error;
  out.min_ratio = *std::min_element(ratio.begin(), ratio.end());
  out.truncated_trials = static_cast<std::size_t>(std::count(truncated.begin(), truncated.end(), 1));
  return out;
}

Series variance_series(const ModelSpec& model, std::span<const double> direction,
                       std::span<const std::int64_t> n_grid, const RunOptions& run,
                       std::size_t resamples) {
  check_series_args(model, direction, n_grid);
  check_run(run, 200);
  auto series = make_series(Statistic::Variance, model, direction);
  for (auto n : n_grid) {
    const auto trials = run_trials(model, direction, n, run, kVarianceTag, false);
    std::vector<double> times(trials.size());
    std::transform(trials.begin(), trials.end(), times.begin(), [](const Trial& t) { return t.time; });
    const auto s = summarize(times);
    const auto boot = bootstrap_variance(
        times, resamples, child_seed(run.seed, kBootstrapTag, static_cast<std::uint64_t>(n), 0));
    SeriesPoint p;
    p.n = n;
    p.value = s.variance;
    p.std_error = boot.std_error;
    p.trials = s.count;
    p.ci_lo = boot.lo;
    p.ci_hi = boot.hi;
    p.truncated_trials = count_truncated(trials);
    series.points.push_back(p);
    note_truncation(series, p);
  }
  return series;
}

Series wandering_series(const ModelSpec& model, std::span<const double> direction,
                        std::span<const std::int64_t> n_grid, const RunOptions& run) {
  check_series_args(model, direction, n_grid);
  check_run(run, 2);
  auto series = make_series(Statistic::Wandering, model, direction);
  for (auto n : n_grid) {
    const auto trials = run_trials(model, direction, n, run, kWanderTag, true);
    std::vector<double> d(trials.size());
    std::transform(trials.begin(), trials.end(), d.begin(), [](const Trial& t) { return t.wander; });
    series.points.push_back(mean_point(n, d, count_truncated(trials)));
    note_truncation(series, series.points.back());
  }
  return series;
}

Series shape_gap_series(const ModelSpec& model, std::span<const double> direction,
                        std::span<const std::int64_t> n_grid, const RunOptions& run) {
  if (model.model != PassageModel::Lpp || model.dimension != 2 ||
      !ExactShape::available_for(model.dist)) {
    throw std::invalid_argument(
        "dist: shape gaps need two-dimensional LPP with Exp(1) or geometric weights");
  }
  check_series_args(model, direction, n_grid);
  check_run(run, 2);
  const auto shape = ExactShape::for_spec(model.dist);
  auto series = make_series(Statistic::ShapeGap, model, direction);
  for (auto n : n_grid) {
    const Vertex target = scaled_target(direction, n);
    const double g = exact_g(shape, static_cast<double>(target[0]), static_cast<double>(target[1]));
    const auto trials = run_trials(model, direction, n, run, kGapTag, false);
    std::vector<double> gap(trials.size());
    std::transform(trials.begin(), trials.end(), gap.begin(),
                   [&](const Trial& t) { return g - t.time; });
    auto p = mean_point(n, gap, 0);
    p.anomaly = p.ci_lo < 0.0;
    if (p.anomaly) {
      series.warnings.push_back("n=" + std::to_string(n) +
                                ": gap CI reaches below zero (statistical anomaly)");
    }
    series.points.push_back(p);
  }
  return series;
}

ExponentFit fit_exponent(std::span<const SeriesPoint> points, Statistic statistic) {
  if (points.size() < 4) throw std::invalid_argument("fit_exponent: need at least 4 points");
  std::int64_t n_min = std::numeric_limits<std::int64_t>::max();
  std::int64_t n_max = 0;
  bool weighted = true;
  for (const auto& p : points) {
    if (p.n < 1) throw std::invalid_argument("fit_exponent: n must be positive");
    if (!(p.value > 0.0)) throw std::invalid_argument("fit_exponent: values must be positive");
    if (!(p.std_error > 0.0)) weighted = false;
    n_min = std::min(n_min, p.n);
    n_max = std::max(n_max, p.n);
  }
  if (n_max < 8 * n_min) throw std::invalid_argument("fit_exponent: n-range must span a factor >= 8");

  const std::size_t k = points.size();
  std::vector<double> x(k), y(k), w(k);
  for (std::size_t i = 0; i < k; ++i) {
    x[i] = std::log(static_cast<double>(points[i].n));
    y[i] = std::log(points[i].value);
    const double rel = points[i].std_error / points[i].value;
    w[i] = weighted ? 1.0 / (rel * rel) : 1.0;
  }
  double sw = 0, swx = 0, swy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    sw += w[i];
    swx += w[i] * x[i];
    swy += w[i] * y[i];
  }
  const double xbar = swx / sw;
  const double ybar = swy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += w[i] * (x[i] - xbar) * (x[i] - xbar);
    sxy += w[i] * (x[i] - xbar) * (y[i] - ybar);
  }
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  fit.n_min = n_min;
  fit.n_max = n_max;
  fit.points = k;
  fit.statistic = statistic;
  fit.weighted = weighted;
  if (weighted) {
    fit.slope_stderr = std::sqrt(1.0 / sxx);
  } else {
    double rss = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / static_cast<double>(k - 2) / sxx);
  }
  return fit;
}

KpzResidual kpz_residual(const ExponentFit& chi_fit, const ExponentFit& xi_fit) {
  const double chi = chi_fit.exponent();
  const double xi = xi_fit.exponent();
  const double se_chi = chi_fit.exponent_stderr();
  const double se_xi = xi_fit.exponent_stderr();
  return {chi - (2.0 * xi - 1.0), std::sqrt(se_chi * se_chi + 4.0 * se_xi * se_xi)};
}

void write_series_csv(std::ostream& out, const Series& series) {
  CsvWriter csv(out, {"n", "value", "stderr", "trials"});
  for (const auto& p : series.points) {
    csv.cell(static_cast<long long>(p.n)).cell(p.value).cell(p.std_error).cell(p.trials);
    csv.end_row();
  }
}

void write_shape_csv(std::ostream& out, const RadialShapeEstimate& shape) {
  CsvWriter csv(out, {"theta", "reach", "stderr", "trials"});
  for (std::size_t a = 0; a < shape.angles.size(); ++a) {
    csv.cell(shape.angles[a]).cell(shape.reach[a]).cell(shape.std_error[a]).cell(shape.trials);
    csv.end_row();
  }
}

nlohmann::ordered_json to_json(const ExponentFit& fit) {
  return {{"statistic", to_string(fit.statistic)},
          {"slope", fit.slope},
          {"slope_stderr", fit.slope_stderr},
          {"intercept", fit.intercept},
          {"exponent", fit.exponent()},
          {"exponent_stderr", fit.exponent_stderr()},
          {"n_min", fit.n_min},
          {"n_max", fit.n_max},
          {"points", fit.points},
          {"weighted", fit.weighted}};
}

nlohmann::ordered_json to_json(const FeketeReport& report) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["ratio"] = report.ratio;
  j["envelope"] = report.envelope;
  auto& v = j["violations"] = nlohmann::ordered_json::array();
  for (const auto& x : report.violations) {
    v.push_back({{"m", x.m}, {"n", x.n}, {"excess", x.excess}, {"tolerance", x.tolerance}});
  }
  return j;
}

}  // namespace latticegrow
