#include "latticegrow/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "latticegrow/format.hpp"
#include "latticegrow/fpp.hpp"
#include "latticegrow/growth.hpp"
#include "latticegrow/lpp.hpp"
#include "latticegrow/oracle.hpp"
#include "latticegrow/rng.hpp"
#include "latticegrow/stats.hpp"
#include "latticegrow/tasep.hpp"

namespace latticegrow {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kEdenRunTag = 0x65646e72ULL;
constexpr std::uint64_t kIdlaRunTag = 0x69646c72ULL;
constexpr std::uint64_t kCouplingTag = 0x636f7570ULL;
constexpr std::uint64_t kProbeTag = 0x70726f62ULL;
constexpr std::uint64_t kOracleTag = 0x6f72636cULL;

const std::pair<ExperimentKind, const char*> kKindNames[] = {
    {ExperimentKind::FppShape, "fpp-shape"},       {ExperimentKind::LppShape, "lpp-shape"},
    {ExperimentKind::RadialG, "radial-g"},         {ExperimentKind::Exponents, "exponents"},
    {ExperimentKind::FlatEdge, "flat-edge"},       {ExperimentKind::Eden, "eden"},
    {ExperimentKind::Idla, "idla"},                {ExperimentKind::TasepCoupling, "tasep-coupling"},
    {ExperimentKind::OracleCheck, "oracle-check"},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  if (trim(text).empty()) return parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

template <typename T>
T parse_number(const std::string& field, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError(field, "cannot parse '" + text + "'");
  }
  return value;
}

std::vector<std::int64_t> parse_grid(const std::string& text) {
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto lo = parse_number<std::int64_t>("n-grid", trim(text.substr(0, dots)));
    const auto hi = parse_number<std::int64_t>("n-grid", trim(text.substr(dots + 2)));
    if (lo < 1 || hi < lo) throw ConfigError("n-grid", "range must satisfy 1 <= lo <= hi");
    std::vector<std::int64_t> grid;
    for (std::int64_t n = lo; n <= hi; n *= 2) grid.push_back(n);
    return grid;
  }
  std::vector<std::int64_t> grid;
  for (const auto& part : split(text, ',')) grid.push_back(parse_number<std::int64_t>("n-grid", part));
  return grid;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_floating_point_v<T>) {
      out += shortest(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class OutputDir {
 public:
  explicit OutputDir(const std::string& path) : root_(path) {
    std::error_code ec;
    std::filesystem::create_directories(root_, ec);
    if (ec || !std::filesystem::is_directory(root_)) {
      throw ConfigError("out", "cannot create directory '" + path + "'");
    }
  }

  std::ofstream open(const std::string& name) {
    const auto path = root_ / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("out", "cannot write '" + path.string() + "'");
    files_.push_back(path.string());
    return f;
  }

  const std::vector<std::string>& files() const { return files_; }

 private:
  std::filesystem::path root_;
  std::vector<std::string> files_;
};

json point_json(const SeriesPoint& p) {
  return {{"n", p.n},           {"value", p.value}, {"stderr", p.std_error},
          {"ci_lo", p.ci_lo},   {"ci_hi", p.ci_hi}, {"trials", p.trials},
          {"truncated_trials", p.truncated_trials}};
}

json series_json(const Series& s) {
  json j;
  j["statistic"] = to_string(s.statistic);
  j["model"] = to_string(s.model.model);
  j["dist"] = s.model.dist.token();
  j["direction"] = s.direction;
  auto& pts = j["points"] = json::array();
  for (const auto& p : s.points) pts.push_back(point_json(p));
  return j;
}

void append(std::vector<std::string>& into, const std::vector<std::string>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

ModelSpec model_of(const ExperimentConfig& c) { return {c.model, c.dist, c.dimension}; }
RunOptions run_of(const ExperimentConfig& c) {
  return {static_cast<std::size_t>(c.trials), c.seed, c.workers};
}

void run_radial(const ExperimentConfig& c, OutputDir& out, json& results,
                std::vector<std::string>& warnings) {
  const auto dir = c.effective_direction();
  const auto seq = estimate_radial_g(model_of(c), dir, c.n_grid, run_of(c));
  auto f = out.open("series.csv");
  write_series_csv(f, seq);
  results["series"] = series_json(seq);
  if (c.model == PassageModel::Lpp && c.dimension == 2 && ExactShape::available_for(c.dist)) {
    results["exact_g"] = exact_g(ExactShape::for_spec(c.dist), dir[0], dir[1]);
  } else {
    results["exact_g"] = nullptr;
  }
  if (c.model == PassageModel::Fpp) {
    results["fekete"] = to_json(fekete_envelope(seq));
  } else {
    // superadditive: flip the sign to read the envelope as a running infimum
    auto flipped = seq;
    for (auto& p : flipped.points) {
      p.value = -p.value;
      std::swap(p.ci_lo, p.ci_hi);
      p.ci_lo = -p.ci_lo;
      p.ci_hi = -p.ci_hi;
    }
    results["fekete_negated"] = to_json(fekete_envelope(flipped));
  }
  append(warnings, seq.warnings);
}

void run_shape(const ExperimentConfig& c, OutputDir& out, json& results,
               std::vector<std::string>& warnings) {
  ModelSpec model = model_of(c);
  model.model = c.kind == ExperimentKind::FppShape ? PassageModel::Fpp : PassageModel::Lpp;
  std::vector<double> angles(static_cast<std::size_t>(c.angles));
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const auto a = static_cast<double>(i);
    angles[i] = model.model == PassageModel::Fpp
                    ? 2 * std::numbers::pi * a / static_cast<double>(c.angles)
                    : std::numbers::pi / 2 * a / static_cast<double>(c.angles - 1);
  }
  const auto est = shape_boundary_estimate(model, c.t, angles, run_of(c));
  auto f = out.open("shape.csv");
  write_shape_csv(f, est);
  results["t"] = est.t;
  results["angles"] = est.angles;
  results["reach"] = est.reach;
  results["stderr"] = est.std_error;
  results["convexity_violation_fraction"] = est.convexity_violation_fraction;
  results["min_ball_size"] = est.min_ball_size;
  if (model.model == PassageModel::Lpp && ExactShape::available_for(c.dist)) {
    const auto shape = ExactShape::for_spec(c.dist);
    std::vector<double> exact;
    for (double a : angles) exact.push_back(1.0 / exact_g(shape, std::cos(a), std::sin(a)));
    results["exact_reach"] = exact;
  }
  append(warnings, est.warnings);
}

void run_exponents(const ExperimentConfig& c, OutputDir& out, json& results,
                   std::vector<std::string>& warnings) {
  const auto model = model_of(c);
  const auto dir = c.effective_direction();
  const auto run = run_of(c);
  const auto var = variance_series(model, dir, c.n_grid, run);
  const auto wander = wandering_series(model, dir, c.n_grid, run);
  {
    auto f = out.open("variance.csv");
    write_series_csv(f, var);
  }
  {
    auto f = out.open("wandering.csv");
    write_series_csv(f, wander);
  }
  results["variance"] = series_json(var);
  results["wandering"] = series_json(wander);
  append(warnings, var.warnings);
  append(warnings, wander.warnings);

  std::optional<ExponentFit> chi, xi;
  try {
    chi = fit_exponent(var.points, Statistic::Variance);
    results["chi_fit"] = to_json(*chi);
  } catch (const std::invalid_argument& e) {
    warnings.push_back(std::string("variance fit skipped: ") + e.what());
  }
  try {
    xi = fit_exponent(wander.points, Statistic::Wandering);
    results["xi_fit"] = to_json(*xi);
  } catch (const std::invalid_argument& e) {
    warnings.push_back(std::string("wandering fit skipped: ") + e.what());
  }
  if (chi && xi) {
    const auto r = kpz_residual(*chi, *xi);
    results["kpz_residual"] = {{"value", r.value}, {"stderr", r.std_error}};
  }

  if (c.model == PassageModel::Lpp && c.dimension == 2 && ExactShape::available_for(c.dist)) {
    const auto gap = shape_gap_series(model, dir, c.n_grid, run);
    auto f = out.open("shape_gap.csv");
    write_series_csv(f, gap);
    results["shape_gap"] = series_json(gap);
    append(warnings, gap.warnings);
    try {
      results["gamma_fit"] = to_json(fit_exponent(gap.points, Statistic::ShapeGap));
    } catch (const std::invalid_argument& e) {
      warnings.push_back(std::string("shape-gap fit skipped: ") + e.what());
    }
  }
}

void run_flat_edge(const ExperimentConfig& c, OutputDir& out, json& results) {
  const double p = c.dist.param1();
  auto f = out.open("flat_edge.csv");
  CsvWriter csv(f, {"n", "mean", "stderr", "ci_lo", "ci_hi", "min_ratio", "trials"});
  auto& rows = results["points"] = json::array();
  for (auto n : c.n_grid) {
    const auto s = flat_edge_probe(p, n, run_of(c));
    csv.cell(static_cast<long long>(n)).cell(s.mean).cell(s.std_error).cell(s.ci_lo);
    csv.cell(s.ci_hi).cell(s.min_ratio).cell(s.trials);
    csv.end_row();
    rows.push_back({{"n", n},
                    {"mean", s.mean},
                    {"stderr", s.std_error},
                    {"ci_lo", s.ci_lo},
                    {"ci_hi", s.ci_hi},
                    {"min_ratio", s.min_ratio},
                    {"truncated_trials", s.truncated_trials}});
  }
  results["p"] = p;
}

void run_growth(const ExperimentConfig& c, OutputDir& out, json& results) {
  const bool eden = c.kind == ExperimentKind::Eden;
  const auto largest = static_cast<std::size_t>(c.n_grid.back());
  const auto trials = static_cast<std::size_t>(c.trials);
  std::vector<ClusterTrace> traces(trials);
  parallel_for(trials, c.workers, [&](std::size_t i) {
    const auto seed = child_seed(c.seed, eden ? kEdenRunTag : kIdlaRunTag, 0, i);
    traces[i] = eden ? eden_grow(seed, c.dimension, largest) : idla_grow(seed, c.dimension, largest);
  });
  {
    auto f = out.open("cluster.csv");
    write_csv(f, traces.front());
  }
  auto f = out.open("roundness.csv");
  CsvWriter csv(f, {"trial", "n", "inradius", "outradius", "ratio"});
  auto& rows = results["points"] = json::array();
  for (auto n : c.n_grid) {
    std::vector<double> ratios;
    for (std::size_t i = 0; i < trials; ++i) {
      const auto r = roundness(traces[i], static_cast<std::size_t>(n));
      const double ratio = r.inradius > 0 ? r.outradius / r.inradius
                                          : std::numeric_limits<double>::infinity();
      ratios.push_back(ratio);
      csv.cell(i).cell(static_cast<long long>(n)).cell(r.inradius).cell(r.outradius).cell(ratio);
      csv.end_row();
    }
    const auto s = summarize(ratios);
    rows.push_back({{"n", n},
                    {"mean_ratio", s.mean},
                    {"stderr", s.std_error},
                    {"max_ratio", *std::max_element(ratios.begin(), ratios.end())}});
  }
}

bool run_tasep(const ExperimentConfig& c, OutputDir& out, json& results) {
  const auto size = c.effective_size();
  const auto trials = static_cast<std::size_t>(c.trials);
  constexpr int kProbes = 100;
  struct Outcome {
    std::int64_t mismatched_entries = 0;
    std::int64_t violations = 0;
  };
  std::vector<Outcome> outcome(trials);
  parallel_for(trials, c.workers, [&](std::size_t i) {
    const auto seed = child_seed(c.seed, kCouplingTag, static_cast<std::uint64_t>(size), i);
    const auto field = make_field(DistributionSpec::exponential(1.0), seed, Attachment::Vertex, 2);
    const auto map = lpp_dp(field, Vertex{size - 1, size - 1});
    const auto table = tasep_run(LppCoupled{field}, size, size);
    Outcome o;
    for (std::int64_t k = 1; k <= size; ++k) {
      for (std::int64_t n = 1; n <= size; ++n) {
        if (table.at(k, n) != map.time(n - 1, k - 1)) ++o.mismatched_entries;
      }
    }
    // Half the probes sit exactly on a diagonal passage time, where an
    // off-by-one in the current would show.
    SplitMix64 rng(child_seed(c.seed, kProbeTag, static_cast<std::uint64_t>(size), i));
    const double horizon = map.time(size - 1, size - 1);
    for (int probe = 0; probe < kProbes; ++probe) {
      const auto n = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(size - 2)));
      double t;
      if (probe % 2 == 0) {
        const auto m = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(size - 2)));
        t = map.time(m, m);
      } else {
        t = std::min(horizon * rng.uniform(), std::nextafter(horizon, 0.0));
      }
      if (!coupling_equivalence(table, map, n, t)) ++o.violations;
    }
    outcome[i] = o;
  });
  auto f = out.open("coupling.csv");
  CsvWriter csv(f, {"trial", "mismatched_entries", "probes", "violations"});
  std::int64_t mismatched = 0, violations = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    csv.cell(i).cell(static_cast<long long>(outcome[i].mismatched_entries)).cell(kProbes);
    csv.cell(static_cast<long long>(outcome[i].violations));
    csv.end_row();
    mismatched += outcome[i].mismatched_entries;
    violations += outcome[i].violations;
  }
  results["size"] = size;
  results["tables"] = trials;
  results["mismatched_entries"] = mismatched;
  results["probes"] = static_cast<std::int64_t>(trials) * kProbes;
  results["violations"] = violations;
  return mismatched == 0 && violations == 0;
}

bool run_oracle(const ExperimentConfig& c, OutputDir& out, json& results) {
  const auto size = c.effective_size();
  const auto trials = static_cast<std::size_t>(c.trials);
  struct Outcome {
    std::int64_t fpp_compared = 0, fpp_mismatches = 0;
    std::int64_t lpp_compared = 0, lpp_mismatches = 0;
  };
  std::vector<Outcome> outcome(trials);
  parallel_for(trials, c.workers, [&](std::size_t i) {
    const auto seed = child_seed(c.seed, kOracleTag, static_cast<std::uint64_t>(size), i);
    Outcome o;
    const LatticeBox box(2, size);
    const auto edges = make_field(c.dist, seed, Attachment::Edge, 2);
    const auto map = fpp_dijkstra(edges, origin(2), SettledCount{box.size()}, box);
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
      const auto v = box.vertex(idx);
      ++o.fpp_compared;
      if (map.time(v) != brute_force_fpp(edges, box, origin(2), v)) ++o.fpp_mismatches;
    }
    const auto vertices = make_field(c.dist, seed, Attachment::Vertex, 2);
    const Vertex corner{2 * size, 2 * size};
    const auto dp = lpp_dp(vertices, corner);
    for (std::size_t idx = 0; idx < dp.size(); ++idx) {
      const auto x = dp.vertex(idx);
      ++o.lpp_compared;
      if (dp.time(x) != brute_force_lpp(vertices, x).time) ++o.lpp_mismatches;
    }
    outcome[i] = o;
  });
  auto f = out.open("oracle.csv");
  CsvWriter csv(f, {"trial", "fpp_compared", "fpp_mismatches", "lpp_compared", "lpp_mismatches"});
  Outcome total;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto& o = outcome[i];
    csv.cell(i).cell(static_cast<long long>(o.fpp_compared));
    csv.cell(static_cast<long long>(o.fpp_mismatches)).cell(static_cast<long long>(o.lpp_compared));
    csv.cell(static_cast<long long>(o.lpp_mismatches));
    csv.end_row();
    total.fpp_compared += o.fpp_compared;
    total.fpp_mismatches += o.fpp_mismatches;
    total.lpp_compared += o.lpp_compared;
    total.lpp_mismatches += o.lpp_mismatches;
  }
  results["box_radius"] = size;
  results["lpp_corner"] = 2 * size;
  results["fpp_compared"] = total.fpp_compared;
  results["fpp_mismatches"] = total.fpp_mismatches;
  results["lpp_compared"] = total.lpp_compared;
  results["lpp_mismatches"] = total.lpp_mismatches;
  return total.fpp_mismatches == 0 && total.lpp_mismatches == 0;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExperimentKind parse_kind(const std::string& text) {
  for (const auto& [k, name] : kKindNames) {
    if (text == name) return k;
  }
  throw ConfigError("kind", "unknown experiment kind '" + text + "'");
}

ExperimentConfig ExperimentConfig::from_pairs(const Pairs& pairs) {
  ExperimentConfig c;
  bool model_given = false;
  for (const auto& [key, raw] : pairs) {
    const auto value = trim(raw);
    if (key == "kind") {
      c.kind = parse_kind(value);
    } else if (key == "model") {
      if (value == "fpp") {
        c.model = PassageModel::Fpp;
      } else if (value == "lpp") {
        c.model = PassageModel::Lpp;
      } else {
        throw ConfigError("model", "expected fpp or lpp, got '" + value + "'");
      }
      model_given = true;
    } else if (key == "dist") {
      try {
        c.dist = DistributionSpec::parse(value);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("dist", e.what());
      }
    } else if (key == "dim") {
      c.dimension = parse_number<int>(key, value);
    } else if (key == "seed") {
      c.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "trials") {
      c.trials = parse_number<std::int64_t>(key, value);
    } else if (key == "n-grid") {
      c.n_grid = parse_grid(value);
    } else if (key == "t") {
      c.t = parse_number<double>(key, value);
    } else if (key == "direction") {
      c.direction.clear();
      for (const auto& part : split(value, ',')) c.direction.push_back(parse_number<double>(key, part));
    } else if (key == "angles") {
      c.angles = parse_number<std::int64_t>(key, value);
    } else if (key == "size") {
      c.size = parse_number<std::int64_t>(key, value);
    } else if (key == "workers") {
      c.workers = parse_number<int>(key, value);
    } else if (key == "out") {
      c.out = value;
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  if (!model_given) {
    c.model = c.kind == ExperimentKind::FppShape || c.kind == ExperimentKind::FlatEdge
                  ? PassageModel::Fpp
                  : PassageModel::Lpp;
  }
  return c;
}

ExperimentConfig::Pairs ExperimentConfig::parse_pairs(const std::string& text) {
  Pairs pairs;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number), "expected 'key = value'");
    }
    pairs[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return pairs;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  return from_pairs(parse_pairs(text));
}

ExperimentConfig::Pairs ExperimentConfig::to_pairs() const {
  return {{"kind", to_string(kind)},
          {"model", to_string(model)},
          {"dist", dist.token()},
          {"dim", std::to_string(dimension)},
          {"seed", std::to_string(seed)},
          {"trials", std::to_string(trials)},
          {"n-grid", join(n_grid)},
          {"t", shortest(t)},
          {"direction", join(direction)},
          {"angles", std::to_string(angles)},
          {"size", std::to_string(size)},
          {"workers", std::to_string(workers)},
          {"out", out}};
}

std::string ExperimentConfig::to_text() const {
  std::string text;
  for (const auto& [key, value] : to_pairs()) text += key + " = " + value + "\n";
  return text;
}

std::vector<double> ExperimentConfig::effective_direction() const {
  if (!direction.empty()) return direction;
  return std::vector<double>(static_cast<std::size_t>(std::max(dimension, 1)), 1.0);
}

std::int64_t ExperimentConfig::effective_size() const {
  if (size > 0) return size;
  switch (kind) {
    case ExperimentKind::TasepCoupling: return 64;
    case ExperimentKind::OracleCheck: return 3;
    default: return 0;
  }
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError("trials", "must be positive");
  if (workers < 1) throw ConfigError("workers", "must be positive");
  if (dimension < 1) throw ConfigError("dim", "must be positive");
  if (angles < 1) throw ConfigError("angles", "must be positive");
  if (size < 0) throw ConfigError("size", "must be positive");
  if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("t", "must be positive");
  if (out.empty()) throw ConfigError("out", "must not be empty");
  if (!direction.empty() && direction.size() != static_cast<std::size_t>(dimension)) {
    throw ConfigError("direction", "needs " + std::to_string(dimension) + " coordinates");
  }
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) throw ConfigError("n-grid", "entries must be positive");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw ConfigError("n-grid", "entries must be strictly increasing");
    }
  }
  const auto dir = effective_direction();
  if (std::all_of(dir.begin(), dir.end(), [](double x) { return x == 0.0; })) {
    throw ConfigError("direction", "must be nonzero");
  }
  const bool zero_weights = dist.kind() == DistributionKind::Constant && dist.param1() == 0.0;
  auto need_grid = [&] {
    if (n_grid.empty()) throw ConfigError("n-grid", "required for " + to_string(kind));
  };
  auto need_2d = [&] {
    if (dimension != 2) throw ConfigError("dim", to_string(kind) + " runs in two dimensions");
  };
  auto need_trials = [&](std::int64_t min) {
    if (trials < min) throw ConfigError("trials", "must be >= " + std::to_string(min));
  };

  switch (kind) {
    case ExperimentKind::RadialG:
    case ExperimentKind::Exponents:
      need_grid();
      if (model == PassageModel::Lpp &&
          std::any_of(dir.begin(), dir.end(), [](double x) { return x < 0.0; })) {
        throw ConfigError("direction", "LPP needs a nonnegative direction");
      }
      if (model == PassageModel::Fpp && zero_weights) {
        throw ConfigError("dist", "FPP needs weights that are almost surely positive");
      }
      if (kind == ExperimentKind::RadialG) {
        need_trials(2);
      } else {
        need_trials(200);
        if (n_grid.size() < 4) throw ConfigError("n-grid", "exponent fits need >= 4 points");
        if (n_grid.back() < 8 * n_grid.front()) {
          throw ConfigError("n-grid", "exponent fits need a range spanning a factor >= 8");
        }
      }
      break;
    case ExperimentKind::FppShape:
    case ExperimentKind::LppShape:
      need_2d();
      need_trials(2);
      if (!(t > 0.0)) throw ConfigError("t", "required for " + to_string(kind));
      if (angles < 3) throw ConfigError("angles", "must be >= 3");
      if (kind == ExperimentKind::FppShape && zero_weights) {
        throw ConfigError("dist", "FPP needs weights that are almost surely positive");
      }
      break;
    case ExperimentKind::FlatEdge:
      need_2d();
      need_grid();
      need_trials(2);
      if (dist.kind() != DistributionKind::TwoPoint) {
        throw ConfigError("dist", "flat-edge needs two-point weights, e.g. twopoint:0.8");
      }
      if (n_grid.front() < 50) throw ConfigError("n-grid", "flat-edge needs n >= 50");
      break;
    case ExperimentKind::Eden:
    case ExperimentKind::Idla:
      need_grid();
      break;
    case ExperimentKind::TasepCoupling:
      if (dist != DistributionSpec::exponential(1.0)) {
        throw ConfigError("dist", "the TASEP coupling needs exp:1");
      }
      if (effective_size() < 3) throw ConfigError("size", "must be >= 3");
      break;
    case ExperimentKind::OracleCheck:
      need_2d();
      if (effective_size() > 4) throw ConfigError("size", "oracle boxes are limited to radius 4");
      if (zero_weights) throw ConfigError("dist", "the FPP oracle needs positive weights");
      break;
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  OutputDir out(config.out);
  ExperimentResult result;
  json results = json::object();
  std::vector<std::string> warnings;
  try {
    switch (config.kind) {
      case ExperimentKind::RadialG: run_radial(config, out, results, warnings); break;
      case ExperimentKind::FppShape:
      case ExperimentKind::LppShape: run_shape(config, out, results, warnings); break;
      case ExperimentKind::Exponents: run_exponents(config, out, results, warnings); break;
      case ExperimentKind::FlatEdge: run_flat_edge(config, out, results); break;
      case ExperimentKind::Eden:
      case ExperimentKind::Idla: run_growth(config, out, results); break;
      case ExperimentKind::TasepCoupling: result.verified = run_tasep(config, out, results); break;
      case ExperimentKind::OracleCheck: result.verified = run_oracle(config, out, results); break;
    }
  } catch (const BudgetExceeded& e) {
    throw HardFailure(e.what());
  } catch (const WalkCapExceeded& e) {
    throw HardFailure(e.what());
  } catch (const CurrentUndetermined& e) {
    throw HardFailure(e.what());
  }

  json summary;
  summary["kind"] = to_string(config.kind);
  summary["generated_at"] = utc_timestamp();
  summary["verified"] = result.verified;
  summary["results"] = std::move(results);
  summary["warnings"] = warnings;
  json config_echo = json::object();
  for (const auto& [k, v] : config.to_pairs()) config_echo[k] = v;
  summary["reproducibility"] = {
      {"version", kVersion}, {"config", std::move(config_echo)}, {"config_text", config.to_text()}};
  {
    auto f = out.open("summary.json");
    f << summary.dump(2) << '\n';
  }
  summary["files"] = out.files();
  result.summary = std::move(summary);
  result.files = out.files();
  return result;
}

}  // namespace latticegrow
