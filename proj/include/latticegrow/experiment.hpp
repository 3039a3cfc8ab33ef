#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "latticegrow/estimators.hpp"
#include "latticegrow/weights.hpp"

namespace latticegrow {

inline constexpr const char* kVersion = "0.1.0";

enum class ExperimentKind {
  FppShape,
  LppShape,
  RadialG,
  Exponents,
  FlatEdge,
  Eden,
  Idla,
  TasepCoupling,
  OracleCheck
};

std::string to_string(ExperimentKind kind);
ExperimentKind parse_kind(const std::string& text);

/// Invalid configuration. what() starts with the offending field name.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& detail)
      : std::invalid_argument(field + ": " + detail), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Thrown when a run must stop because a budget or cap was hit.
class HardFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key = value configuration. Keys match the CLI flag names:
///
///   kind, model, dist, dim, seed, trials, n-grid, t, direction, angles,
///   size, workers, out
///
/// `n-grid` accepts "64,128,256" or "64..512" (doubling from the first value).
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::RadialG;
  PassageModel model = PassageModel::Lpp;
  DistributionSpec dist = DistributionSpec::exponential(1.0);
  int dimension = 2;
  std::uint64_t seed = 1;
  std::int64_t trials = 100;
  std::vector<std::int64_t> n_grid;
  double t = 0.0;                  // unset when 0
  std::vector<double> direction;   // empty means (1, ..., 1)
  std::int64_t angles = 32;
  std::int64_t size = 0;           // kind-specific; 0 picks the default
  int workers = 1;
  std::string out = "out";

  using Pairs = std::map<std::string, std::string>;

  /// Builds a config from key/value pairs. Unknown keys and malformed values
  /// raise ConfigError; semantic checks are left to validate().
  static ExperimentConfig from_pairs(const Pairs& pairs);
  /// Parses "key = value" lines; '#' starts a comment.
  static ExperimentConfig parse(const std::string& text);
  static Pairs parse_pairs(const std::string& text);

  Pairs to_pairs() const;
  std::string to_text() const;

  /// Kind-specific checks. Throws ConfigError naming the field.
  void validate() const;

  /// The direction actually used (defaults filled in).
  std::vector<double> effective_direction() const;
  /// The size actually used (defaults filled in).
  std::int64_t effective_size() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct ExperimentResult {
  nlohmann::ordered_json summary;   // also written to summary.json
  std::vector<std::string> files;   // paths written, summary.json last
  bool verified = true;             // false when a consistency check failed
};

/// Validates, runs and writes CSV files plus summary.json into config.out.
/// CSV bytes depend only on the config; the timestamp lives in the summary.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace latticegrow
