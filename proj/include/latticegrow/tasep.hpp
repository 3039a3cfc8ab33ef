#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "latticegrow/lpp.hpp"
#include "latticegrow/weights.hpp"

namespace latticegrow {

// Step initial condition: particle k (k = 1, 2, ...) starts at site 1 - k.
// Particle 1 jumps 0 -> 1 at time zero, so s(1, 1) = 0.
//
// Coupled to exponential LPP on the quadrant, the n-th step of particle k is
// the infection of site (n - 1, k - 1):
//
//     s(k, n) = T(0, (n - 1) e1 + (k - 1) e2).
//
// Particle k leaves the origin at its k-th step, so particle n + 1 leaving
// the origin happens at s(n + 1, n + 1) = T(0, (n, n)).

/// Fresh Exp(1) clocks drawn from a counter-based stream keyed by the seed.
struct IndependentClocks {
  std::uint64_t seed;
};
/// Clocks read from an Exp(1) vertex field: clock(k, n) = t_{(n-1, k-1)}.
struct LppCoupled {
  WeightField field;
};
using ClockSource = std::variant<IndependentClocks, LppCoupled>;

/// s(k, n) for k = 1..K, n = 1..N.
class StepTimeTable {
 public:
  std::int64_t particles() const { return particles_; }
  std::int64_t steps() const { return steps_; }
  /// 1-based particle and step indices.
  double at(std::int64_t k, std::int64_t n) const;
  /// The coupled field, if this run was driven by one.
  const std::optional<WeightField>& coupled_field() const { return field_; }

  /// Site of particle k at time t: (1 - k) + #{n : s(k, n) <= t}, valid while
  /// the particle has steps left in the table.
  std::int64_t position(std::int64_t k, double t) const;

 private:
  friend StepTimeTable tasep_from_clocks(std::span<const double>, std::int64_t, std::int64_t);
  friend StepTimeTable tasep_run(const ClockSource&, std::int64_t, std::int64_t);

  std::int64_t particles_ = 0;
  std::int64_t steps_ = 0;
  std::vector<double> s_;  // row-major by particle
  std::optional<WeightField> field_;
};

/// s(k, n) = max{s(k-1, n), s(k, n-1)} + clock(k, n), with missing
/// neighbours omitted. `clocks` is row-major K x N.
StepTimeTable tasep_from_clocks(std::span<const double> clocks, std::int64_t particles,
                                std::int64_t steps);

/// Step-initial-condition TASEP. The first step of particle 1 takes no time.
StepTimeTable tasep_run(const ClockSource& source, std::int64_t particles, std::int64_t steps);

/// Thrown when the table is too small to determine c_t.
class CurrentUndetermined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// c_t: particles that started left of the origin and have jumped from 0 to 1
/// by time t, i.e. #{k >= 2 : s(k, k) <= t}.
std::int64_t current_at(const StepTimeTable& table, double t);

/// Checks T(0,(n,n)) <= t  <=>  c_t >= n on a coupled table and its LPP map.
bool coupling_equivalence(const StepTimeTable& table, const LppTimeMap& map, std::int64_t n,
                          double t);

/// CSV columns k,n,s.
void write_csv(std::ostream& out, const StepTimeTable& table);
/// CSV columns t,c over a caller-supplied time grid.
void write_current_csv(std::ostream& out, const StepTimeTable& table, std::span<const double> ts);

}  // namespace latticegrow
