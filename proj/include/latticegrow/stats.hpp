#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

namespace latticegrow {

/// Pairwise (cascade) summation. The result depends only on the order of
/// `values`, never on how the values were produced.
double pairwise_sum(std::span<const double> values);

struct SampleSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased; 0 when count < 2
  double std_error = 0.0;    // sqrt(variance / count)
};

SampleSummary summarize(std::span<const double> values);

struct BootstrapInterval {
  double lo = 0.0;
  double hi = 0.0;
  double std_error = 0.0;  // standard deviation of the bootstrap replicates
};

/// Percentile bootstrap for the unbiased sample variance.
BootstrapInterval bootstrap_variance(std::span<const double> values, std::size_t resamples,
                                     std::uint64_t seed, double level = 0.95);

/// Runs fn(0..count-1) on `workers` threads. Each index runs exactly once.
/// If calls throw, remaining indices are abandoned and the exception from the
/// lowest failing index that ran is rethrown once all workers stop.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace latticegrow
