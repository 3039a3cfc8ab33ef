#include "latticegrow/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "latticegrow/rng.hpp"

namespace latticegrow {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

SampleSummary summarize(std::span<const double> values) {
  SampleSummary s;
  s.count = values.size();
  if (s.count == 0) return s;
  s.mean = pairwise_sum(values) / static_cast<double>(s.count);
  if (s.count < 2) return s;
  std::vector<double> sq(values.size());
  std::transform(values.begin(), values.end(), sq.begin(), [&](double v) {
    const double d = v - s.mean;
    return d * d;
  });
  s.variance = pairwise_sum(sq) / static_cast<double>(s.count - 1);
  s.std_error = std::sqrt(s.variance / static_cast<double>(s.count));
  return s;
}

BootstrapInterval bootstrap_variance(std::span<const double> values, std::size_t resamples,
                                     std::uint64_t seed, double level) {
  if (values.size() < 2) throw std::invalid_argument("bootstrap_variance: need >= 2 values");
  if (resamples < 2) throw std::invalid_argument("bootstrap_variance: need >= 2 resamples");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("bootstrap_variance: bad level");
  SplitMix64 rng(seed);
  std::vector<double> sample(values.size());
  std::vector<double> replicates(resamples);
  for (auto& r : replicates) {
    for (auto& v : sample) v = values[rng.below(values.size())];
    r = summarize(sample).variance;
  }
  const auto spread = summarize(replicates);
  std::sort(replicates.begin(), replicates.end());
  const double tail = (1.0 - level) / 2.0;
  const auto at = [&](double q) {
    const auto i = static_cast<std::size_t>(std::floor(q * static_cast<double>(resamples - 1)));
    return replicates[std::min(i, resamples - 1)];
  };
  return {at(tail), at(1.0 - tail), std::sqrt(spread.variance)};
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  if (workers < 1) throw std::invalid_argument("parallel_for: workers must be >= 1");
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex guard;
  std::size_t failed_index = count;
  std::exception_ptr error;
  auto work = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(guard);
        if (i < failed_index) {
          failed_index = i;
          error = std::current_exception();
        }
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace latticegrow
