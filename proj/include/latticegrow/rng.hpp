#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>

namespace latticegrow {

/// 64-bit finalizer from MurmurHash3. Bijective, full avalanche.
constexpr std::uint64_t fmix64(std::uint64_t k) {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k;
}

/// Absorbs one word into a running hash state.
constexpr std::uint64_t absorb(std::uint64_t state, std::uint64_t word) {
  return fmix64(state ^ fmix64(word + 0x9e3779b97f4a7c15ULL)) + 0x632be59bd9b4e019ULL;
}

constexpr std::uint64_t hash_words(std::uint64_t key, std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = fmix64(key ^ 0x243f6a8885a308d3ULL);
  for (auto w : words) h = absorb(h, w);
  return fmix64(h);
}

inline std::uint64_t hash_coords(std::uint64_t state, std::span<const std::int64_t> coords) {
  for (auto c : coords) state = absorb(state, static_cast<std::uint64_t>(c));
  return fmix64(state);
}

/// Uniform double in [0,1) from the top 53 bits.
constexpr double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Child seed for trial `trial` of grid point `n` of the statistic `tag`.
/// Aggregation over trials is independent of the order they were run in.
constexpr std::uint64_t child_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t n,
                                   std::uint64_t trial) {
  return hash_words(master, {tag, n, trial});
}

/// SplitMix64 sequential stream. Used where a walk or growth process needs a
/// long run of draws from a single seed; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(fmix64(seed ^ 0x5851f42d4c957f2dULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return to_unit((*this)()); }

  /// Unbiased integer in [0, bound) (Lemire's multiply-and-reject).
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace latticegrow
