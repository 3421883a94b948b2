#pragma once

#include <cstdint>
#include <limits>

namespace hetcache {

/// Which part of a trial a stream feeds; keeps draws for different
/// quantities independent even when they share a trial index.
enum class StreamRole : std::uint64_t {
  Access = 1,
  Backhaul = 2,
  CellLoad = 3,
  Delay = 4,
  Cache = 5,
};

/// Counter-based SplitMix64 stream keyed by (seed, trial, role). Satisfies
/// UniformRandomBitGenerator so it plugs into <random> distributions.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::uint64_t trial, StreamRole role);
  explicit StreamRng(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

}  // namespace hetcache
