#include "hetcache/rng.hpp"

namespace hetcache {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t trial, StreamRole role) {
  // Chain the key words through the finaliser so nearby keys decorrelate.
  std::uint64_t h = splitmix64_mix(seed + kGolden);
  h = splitmix64_mix(h ^ (trial + 0x632be59bd9b4e019ULL));
  h = splitmix64_mix(h ^ (static_cast<std::uint64_t>(role) * 0xd1b54a32d192ed03ULL));
  state_ = h;
}

StreamRng::result_type StreamRng::operator()() {
  state_ += kGolden;
  return splitmix64_mix(state_);
}

}  // namespace hetcache
