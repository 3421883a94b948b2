#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

namespace hetcache {

enum class Placement { MostPopular, Explicit };

struct ContentConfig {
  std::int64_t library_size = 100'000;  // J
  double zipf_exponent = 0.7;
  std::int64_t cache_size = 3000;  // L
  Placement placement = Placement::MostPopular;
  std::vector<double> placement_q;  // Explicit only, length J

  void validate() const;
};

/// Zipf request probabilities a_1..a_J. The returned vector is shared and
/// memoised per (J, exponent); the normaliser is a compensated ascending sum.
std::shared_ptr<const std::vector<double>> zipf_popularity(std::int64_t library_size,
                                                           double exponent);

/// sum_j a_j q_j.
double hit_probability(const ContentConfig& cfg);

/// (L/J)^(1 - exponent); only meaningful for exponent < 1.
double mpc_hit_approx(std::int64_t cache_size, std::int64_t library_size, double exponent);

/// Caching probabilities q_j (1 for the top L under MostPopular).
std::vector<double> placement_vector(const ContentConfig& cfg);

/// Systematic sampling: lay the q_j end to end on [0, sum q) and take every
/// content whose interval contains u + m for integer m. Each j is picked with
/// probability exactly q_j and at most ceil(sum q) files are selected.
/// Returns 1-based indices in ascending order.
std::vector<std::int64_t> select_cached_contents(const std::vector<double>& q, double u);

/// One cache realization (1-based content indices).
template <class Rng>
std::vector<std::int64_t> sample_cache_realization(const ContentConfig& cfg, Rng& rng) {
  cfg.validate();
  if (cfg.placement == Placement::MostPopular) {
    std::vector<std::int64_t> top(static_cast<std::size_t>(cfg.cache_size));
    for (std::int64_t j = 0; j < cfg.cache_size; ++j) top[static_cast<std::size_t>(j)] = j + 1;
    return top;
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return select_cached_contents(cfg.placement_q, unif(rng));
}

}  // namespace hetcache
