#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hetcache/content_model.hpp"
#include "hetcache/network.hpp"
#include "hetcache/rng.hpp"

namespace hetcache {

struct SimulationSpec {
  double window_radius_m = 0.0;  // 0: min(20/sqrt(tier density), 20 km) per tier
  std::int64_t trials = 100'000;
  std::uint64_t seed = 1;
  bool include_noise = true;
  int workers = 1;  // threads; results do not depend on it

  void validate() const;
};

struct SimEstimate {
  double mean = 0.0;
  double ci_half_width_95 = 0.0;
  std::int64_t trials_used = 0;
  std::int64_t rejected = 0;
};

struct CellLoadEstimate {
  std::vector<double> pmf;  // pmf[i] = empirical P(K = i + 1)
  double mean = 0.0;
  double mean_ci_95 = 0.0;
  std::int64_t trials_used = 0;
  std::int64_t rejected = 0;  // window too small to certify the cell
};

struct DelaySimEstimate {
  SimEstimate delay;
  SimEstimate delay_cached;      // sum_k w_k Q k / E[R_a | k=1]
  SimEstimate delay_backhauled;  // sum_k w_k (T1 + Q k / E[R_a' | k=1])
  SimEstimate rate_cached;       // single-user cached access rate
  SimEstimate rate_backhauled;   // single-user post-backhaul access rate
  SimEstimate backhaul_rate;
  double t1 = 0.0;
};

/// min(20/sqrt(density), 20 km).
double default_window_radius(double density);

/// Interference left outside a window of radius R relative to the
/// interference from [r0, R], measured as Var(tail)/E[inside]^2 for a
/// PPP of the given density (the tail mean itself is added back by the
/// simulators). r0 is the typical spacing 1/(2 sqrt(density)).
double window_truncation_ratio(double density, double alpha, double fade_second_moment,
                               double radius);

/// SINR seen by a UE at the origin served by its nearest SBS, with every
/// other SBS interfering independently with probability q.
double sample_access_sinr(const RadioConfig& radio, const DeploymentConfig& deploy, double q,
                          double band_hz, bool include_noise, double window_radius,
                          StreamRng& rng);

/// One access SINR per trial (trial order), as in sample_access_sinr.
std::vector<double> simulate_access_sinr(const RadioConfig& radio, const DeploymentConfig& deploy,
                                         double q, double band_hz, const SimulationSpec& sim);

/// Fraction of SINR draws for which (band/k) log2(1 + SINR) >= threshold.
SimEstimate ccdf_from_sinr(const std::vector<double>& sinr, double band_hz, std::int64_t k,
                           double rate_threshold_bps);

/// Pr(R_a >= threshold) for cell load k; one SINR draw per trial.
SimEstimate simulate_access_ccdf(const RadioConfig& radio, const DeploymentConfig& deploy,
                                 const ContentConfig& content, std::int64_t k,
                                 double rate_threshold_bps, const SimulationSpec& sim);

/// Same CCDF for several loads from one set of SINR draws.
std::vector<SimEstimate> simulate_access_ccdf(const RadioConfig& radio,
                                              const DeploymentConfig& deploy, double q_hit,
                                              const std::vector<std::int64_t>& loads,
                                              double rate_threshold_bps,
                                              const SimulationSpec& sim);

/// Load of the cell that contains a typical UE (the UE itself included).
CellLoadEstimate simulate_cell_load(const DeploymentConfig& deploy, const SimulationSpec& sim);

/// Mean rate of a typical massive-MIMO backhaul link serving s_o SBSs.
SimEstimate simulate_backhaul_rate(const RadioConfig& radio, const DeploymentConfig& deploy,
                                   std::int64_t s_o, const SimulationSpec& sim);

/// Average delay with loads 1..k (PMF renormalized) and n antennas serving
/// s_o SBSs. Per-trial delays Q/R have infinite mean under Rayleigh
/// fading, so the estimate composes simulated mean rates exactly as the
/// analytical delay does. Pass `backhaul` to reuse a backhaul estimate.
DelaySimEstimate simulate_delay(const RadioConfig& radio, const DeploymentConfig& deploy,
                                const ContentConfig& content, const DeliverySpec& spec,
                                std::int64_t k, std::int64_t s_o, std::int64_t n,
                                const SimulationSpec& sim,
                                std::optional<SimEstimate> backhaul = std::nullopt);

}  // namespace hetcache
