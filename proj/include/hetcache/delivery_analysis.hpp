#pragma once

#include <cstdint>
#include <vector>

#include "hetcache/content_model.hpp"
#include "hetcache/load_analysis.hpp"
#include "hetcache/network.hpp"

namespace hetcache {

/// BackhaulLimited: Kmax_a >= Kmax_b, so the SCD probability is governed by
/// the self-backhauled branch. CacheLimited otherwise.
enum class Regime { BackhaulLimited, CacheLimited };

const char* regime_name(Regime r);

struct ScdReport {
  double q_hit = 0.0;
  std::int64_t kmax_a = 0;
  std::int64_t kmax_b = 0;
  double psi_a = 0.0;
  double psi_b = 0.0;
  double psi_total = 0.0;            // q psi_a + (1 - q) psi_b
  double psi_total_piecewise = 0.0;  // common prefix + weighted excess
  Regime regime = Regime::BackhaulLimited;
};

struct RegimeReport {
  Regime regime = Regime::BackhaulLimited;
  std::int64_t l_lower = 0;  // inclusive, rounded inward
  std::int64_t l_upper = 0;
  bool interval_empty = false;
  double q_lower = 0.0;  // hit-probability interval behind [l_lower, l_upper]
  double q_upper = 0.0;
  double psi_approx = 0.0;  // at the configured cache size
};

struct DelayReport {
  std::int64_t kmax_used = 0;
  double t1 = 0.0;
  double q_hit = 0.0;
  std::vector<double> weights;      // P(k | k <= kmax_used)
  std::vector<double> e_ra_per_k;   // cached access rate, bits/s
  std::vector<double> e_rap_per_k;  // post-backhaul access rate, bits/s
  double delay_cached = 0.0;        // sum_k w_k Q / E[R_a | k]
  double delay_backhauled = 0.0;    // sum_k w_k (T1 + Q / E[R_a' | k])
  double delay = 0.0;
  double eta_o = 0.0;
  double theta = 0.0;  // NaN unless E[R_a] < E[R_a'] at the configured eta
};

/// Conditional SCD probability of the post-backhaul access phase.
ConditionalScd lambda_backhaul(double k, double q_hit, double t1, const DeliverySpec& spec,
                               const RadioConfig& radio);

std::int64_t kmax_backhaul(double q_hit, double t1, const DeliverySpec& spec,
                           const RadioConfig& radio, double bracket_upper = 30.0);

/// Smallest hit probability for which one backhauled user meets the threshold.
double hit_lower_bound(double t1, const DeliverySpec& spec, const RadioConfig& radio);

/// Sum of the load PMF over 1..kmax (kmax may be kUnboundedLoad).
double pmf_partial_sum(double ratio, std::int64_t kmax, double gamma_load);

ScdReport scd_total(const DeploymentConfig& deploy, const RadioConfig& radio,
                    const DeliverySpec& spec, const ContentConfig& content, double t1);

/// Which branch dominates and the cache-size window in which the dominant
/// SCD approximation holds (MPC placement, exponent < 1).
RegimeReport cache_size_regime(const ContentConfig& content, const RadioConfig& radio,
                               const DeliverySpec& spec, double t1,
                               const DeploymentConfig& deploy);

/// Mean rate of an access link with k users, a fraction q_eff of interfering
/// cells and band_frac * W of bandwidth.
double avg_access_rate(double k, double q_eff, double band_frac, const RadioConfig& radio);

/// Band split at which cached and post-backhaul mean access rates coincide.
double eta_balance(double q_hit, double k, const RadioConfig& radio);

DelayReport avg_delay(const DeploymentConfig& deploy, const RadioConfig& radio,
                      const DeliverySpec& spec, const ContentConfig& content,
                      std::int64_t kmax_used, double t1);

}  // namespace hetcache
