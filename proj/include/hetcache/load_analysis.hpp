#pragma once

#include <cstdint>
#include <vector>

#include "hetcache/network.hpp"

namespace hetcache {

/// Returned by the kmax searches when the SCD threshold can never be
/// violated (zero-size content or no interferers).
inline constexpr std::int64_t kUnboundedLoad = 1'000'000'000;

/// Exponent s = kQ/(band*T) beyond which 2^s is treated as infinite.
inline constexpr double kSaturationExponent = 1e4;

struct ConditionalScd {
  double value = 1.0;
  bool saturated = false;  // exponent overflow; value forced to 0
};

struct CellLoadPmf {
  double ratio = 0.0;
  std::vector<double> probabilities;  // probabilities[i] = P(K = i + 1)
  double tail_mass = 0.0;
};

struct MinDensity {
  double density = 0.0;
  double ratio = 0.0;               // lambda_U/lambda_S (or omega_b) at the returned density
  bool closed_form_branch = false;  // ratio = kmax + 1 was already admissible
};

/// P(K = k) for the gamma-approximated load of a typical cell with mean
/// ratio `ratio`, evaluated in log space.
double load_pmf(double ratio, std::int64_t k, double gamma_load = 3.5);

/// Whole PMF, truncated once P(k) < 1e-15 and k >= 10*ratio + 200.
CellLoadPmf cell_load_pmf(double ratio, double gamma_load = 3.5);

/// 2(2^s - 1)/(alpha - 2) * 2F1(1, 1-2/alpha; 2-2/alpha; 1 - 2^s); infinite
/// once s exceeds kSaturationExponent.
double interference_factor(double s, double alpha);

/// Interference-limited success probability of a Rayleigh link that must
/// carry `s` bits/s/Hz when a fraction `q` of the other cells interfere:
///   1 / (1 + q * 2(2^s - 1)/(alpha - 2) * 2F1(1, 1-2/alpha; 2-2/alpha; 1 - 2^s)).
ConditionalScd access_success_probability(double s, double q, double alpha);

/// Lambda(k): probability that k equally sharing users each get Q bits
/// through the cached (eta*W) band within T_th.
ConditionalScd lambda_cached(double k, double q_hit, const DeliverySpec& spec,
                             const RadioConfig& radio);

/// Largest integer k with Lambda(k) >= epsilon (0 if Lambda(1) < epsilon).
/// `bracket_upper` is the initial bisection bracket, normally 10*lambda_U/lambda_S.
std::int64_t kmax_cached(double q_hit, const DeliverySpec& spec, const RadioConfig& radio,
                         double bracket_upper = 30.0);

/// sum_{k <= kmax} P(k): the cached-delivery SCD probability.
double scd_cached(double q_hit, const DeploymentConfig& deploy, const DeliverySpec& spec,
                  const RadioConfig& radio);

/// Largest hit probability that still lets a lone user meet the threshold.
double hit_upper_bound(const DeliverySpec& spec, const RadioConfig& radio);

/// Smallest SBS density keeping P(k) <= rho for every k > kmax.
MinDensity min_sbs_density(double lambda_u, std::int64_t kmax, double rho,
                           double gamma_load = 3.5);

/// Ratio search shared by the SBS and MBS density rules: the largest mean
/// load mu such that P_mu(k) <= rho for all k > kmax.
MinDensity max_admissible_ratio(std::int64_t kmax, double rho, double gamma_load);

namespace detail {
/// Bisection on the continuous relaxation plus integer repair, for any
/// success probability that is decreasing in k. `k_saturate` is where the
/// probability is known to be 0.
template <class F>
std::int64_t largest_feasible_load(F&& success, double epsilon, double bracket_upper,
                                   double k_saturate);
}  // namespace detail

}  // namespace hetcache

#include "hetcache/detail/kmax_search.hpp"
