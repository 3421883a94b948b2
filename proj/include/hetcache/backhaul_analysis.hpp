#pragma once

#include <cstdint>

#include "hetcache/load_analysis.hpp"
#include "hetcache/network.hpp"
#include "hetcache/quadrature.hpp"

namespace hetcache {

struct LowerBoundRate {
  double rate_bps = 0.0;
  double delta1_bar = 0.0;
  double delta2_bar = 0.0;
  bool asymptotic_valid = true;  // N - S_o at or above the Stirling floor
};

struct BackhaulRateReport {
  std::int64_t s_o = 0;
  std::int64_t n = 0;
  double rate_exact = 0.0;
  double rate_lower = 0.0;
  double t1 = 0.0;  // Q / rate_exact
  double delta1_bar = 0.0;
  double delta2_bar = 0.0;
  bool asymptotic_valid = true;
};

inline constexpr std::int64_t kStirlingFloor = 8;

/// Default tolerances for the backhaul integrals (exponential-weight form).
QuadratureOptions backhaul_quadrature();

/// Mean aggregate interference at a backhaul receiver whose serving MBS is
/// at distance y (Campbell): P_b 2 pi lambda_M beta y^(2-alpha_b)/(alpha_b-2).
/// The per-MBS load cancels, so the result does not depend on S_j.
double interference_mean(double y, const RadioConfig& radio, const DeploymentConfig& deploy);

/// Ergodic rate of a typical zero-forcing backhaul link serving s_o SBSs.
double backhaul_rate_exact(const RadioConfig& radio, const DeploymentConfig& deploy,
                           std::int64_t s_o, const QuadratureOptions& opts = backhaul_quadrature());

/// -alpha_b E[ln y] under the truncated-Rayleigh serving distance, through Ei.
double delta1_bar(const RadioConfig& radio, const DeploymentConfig& deploy);

/// E[ln(P_b beta/(2 S_o) y^-alpha_b + Xi3(y) + sigma_b^2)].
double delta2_bar(const RadioConfig& radio, const DeploymentConfig& deploy, std::int64_t s_o,
                  const QuadratureOptions& opts = backhaul_quadrature());

/// Jensen/Stirling lower bound on the backhaul rate.
LowerBoundRate backhaul_rate_lower(const RadioConfig& radio, const DeploymentConfig& deploy,
                                   std::int64_t s_o, std::int64_t validity_floor = kStirlingFloor);

BackhaulRateReport backhaul_report(const RadioConfig& radio, const DeploymentConfig& deploy,
                                   std::int64_t s_o, double content_bits);

/// Q / rate.
double backhaul_time(double content_bits, double rate_bps);

/// Largest S with backhaul_rate_exact(S) >= r_min, capped at N - 1.
std::int64_t max_backhaul_load(const RadioConfig& radio, const DeploymentConfig& deploy,
                               double r_min);

/// Smallest MBS density keeping P_{omega_b}(k) <= rho for k > s_max, with
/// omega_b = lambda_S (1 - q_hit)/lambda_M.
MinDensity min_mbs_density(double lambda_s, double q_hit, std::int64_t s_max, double rho,
                           double gamma_load = 3.5);

/// Required backhaul rate e_ra e_rap / (e_rap - e_ra) expressed in bits/s/Hz
/// of the backhaul band (1 - eta_o) W.
double parity_theta(double bandwidth_hz, double e_ra, double e_rap, double eta_o);

/// Fewest antennas for which the backhauled delivery (backhaul + access)
/// is no slower than cached delivery, using the lower-bound backhaul rate
/// evaluated with the band split eta_o.
std::int64_t min_antennas_for_delay_parity(const RadioConfig& radio,
                                           const DeploymentConfig& deploy, std::int64_t s_o,
                                           double e_ra, double e_rap, double eta_o);

}  // namespace hetcache
