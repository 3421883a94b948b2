#include "hetcache/network.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hetcache/errors.hpp"

namespace hetcache {

namespace {
void require(bool ok, const std::string& field, const std::string& constraint) {
  if (!ok) throw DomainError(field + " must satisfy " + constraint);
}
}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double free_space_beta(double carrier_hz) {
  const double r = 3e8 / (4.0 * std::numbers::pi * carrier_hz);
  return r * r;
}

double noise_power_w(double band_hz) {
  if (!(band_hz > 0.0)) throw DomainError("noise bandwidth must be > 0");
  return dbm_to_watts(-174.0 + 10.0 * std::log10(band_hz));
}

void RadioConfig::validate() const {
  require(p_a_w > 0.0, "radio.p_a", "> 0 W");
  require(p_b_w > 0.0, "radio.p_b", "> 0 W");
  require(alpha_a > 2.0, "radio.alpha_a", "> 2");
  require(alpha_b > 2.0, "radio.alpha_b", "> 2");
  require(carrier_hz > 0.0, "radio.carrier_hz", "> 0");
  require(beta > 0.0, "radio.beta", "> 0");
  require(bandwidth_hz > 0.0, "radio.bandwidth_hz", "> 0");
  require(eta > 0.0 && eta < 1.0, "radio.eta", "(0,1)");
  require(r_b > 0.0, "radio.r_b", "> 0");
}

void DeploymentConfig::validate() const {
  require(lambda_u > 0.0, "deploy.lambda_u", "> 0");
  require(lambda_s > 0.0, "deploy.lambda_s", "> 0");
  require(lambda_m > 0.0, "deploy.lambda_m", "> 0");
  require(antennas >= 1, "deploy.antennas", ">= 1");
  require(gamma_load > 0.0, "deploy.gamma_load", "> 0");
}

void DeliverySpec::validate() const {
  require(content_bits > 0.0, "delivery.content_bits", "> 0");
  require(deadline_s > 0.0, "delivery.deadline_s", "> 0");
  require(scd_threshold > 0.0 && scd_threshold < 1.0, "delivery.scd_threshold", "(0,1)");
  require(overload_rho > 0.0 && overload_rho < 1.0, "delivery.overload_rho", "(0,1)");
  require(min_backhaul_rate_bps >= 0.0, "delivery.min_backhaul_rate_bps", ">= 0");
}

}  // namespace hetcache
