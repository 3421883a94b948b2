#pragma once

#include <cstdint>

// Physical-layer, deployment and service parameters. Everything is SI:
// watts, metres, hertz, seconds, bits. Powers are converted from dBm once
// (see dbm_to_watts) when a configuration is loaded.

namespace hetcache {

double dbm_to_watts(double dbm);

/// Free-space constant (c / (4 pi f_c))^2.
double free_space_beta(double carrier_hz);

/// Thermal noise over `band_hz`: -174 dBm/Hz + 10 log10(band).
double noise_power_w(double band_hz);

struct RadioConfig {
  double p_a_w = 1.0;           // SBS transmit power (30 dBm)
  double p_b_w = 39.810717055;  // MBS transmit power (46 dBm)
  double alpha_a = 3.0;         // access pathloss exponent
  double alpha_b = 2.6;         // backhaul pathloss exponent
  double carrier_hz = 3.5e9;
  double beta = free_space_beta(3.5e9);
  double bandwidth_hz = 100e6;
  double eta = 0.5;  // access share of the bandwidth
  double r_b = 5.0;  // minimum MBS-SBS distance
  // Reproduce the Delta2 integrand with the exponent as literally printed
  // (r_b instead of alpha_b). Off by default.
  bool printed_delta2_exponent = false;

  double access_band() const { return eta * bandwidth_hz; }
  double backhaul_band() const { return (1.0 - eta) * bandwidth_hz; }
  void validate() const;
};

struct DeploymentConfig {
  double lambda_u = 3e-4;  // UEs / m^2
  double lambda_s = 1e-4;  // SBSs / m^2
  double lambda_m = 1e-5;  // MBSs / m^2
  std::int64_t antennas = 128;
  double gamma_load = 3.5;

  double load_ratio() const { return lambda_u / lambda_s; }
  void validate() const;
};

struct DeliverySpec {
  double content_bits = 1e6;  // Q
  double deadline_s = 1.0;    // T_th
  double scd_threshold = 0.8; // epsilon
  double overload_rho = 0.1;
  double min_backhaul_rate_bps = 50e6;

  void validate() const;
};

}  // namespace hetcache
