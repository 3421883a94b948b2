#include "hetcache/backhaul_analysis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hetcache/errors.hpp"
#include "hetcache/special_functions.hpp"

namespace hetcache {

namespace {

void check_load(const DeploymentConfig& deploy, std::int64_t s_o) {
  if (s_o < 1 || s_o >= deploy.antennas) {
    throw DomainError("backhaul: need 1 <= S_o < N (S_o = " + std::to_string(s_o) +
                      ", N = " + std::to_string(deploy.antennas) + ")");
  }
}

// Serving distance with u = pi lambda_M y^2 = u0 + v, v ~ Exp(1).
struct DistanceMap {
  double u0;
  double pl;  // pi * lambda_M
  double y(double v) const { return std::sqrt((u0 + v) / pl); }
};

DistanceMap distance_map(const RadioConfig& radio, const DeploymentConfig& deploy) {
  const double pl = std::numbers::pi * deploy.lambda_m;
  return {pl * radio.r_b * radio.r_b, pl};
}

}  // namespace

QuadratureOptions backhaul_quadrature() {
  QuadratureOptions o;
  o.rel_tol = 1e-10;
  o.abs_tol = 1e-13;
  return o;
}

double interference_mean(double y, const RadioConfig& radio, const DeploymentConfig& deploy) {
  return radio.p_b_w * 2.0 * std::numbers::pi * deploy.lambda_m * radio.beta *
         std::pow(y, 2.0 - radio.alpha_b) / (radio.alpha_b - 2.0);
}

double backhaul_rate_exact(const RadioConfig& radio, const DeploymentConfig& deploy,
                           std::int64_t s_o, const QuadratureOptions& opts) {
  radio.validate();
  deploy.validate();
  check_load(deploy, s_o);
  const auto m = deploy.antennas - s_o;
  const double gain = array_gain_sq(m);
  const double per_sbs = radio.p_b_w / static_cast<double>(s_o);
  const double noise = noise_power_w(radio.backhaul_band());
  const DistanceMap map = distance_map(radio, deploy);
  auto integrand = [&](double v) {
    const double y = map.y(v);
    const double path = radio.beta * std::pow(y, -radio.alpha_b);
    const double xi1 = path * gain;
    const double xi2 = path * (static_cast<double>(m + 1) - gain);
    const double sinr = per_sbs * xi1 / (per_sbs * xi2 + interference_mean(y, radio, deploy) + noise);
    return std::log2(1.0 + sinr) * std::exp(-v);
  };
  return radio.backhaul_band() * integrate_to_infinity(integrand, 0.0, opts).value;
}

double delta1_bar(const RadioConfig& radio, const DeploymentConfig& deploy) {
  const DistanceMap map = distance_map(radio, deploy);
  // E[ln y] = ln r_b + e^{u0} E1(u0)/2 = e^{u0}(-Ei(-u0)/2 + e^{-u0} ln r_b).
  return -radio.alpha_b * std::exp(map.u0) *
         (-exp_integral_ei(-map.u0) / 2.0 + std::exp(-map.u0) * std::log(radio.r_b));
}

double delta2_bar(const RadioConfig& radio, const DeploymentConfig& deploy, std::int64_t s_o,
                  const QuadratureOptions& opts) {
  check_load(deploy, s_o);
  const double noise = noise_power_w(radio.backhaul_band());
  const double exponent = radio.printed_delta2_exponent ? radio.r_b : radio.alpha_b;
  const double head = radio.p_b_w * radio.beta / (2.0 * static_cast<double>(s_o));
  const DistanceMap map = distance_map(radio, deploy);
  auto integrand = [&](double v) {
    const double y = map.y(v);
    return std::log(head * std::pow(y, -exponent) + interference_mean(y, radio, deploy) + noise) *
           std::exp(-v);
  };
  return integrate_to_infinity(integrand, 0.0, opts).value;
}

LowerBoundRate backhaul_rate_lower(const RadioConfig& radio, const DeploymentConfig& deploy,
                                   std::int64_t s_o, std::int64_t validity_floor) {
  radio.validate();
  deploy.validate();
  check_load(deploy, s_o);
  LowerBoundRate out;
  out.delta1_bar = delta1_bar(radio, deploy);
  out.delta2_bar = delta2_bar(radio, deploy, s_o);
  out.asymptotic_valid = deploy.antennas - s_o >= validity_floor;
  const double snr_like = radio.p_b_w * radio.beta *
                          (static_cast<double>(deploy.antennas - s_o) + 0.5) /
                          static_cast<double>(s_o) * std::exp(out.delta1_bar - out.delta2_bar);
  out.rate_bps = radio.backhaul_band() * std::log2(1.0 + snr_like);
  return out;
}

BackhaulRateReport backhaul_report(const RadioConfig& radio, const DeploymentConfig& deploy,
                                   std::int64_t s_o, double content_bits) {
  BackhaulRateReport r;
  r.s_o = s_o;
  r.n = deploy.antennas;
  r.rate_exact = backhaul_rate_exact(radio, deploy, s_o);
  const LowerBoundRate low = backhaul_rate_lower(radio, deploy, s_o);
  r.rate_lower = low.rate_bps;
  r.delta1_bar = low.delta1_bar;
  r.delta2_bar = low.delta2_bar;
  r.asymptotic_valid = low.asymptotic_valid;
  r.t1 = backhaul_time(content_bits, r.rate_exact);
  return r;
}

double backhaul_time(double content_bits, double rate_bps) {
  if (!(rate_bps > 0.0)) throw DomainError("backhaul_time: rate must be > 0");
  if (!(content_bits >= 0.0)) throw DomainError("backhaul_time: Q must be >= 0");
  return content_bits / rate_bps;
}

std::int64_t max_backhaul_load(const RadioConfig& radio, const DeploymentConfig& deploy,
                               double r_min) {
  const std::int64_t cap = deploy.antennas - 1;
  if (cap < 1) throw DomainError("max_backhaul_load: need N >= 2");
  if (backhaul_rate_exact(radio, deploy, 1) < r_min) {
    throw InfeasibleError("max_backhaul_load: minimum backhaul rate unattainable even with S = 1");
  }
  if (backhaul_rate_exact(radio, deploy, cap) >= r_min) return cap;
  std::int64_t lo = 1;  // feasible
  std::int64_t hi = cap;  // infeasible
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (backhaul_rate_exact(radio, deploy, mid) >= r_min) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

MinDensity min_mbs_density(double lambda_s, double q_hit, std::int64_t s_max, double rho,
                           double gamma_load) {
  if (!(lambda_s > 0.0)) throw DomainError("min_mbs_density: lambda_s must be > 0");
  if (!(q_hit >= 0.0 && q_hit <= 1.0)) throw DomainError("min_mbs_density: q_hit must lie in [0,1]");
  MinDensity out = max_admissible_ratio(s_max, rho, gamma_load);
  out.density = lambda_s * (1.0 - q_hit) / out.ratio;
  return out;
}

double parity_theta(double bandwidth_hz, double e_ra, double e_rap, double eta_o) {
  if (!(e_ra > 0.0)) throw DomainError("delay parity: cached access rate must be > 0");
  if (!(e_rap > e_ra)) {
    throw DomainError("delay parity: backhauled access rate must exceed the cached access rate");
  }
  if (!(eta_o > 0.0 && eta_o < 1.0)) throw DomainError("delay parity: eta_o must lie in (0,1)");
  return e_ra * e_rap / (e_rap - e_ra) / ((1.0 - eta_o) * bandwidth_hz);
}

std::int64_t min_antennas_for_delay_parity(const RadioConfig& radio,
                                           const DeploymentConfig& deploy, std::int64_t s_o,
                                           double e_ra, double e_rap, double eta_o) {
  const double theta = parity_theta(radio.bandwidth_hz, e_ra, e_rap, eta_o);
  RadioConfig at_eta = radio;
  at_eta.eta = eta_o;
  if (s_o < 1) throw DomainError("delay parity: S_o must be >= 1");
  // Delta terms do not involve N; evaluate them with any admissible N.
  DeploymentConfig probe = deploy;
  probe.antennas = std::max<std::int64_t>(deploy.antennas, s_o + 1);
  const double delta = delta1_bar(at_eta, probe) - delta2_bar(at_eta, probe, s_o);
  const double need = (std::exp2(theta) - 1.0) / (radio.p_b_w * radio.beta * std::exp(delta));
  const double bound = (need + 1.0) * static_cast<double>(s_o) - 0.5;
  return static_cast<std::int64_t>(std::ceil(bound - 1e-12 * std::abs(bound)));
}

}  // namespace hetcache
