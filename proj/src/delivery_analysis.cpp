#include "hetcache/delivery_analysis.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hetcache/backhaul_analysis.hpp"
#include "hetcache/errors.hpp"
#include "hetcache/quadrature.hpp"

namespace hetcache {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double post_backhaul_efficiency(double k, double t1, const DeliverySpec& spec,
                                const RadioConfig& radio) {
  return k * spec.content_bits / (radio.backhaul_band() * (spec.deadline_s - t1));
}

std::int64_t inward_floor(double x) { return static_cast<std::int64_t>(std::floor(x + 1e-9 * x)); }
std::int64_t inward_ceil(double x) { return static_cast<std::int64_t>(std::ceil(x - 1e-9 * x)); }

// integral_0^inf dt / (1 + q F(t)), F the interference factor at t bits/s/Hz.
double unit_mean_rate(double q, double alpha) {
  auto phi = [&](double t) { return 1.0 / (1.0 + q * interference_factor(t, alpha)); };
  double upper = 1.0;
  while (phi(upper) >= 1e-12) upper *= 2.0;
  QuadratureOptions opts;
  opts.rel_tol = 1e-11;
  opts.abs_tol = 1e-14;
  return integrate(phi, 0.0, upper, opts).value;
}

}  // namespace

const char* regime_name(Regime r) {
  return r == Regime::BackhaulLimited ? "backhaul_limited" : "cache_limited";
}

ConditionalScd lambda_backhaul(double k, double q_hit, double t1, const DeliverySpec& spec,
                               const RadioConfig& radio) {
  if (!(k >= 1.0)) throw DomainError("lambda_backhaul: k must be >= 1");
  if (!(q_hit >= 0.0 && q_hit <= 1.0)) throw DomainError("lambda_backhaul: q_hit must lie in [0,1]");
  if (!(t1 >= 0.0)) throw DomainError("lambda_backhaul: T1 must be >= 0");
  if (t1 >= spec.deadline_s) {
    throw InfeasibleError("backhaul time " + std::to_string(t1) +
                          " s leaves no access time before the deadline " +
                          std::to_string(spec.deadline_s) + " s");
  }
  return access_success_probability(post_backhaul_efficiency(k, t1, spec, radio), 1.0 - q_hit,
                                    radio.alpha_a);
}

std::int64_t kmax_backhaul(double q_hit, double t1, const DeliverySpec& spec,
                           const RadioConfig& radio, double bracket_upper) {
  if (t1 >= spec.deadline_s) return 0;
  if (spec.content_bits == 0.0 || q_hit == 1.0) return kUnboundedLoad;
  const double k_sat = kSaturationExponent * radio.backhaul_band() * (spec.deadline_s - t1) /
                       spec.content_bits;
  return detail::largest_feasible_load(
      [&](double k) { return lambda_backhaul(k, q_hit, t1, spec, radio).value; },
      spec.scd_threshold, bracket_upper, k_sat);
}

double hit_lower_bound(double t1, const DeliverySpec& spec, const RadioConfig& radio) {
  if (t1 >= spec.deadline_s) {
    throw InfeasibleError("hit_lower_bound: backhaul time exceeds the deadline");
  }
  const double eps = spec.scd_threshold;
  const double f = interference_factor(post_backhaul_efficiency(1.0, t1, spec, radio), radio.alpha_a);
  if (f == 0.0) return 0.0;
  // Lambda_b(1) = 1/(1 + (1 - q) F) >= eps  <=>  q >= 1 - (1 - eps)/(eps F).
  return std::max(0.0, 1.0 - (1.0 - eps) / (eps * f));
}

double pmf_partial_sum(double ratio, std::int64_t kmax, double gamma_load) {
  if (kmax <= 0) return 0.0;
  const CellLoadPmf pmf = cell_load_pmf(ratio, gamma_load);
  const auto n = std::min<std::int64_t>(kmax, static_cast<std::int64_t>(pmf.probabilities.size()));
  double s = 0.0;
  for (std::int64_t k = 0; k < n; ++k) s += pmf.probabilities[static_cast<std::size_t>(k)];
  return std::min(1.0, s);
}

ScdReport scd_total(const DeploymentConfig& deploy, const RadioConfig& radio,
                    const DeliverySpec& spec, const ContentConfig& content, double t1) {
  ScdReport r;
  r.q_hit = hit_probability(content);
  const double ratio = deploy.load_ratio();
  r.kmax_a = kmax_cached(r.q_hit, spec, radio, 10.0 * ratio);
  r.kmax_b = kmax_backhaul(r.q_hit, t1, spec, radio, 10.0 * ratio);
  r.regime = r.kmax_a >= r.kmax_b ? Regime::BackhaulLimited : Regime::CacheLimited;

  const CellLoadPmf pmf = cell_load_pmf(ratio, deploy.gamma_load);
  const auto size = static_cast<std::int64_t>(pmf.probabilities.size());
  auto range_sum = [&](std::int64_t from, std::int64_t to) {  // k in [from, to]
    double s = 0.0;
    for (std::int64_t k = std::max<std::int64_t>(from, 1); k <= std::min(to, size); ++k) {
      s += pmf.probabilities[static_cast<std::size_t>(k - 1)];
    }
    return s;
  };
  r.psi_a = range_sum(1, r.kmax_a);
  r.psi_b = range_sum(1, r.kmax_b);
  r.psi_total = r.q_hit * r.psi_a + (1.0 - r.q_hit) * r.psi_b;
  if (r.kmax_a >= r.kmax_b) {
    r.psi_total_piecewise = r.psi_b + r.q_hit * range_sum(r.kmax_b + 1, r.kmax_a);
  } else {
    r.psi_total_piecewise = r.psi_a + (1.0 - r.q_hit) * range_sum(r.kmax_a + 1, r.kmax_b);
  }
  return r;
}

RegimeReport cache_size_regime(const ContentConfig& content, const RadioConfig& radio,
                               const DeliverySpec& spec, double t1,
                               const DeploymentConfig& deploy) {
  content.validate();
  if (!(content.zipf_exponent < 1.0)) {
    throw DomainError("cache_size_regime: the MPC approximation needs a Zipf exponent < 1");
  }
  RegimeReport r;
  const double J = static_cast<double>(content.library_size);
  const double inv = 1.0 / (1.0 - content.zipf_exponent);
  const double half = 0.5;
  const double q_hit = hit_probability(content);
  const double ratio = deploy.load_ratio();
  const double time_share = (spec.deadline_s - t1) / spec.deadline_s;
  if (time_share <= radio.eta / (1.0 - radio.eta)) {
    r.regime = Regime::BackhaulLimited;
    r.q_lower = hit_lower_bound(t1, spec, radio);
    r.q_upper = half;
    r.psi_approx = pmf_partial_sum(ratio, kmax_backhaul(q_hit, t1, spec, radio, 10.0 * ratio),
                                   deploy.gamma_load);
  } else {
    r.regime = Regime::CacheLimited;
    r.q_lower = half;
    r.q_upper = hit_upper_bound(spec, radio);
    r.psi_approx = pmf_partial_sum(ratio, kmax_cached(q_hit, spec, radio, 10.0 * ratio),
                                   deploy.gamma_load);
  }
  r.l_lower = inward_ceil(J * std::pow(r.q_lower, inv));
  r.l_upper = inward_floor(J * std::pow(r.q_upper, inv));
  r.interval_empty = r.l_lower > r.l_upper;
  return r;
}

double avg_access_rate(double k, double q_eff, double band_frac, const RadioConfig& radio) {
  if (!(k >= 1.0)) throw DomainError("avg_access_rate: k must be >= 1");
  if (!(band_frac > 0.0 && band_frac < 1.0)) {
    throw DomainError("avg_access_rate: band fraction must lie in (0,1)");
  }
  if (!(q_eff > 0.0 && q_eff <= 1.0)) {
    throw EvaluationError(
        "avg_access_rate: mean rate diverges without interferers (q_eff must lie in (0,1])");
  }
  // With t = k x / (band W) the integral factors into (band W / k) * c(q).
  return band_frac * radio.bandwidth_hz / k * unit_mean_rate(q_eff, radio.alpha_a);
}

double eta_balance(double q_hit, double k, const RadioConfig& radio) {
  if (!(q_hit > 0.0 && q_hit < 1.0)) throw DomainError("eta_balance: q_hit must lie in (0,1)");
  auto gap = [&](double eta) {
    return avg_access_rate(k, q_hit, eta, radio) - avg_access_rate(k, 1.0 - q_hit, 1.0 - eta, radio);
  };
  double lo = 1e-6;
  double hi = 1.0 - 1e-6;
  if (gap(lo) > 0.0 || gap(hi) < 0.0) {
    throw InfeasibleError("eta_balance: rate difference does not change sign on (0,1)");
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    const double g = gap(mid);
    if (g == 0.0) return mid;
    if (g < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

DelayReport avg_delay(const DeploymentConfig& deploy, const RadioConfig& radio,
                      const DeliverySpec& spec, const ContentConfig& content,
                      std::int64_t kmax_used, double t1) {
  if (kmax_used < 1) throw DomainError("avg_delay: kmax_used must be >= 1");
  if (!(t1 >= 0.0)) throw DomainError("avg_delay: T1 must be >= 0");
  DelayReport r;
  r.kmax_used = kmax_used;
  r.t1 = t1;
  r.q_hit = hit_probability(content);
  const double q = r.q_hit;
  const double ratio = deploy.load_ratio();

  double norm = 0.0;
  for (std::int64_t k = 1; k <= kmax_used; ++k) {
    r.weights.push_back(load_pmf(ratio, k, deploy.gamma_load));
    norm += r.weights.back();
  }
  for (double& w : r.weights) w /= norm;

  const double c_a = q > 0.0 ? avg_access_rate(1.0, q, radio.eta, radio) : kNaN;
  const double c_b = q < 1.0 ? avg_access_rate(1.0, 1.0 - q, 1.0 - radio.eta, radio) : kNaN;
  double cached = 0.0;
  double backhauled = 0.0;
  for (std::int64_t k = 1; k <= kmax_used; ++k) {
    const double kd = static_cast<double>(k);
    const double w = r.weights[static_cast<std::size_t>(k - 1)];
    r.e_ra_per_k.push_back(c_a / kd);
    r.e_rap_per_k.push_back(c_b / kd);
    cached += w * spec.content_bits / r.e_ra_per_k.back();
    backhauled += w * (t1 + spec.content_bits / r.e_rap_per_k.back());
  }
  r.delay_cached = q > 0.0 ? cached : kNaN;
  r.delay_backhauled = q < 1.0 ? backhauled : kNaN;
  r.delay = (q > 0.0 ? q * cached : 0.0) + (q < 1.0 ? (1.0 - q) * backhauled : 0.0);

  if (q > 0.0 && q < 1.0) {
    r.eta_o = eta_balance(q, 1.0, radio);
    r.theta = c_a < c_b ? parity_theta(radio.bandwidth_hz, c_a, c_b, r.eta_o) : kNaN;
  } else {
    r.eta_o = kNaN;
    r.theta = kNaN;
  }
  return r;
}

}  // namespace hetcache
