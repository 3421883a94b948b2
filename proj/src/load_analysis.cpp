#include "hetcache/load_analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hetcache/errors.hpp"
#include "hetcache/special_functions.hpp"

namespace hetcache {

namespace {

// Beyond this exponent 2^s overflows the hypergeometric route; use the
// leading large-argument term of theta * 2F1(.., -theta) in log space.
constexpr double kLogRouteExponent = 900.0;

double log_load_pmf(double ratio, std::int64_t k, double g) {
  const double kd = static_cast<double>(k);
  return g * std::log(g) - std::lgamma(kd) + std::lgamma(kd + g) - std::lgamma(g) +
         (kd - 1.0) * std::log(ratio) - (kd + g) * std::log(g + ratio);
}

}  // namespace

double load_pmf(double ratio, std::int64_t k, double gamma_load) {
  if (!(ratio >= 0.0)) throw DomainError("load_pmf: ratio must be >= 0");
  if (k < 1) throw DomainError("load_pmf: k must be >= 1");
  if (!(gamma_load > 0.0)) throw DomainError("load_pmf: gamma must be > 0");
  if (ratio == 0.0) return k == 1 ? 1.0 : 0.0;
  return std::exp(log_load_pmf(ratio, k, gamma_load));
}

CellLoadPmf cell_load_pmf(double ratio, double gamma_load) {
  CellLoadPmf out;
  out.ratio = ratio;
  const double k_floor = 10.0 * ratio + 200.0;
  double total = 0.0;
  for (std::int64_t k = 1;; ++k) {
    const double p = load_pmf(ratio, k, gamma_load);
    out.probabilities.push_back(p);
    total += p;
    if (p < 1e-15 && static_cast<double>(k) >= k_floor) break;
  }
  out.tail_mass = std::max(0.0, 1.0 - total);
  return out;
}

double interference_factor(double s, double alpha) {
  if (!(alpha > 2.0)) throw DomainError("pathloss exponent must be > 2");
  if (!(s >= 0.0)) throw DomainError("spectral efficiency must be >= 0");
  if (s == 0.0) return 0.0;
  if (s > kSaturationExponent) return std::numeric_limits<double>::infinity();
  if (s <= kLogRouteExponent) {
    const double theta = std::expm1(s * std::numbers::ln2);
    return 2.0 * theta / (alpha - 2.0) * hyp2f1_access(alpha, -theta);
  }
  const double b = 1.0 - 2.0 / alpha;
  return std::exp(std::log(2.0 / (alpha - 2.0)) +
                  std::log(b * std::numbers::pi / std::sin(std::numbers::pi * b)) +
                  (1.0 - b) * s * std::numbers::ln2);
}

ConditionalScd access_success_probability(double s, double q, double alpha) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("interferer fraction must lie in [0,1]");
  const double f = interference_factor(s, alpha);
  if (q == 0.0 || s == 0.0) return {1.0, false};
  if (std::isinf(f)) return {0.0, s > kSaturationExponent};
  return {1.0 / (1.0 + q * f), false};
}

ConditionalScd lambda_cached(double k, double q_hit, const DeliverySpec& spec,
                             const RadioConfig& radio) {
  if (!(k >= 1.0)) throw DomainError("lambda_cached: k must be >= 1");
  if (!(spec.content_bits >= 0.0)) throw DomainError("lambda_cached: Q must be >= 0");
  const double s = k * spec.content_bits / (radio.access_band() * spec.deadline_s);
  return access_success_probability(s, q_hit, radio.alpha_a);
}

std::int64_t kmax_cached(double q_hit, const DeliverySpec& spec, const RadioConfig& radio,
                         double bracket_upper) {
  if (spec.content_bits == 0.0 || q_hit == 0.0) return kUnboundedLoad;
  const double k_sat =
      kSaturationExponent * radio.access_band() * spec.deadline_s / spec.content_bits;
  return detail::largest_feasible_load(
      [&](double k) { return lambda_cached(k, q_hit, spec, radio).value; },
      spec.scd_threshold, bracket_upper, k_sat);
}

double scd_cached(double q_hit, const DeploymentConfig& deploy, const DeliverySpec& spec,
                  const RadioConfig& radio) {
  const double ratio = deploy.load_ratio();
  const std::int64_t kmax = kmax_cached(q_hit, spec, radio, 10.0 * ratio);
  if (kmax == 0) return 0.0;
  const CellLoadPmf pmf = cell_load_pmf(ratio, deploy.gamma_load);
  double psi = 0.0;
  const auto n = std::min<std::int64_t>(kmax, static_cast<std::int64_t>(pmf.probabilities.size()));
  for (std::int64_t k = 0; k < n; ++k) psi += pmf.probabilities[static_cast<std::size_t>(k)];
  return std::min(1.0, psi);
}

double hit_upper_bound(const DeliverySpec& spec, const RadioConfig& radio) {
  const double eps = spec.scd_threshold;
  // Lambda(1) = 1/(1 + q*F) >= eps  <=>  q <= (1 - eps)/(eps*F).
  const double s = spec.content_bits / (radio.access_band() * spec.deadline_s);
  const double f = interference_factor(s, radio.alpha_a);
  if (f == 0.0) return 1.0;
  return std::min(1.0, (1.0 - eps) / (eps * f));
}

MinDensity max_admissible_ratio(std::int64_t kmax, double rho, double gamma_load) {
  if (kmax < 1) throw DomainError("density rule: kmax must be >= 1");
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("density rule: rho must lie in (0,1)");
  const std::int64_t k1 = kmax + 1;
  const double closed = static_cast<double>(k1);
  if (load_pmf(closed, k1, gamma_load) <= rho) return {0.0, closed, true};

  // P_mu(kmax + 1) rises on (0, mu_peak] and vanishes as mu -> 0.
  const double mu_peak = static_cast<double>(kmax) * gamma_load / (gamma_load + 1.0);
  if (load_pmf(mu_peak, k1, gamma_load) < rho) {
    throw InfeasibleError("density rule: rho = " + std::to_string(rho) +
                          " is below the attainable load probability");
  }
  double lo = 0.0;
  double hi = mu_peak;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * mu_peak; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (load_pmf(mid, k1, gamma_load) <= rho) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (lo <= 0.0) throw InfeasibleError("density rule: no positive load ratio satisfies rho");
  return {0.0, lo, false};
}

MinDensity min_sbs_density(double lambda_u, std::int64_t kmax, double rho, double gamma_load) {
  if (!(lambda_u > 0.0)) throw DomainError("min_sbs_density: lambda_u must be > 0");
  MinDensity out = max_admissible_ratio(kmax, rho, gamma_load);
  out.density = lambda_u / out.ratio;
  return out;
}

}  // namespace hetcache
