#include "hetcache/monte_carlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "hetcache/errors.hpp"
#include "hetcache/load_analysis.hpp"
#include "hetcache/special_functions.hpp"

namespace hetcache {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZ95 = 1.959963984540054;
constexpr double kWindowBudget = 1e-4;

// Runs fn(trial) for every trial and stores the results by trial index, so
// the reduction order never depends on how trials were spread over threads.
template <class Sample, class F>
std::vector<Sample> run_trials(std::int64_t trials, int workers, F&& fn) {
  std::vector<Sample> out(static_cast<std::size_t>(trials));
  const auto n_workers =
      static_cast<std::int64_t>(std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(trials, 1)));
  if (n_workers == 1) {
    for (std::int64_t t = 0; t < trials; ++t) out[static_cast<std::size_t>(t)] = fn(t);
    return out;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_workers));
  std::vector<std::thread> pool;
  for (std::int64_t w = 0; w < n_workers; ++w) {
    pool.emplace_back([&, w] {
      const std::int64_t begin = trials * w / n_workers;
      const std::int64_t end = trials * (w + 1) / n_workers;
      try {
        for (std::int64_t t = begin; t < end; ++t) out[static_cast<std::size_t>(t)] = fn(t);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

struct Moments {
  double mean = 0.0;
  double var_of_mean = 0.0;
  std::int64_t n = 0;
};

// Two-pass mean/variance over the finite entries, in index order.
Moments moments(const std::vector<double>& x) {
  Moments m;
  double sum = 0.0;
  for (double v : x) {
    if (std::isfinite(v)) {
      sum += v;
      ++m.n;
    }
  }
  if (m.n == 0) return {std::numeric_limits<double>::quiet_NaN(), 0.0, 0};
  m.mean = sum / static_cast<double>(m.n);
  if (m.n < 2) return m;
  double ss = 0.0;
  for (double v : x) {
    if (std::isfinite(v)) ss += (v - m.mean) * (v - m.mean);
  }
  m.var_of_mean = ss / static_cast<double>(m.n - 1) / static_cast<double>(m.n);
  return m;
}

SimEstimate summarize(const std::vector<double>& x) {
  const Moments m = moments(x);
  return {m.mean, kZ95 * std::sqrt(m.var_of_mean), m.n,
          static_cast<std::int64_t>(x.size()) - m.n};
}

double covariance_of_means(const std::vector<double>& a, const std::vector<double>& b,
                           double mean_a, double mean_b) {
  double s = 0.0;
  std::int64_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isfinite(a[i]) && std::isfinite(b[i])) {
      s += (a[i] - mean_a) * (b[i] - mean_b);
      ++n;
    }
  }
  if (n < 2) return 0.0;
  return s / static_cast<double>(n - 1) / static_cast<double>(n);
}

double window_for(const SimulationSpec& sim, double density) {
  return sim.window_radius_m > 0.0 ? sim.window_radius_m : default_window_radius(density);
}

void check_window(double density, double alpha, double fade_m2, double radius,
                  const char* what) {
  if (density <= 0.0) return;
  const double r = window_truncation_ratio(density, alpha, fade_m2, radius);
  if (!(r < kWindowBudget)) {
    throw DomainError(std::string("simulation window of ") + std::to_string(radius) +
                      " m is too small for the " + what + " tier (truncation ratio " +
                      std::to_string(r) + ", budget 1e-4)");
  }
}

// Mean interference from a PPP of `density` beyond `radius`, per unit of
// power * beta * fade mean.
double tail_mean(double density, double alpha, double radius) {
  return density * 2.0 * kPi * std::pow(radius, 2.0 - alpha) / (alpha - 2.0);
}

double uniform_disc_r2(double radius, StreamRng& rng) { return radius * radius * rng.uniform(); }

struct DualRates {
  double cached = 0.0;
  double backhauled = 0.0;
};

}  // namespace

void SimulationSpec::validate() const {
  if (trials < 1) throw DomainError("sim.trials must be >= 1");
  if (!(window_radius_m >= 0.0)) throw DomainError("sim.window_radius_m must be >= 0");
  if (workers < 1) throw DomainError("sim.workers must be >= 1");
}

double default_window_radius(double density) {
  if (!(density > 0.0)) throw DomainError("default_window_radius: density must be > 0");
  return std::min(20.0 / std::sqrt(density), 20'000.0);
}

double window_truncation_ratio(double density, double alpha, double fade_second_moment,
                               double radius) {
  const double r0 = 0.5 / std::sqrt(density);
  if (radius <= r0) return std::numeric_limits<double>::infinity();
  const double var_tail = 2.0 * kPi * density * fade_second_moment *
                          std::pow(radius, 2.0 - 2.0 * alpha) / (2.0 * alpha - 2.0);
  const double inside = 2.0 * kPi * density *
                        (std::pow(r0, 2.0 - alpha) - std::pow(radius, 2.0 - alpha)) / (alpha - 2.0);
  return var_tail / (inside * inside);
}

double sample_access_sinr(const RadioConfig& radio, const DeploymentConfig& deploy, double q,
                          double band_hz, bool include_noise, double window_radius,
                          StreamRng& rng) {
  const double R = window_radius;
  std::poisson_distribution<std::int64_t> count(deploy.lambda_s * kPi * R * R);
  const std::int64_t n = count(rng);
  if (n == 0) return 0.0;
  thread_local std::vector<double> r2;
  r2.resize(static_cast<std::size_t>(n));
  std::size_t serving = 0;
  for (std::size_t i = 0; i < r2.size(); ++i) {
    r2[i] = uniform_disc_r2(R, rng);
    if (r2[i] < r2[serving]) serving = i;
  }
  std::exponential_distribution<double> fade(1.0);
  const double half_alpha = 0.5 * radio.alpha_a;
  const double signal = fade(rng) * std::pow(r2[serving], -half_alpha);
  double interference = 0.0;
  for (std::size_t i = 0; i < r2.size(); ++i) {
    if (i == serving) continue;
    if (rng.uniform() < q) interference += fade(rng) * std::pow(r2[i], -half_alpha);
  }
  interference += tail_mean(q * deploy.lambda_s, radio.alpha_a, R);
  const double scale = radio.p_a_w * radio.beta;
  const double denom = scale * interference + (include_noise ? noise_power_w(band_hz) : 0.0);
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return scale * signal / denom;
}

std::vector<double> simulate_access_sinr(const RadioConfig& radio, const DeploymentConfig& deploy,
                                         double q, double band_hz, const SimulationSpec& sim) {
  sim.validate();
  radio.validate();
  deploy.validate();
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("simulate_access_sinr: q must lie in [0,1]");
  const double R = window_for(sim, deploy.lambda_s);
  check_window(q * deploy.lambda_s, radio.alpha_a, 2.0, R, "SBS");
  return run_trials<double>(sim.trials, sim.workers, [&](std::int64_t t) {
    StreamRng rng(sim.seed, static_cast<std::uint64_t>(t), StreamRole::Access);
    return sample_access_sinr(radio, deploy, q, band_hz, sim.include_noise, R, rng);
  });
}

SimEstimate ccdf_from_sinr(const std::vector<double>& sinr, double band_hz, std::int64_t k,
                           double rate_threshold_bps) {
  if (k < 1) throw DomainError("access CCDF: k must be >= 1");
  std::vector<double> hit(sinr.size());
  for (std::size_t i = 0; i < sinr.size(); ++i) {
    const double rate = band_hz / static_cast<double>(k) * std::log2(1.0 + sinr[i]);
    hit[i] = rate >= rate_threshold_bps ? 1.0 : 0.0;
  }
  return summarize(hit);
}

std::vector<SimEstimate> simulate_access_ccdf(const RadioConfig& radio,
                                              const DeploymentConfig& deploy, double q_hit,
                                              const std::vector<std::int64_t>& loads,
                                              double rate_threshold_bps,
                                              const SimulationSpec& sim) {
  for (auto k : loads) {
    if (k < 1) throw DomainError("simulate_access_ccdf: k must be >= 1");
  }
  const double band = radio.access_band();
  const auto sinr = simulate_access_sinr(radio, deploy, q_hit, band, sim);
  std::vector<SimEstimate> out;
  for (auto k : loads) out.push_back(ccdf_from_sinr(sinr, band, k, rate_threshold_bps));
  return out;
}

SimEstimate simulate_access_ccdf(const RadioConfig& radio, const DeploymentConfig& deploy,
                                 const ContentConfig& content, std::int64_t k,
                                 double rate_threshold_bps, const SimulationSpec& sim) {
  return simulate_access_ccdf(radio, deploy, hit_probability(content), std::vector{k},
                              rate_threshold_bps, sim)
      .front();
}

CellLoadEstimate simulate_cell_load(const DeploymentConfig& deploy, const SimulationSpec& sim) {
  sim.validate();
  deploy.validate();
  const double R = window_for(sim, deploy.lambda_s);
  constexpr double kRejected = -1.0;
  const auto loads = run_trials<double>(sim.trials, sim.workers, [&](std::int64_t t) {
    StreamRng rng(sim.seed, static_cast<std::uint64_t>(t), StreamRole::CellLoad);
    std::poisson_distribution<std::int64_t> sbs_count(deploy.lambda_s * kPi * R * R);
    const std::int64_t n = sbs_count(rng);
    if (n == 0) return kRejected;
    thread_local std::vector<std::array<double, 2>> sbs;
    sbs.resize(static_cast<std::size_t>(n));
    std::size_t x = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sbs.size(); ++i) {
      const double r = R * std::sqrt(rng.uniform());
      const double phi = 2.0 * kPi * rng.uniform();
      sbs[i] = {r * std::cos(phi), r * std::sin(phi)};
      const double d2 = r * r;
      if (d2 < best) {
        best = d2;
        x = i;
      }
    }
    const auto [xx, xy] = sbs[x];
    // With a neighbour in each 45-degree sector at distance d, the Voronoi
    // cell of X lies within d/sqrt(2) in that sector.
    std::array<double, 8> sector_min;
    sector_min.fill(std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < sbs.size(); ++i) {
      if (i == x) continue;
      const double dx = sbs[i][0] - xx;
      const double dy = sbs[i][1] - xy;
      double ang = std::atan2(dy, dx);
      if (ang < 0.0) ang += 2.0 * kPi;
      const auto s = std::min<std::size_t>(7, static_cast<std::size_t>(ang / (kPi / 4.0)));
      sector_min[s] = std::min(sector_min[s], std::hypot(dx, dy));
    }
    const double rc = *std::max_element(sector_min.begin(), sector_min.end()) / std::sqrt(2.0);
    if (!std::isfinite(rc) || std::hypot(xx, xy) + 2.0 * rc > R) return kRejected;

    thread_local std::vector<std::array<double, 2>> near;
    near.clear();
    for (std::size_t i = 0; i < sbs.size(); ++i) {
      if (i == x) continue;
      const double dx = sbs[i][0] - xx;
      const double dy = sbs[i][1] - xy;
      if (dx * dx + dy * dy <= 4.0 * rc * rc) near.push_back({dx, dy});
    }
    std::poisson_distribution<std::int64_t> ue_count(deploy.lambda_u * kPi * rc * rc);
    const std::int64_t m = ue_count(rng);
    std::int64_t inside = 0;
    for (std::int64_t j = 0; j < m; ++j) {
      const double r = rc * std::sqrt(rng.uniform());
      const double phi = 2.0 * kPi * rng.uniform();
      const double px = r * std::cos(phi);
      const double py = r * std::sin(phi);
      const double own = px * px + py * py;
      bool mine = true;
      for (const auto& z : near) {
        const double ddx = px - z[0];
        const double ddy = py - z[1];
        if (ddx * ddx + ddy * ddy < own) {
          mine = false;
          break;
        }
      }
      if (mine) ++inside;
    }
    return static_cast<double>(1 + inside);
  });

  CellLoadEstimate est;
  std::vector<double> kept;
  kept.reserve(loads.size());
  for (double k : loads) {
    if (k == kRejected) {
      ++est.rejected;
      continue;
    }
    kept.push_back(k);
    const auto idx = static_cast<std::size_t>(k) - 1;
    if (est.pmf.size() <= idx) est.pmf.resize(idx + 1, 0.0);
    est.pmf[idx] += 1.0;
  }
  est.trials_used = static_cast<std::int64_t>(kept.size());
  if (est.trials_used == 0) throw EvaluationError("simulate_cell_load: every trial was rejected");
  for (double& p : est.pmf) p /= static_cast<double>(est.trials_used);
  const Moments m = moments(kept);
  est.mean = m.mean;
  est.mean_ci_95 = kZ95 * std::sqrt(m.var_of_mean);
  return est;
}

SimEstimate simulate_backhaul_rate(const RadioConfig& radio, const DeploymentConfig& deploy,
                                   std::int64_t s_o, const SimulationSpec& sim) {
  sim.validate();
  radio.validate();
  deploy.validate();
  if (s_o < 1 || s_o >= deploy.antennas) {
    throw DomainError("simulate_backhaul_rate: need 1 <= S_o < N");
  }
  const double R = window_for(sim, deploy.lambda_m);
  const double S = static_cast<double>(s_o);
  check_window(deploy.lambda_m, radio.alpha_b, 1.0 + 1.0 / S, R, "MBS");
  const std::int64_t m = deploy.antennas - s_o;
  const double mean_amp = std::sqrt(array_gain_sq(m));
  const double per_sbs = radio.p_b_w / S;
  const double noise = sim.include_noise ? noise_power_w(radio.backhaul_band()) : 0.0;
  const double pl = kPi * deploy.lambda_m;
  const double half_alpha = 0.5 * radio.alpha_b;

  const auto rates = run_trials<double>(sim.trials, sim.workers, [&](std::int64_t t) {
    StreamRng rng(sim.seed, static_cast<std::uint64_t>(t), StreamRole::Backhaul);
    std::exponential_distribution<double> expo(1.0);
    const double y2 = radio.r_b * radio.r_b + expo(rng) / pl;
    const double outer2 = std::max(R * R, y2);
    std::poisson_distribution<std::int64_t> count(pl * (outer2 - y2));
    const std::int64_t n = count(rng);
    std::gamma_distribution<double> load_gain(S, 1.0);
    double interference = 0.0;
    for (std::int64_t j = 0; j < n; ++j) {
      const double r2 = y2 + rng.uniform() * (outer2 - y2);
      interference += load_gain(rng) * std::pow(r2, -half_alpha);
    }
    interference = per_sbs * radio.beta * interference +
                   radio.p_b_w * radio.beta * tail_mean(deploy.lambda_m, radio.alpha_b,
                                                        std::sqrt(outer2));
    std::gamma_distribution<double> own_gain(static_cast<double>(m + 1), 1.0);
    const double g_o = own_gain(rng);
    const double path = radio.beta * std::pow(y2, -half_alpha);
    const double wobble = std::sqrt(g_o) - mean_amp;
    const double sinr = per_sbs * mean_amp * mean_amp * path /
                        (per_sbs * wobble * wobble * path + interference + noise);
    return radio.backhaul_band() * std::log2(1.0 + sinr);
  });
  return summarize(rates);
}

DelaySimEstimate simulate_delay(const RadioConfig& radio, const DeploymentConfig& deploy,
                                const ContentConfig& content, const DeliverySpec& spec,
                                std::int64_t k, std::int64_t s_o, std::int64_t n,
                                const SimulationSpec& sim, std::optional<SimEstimate> backhaul) {
  sim.validate();
  radio.validate();
  deploy.validate();
  if (k < 1) throw DomainError("simulate_delay: k must be >= 1");
  const double q = hit_probability(content);
  const double R = window_for(sim, deploy.lambda_s);
  check_window(q * deploy.lambda_s, radio.alpha_a, 2.0, R, "SBS (cached band)");
  check_window((1.0 - q) * deploy.lambda_s, radio.alpha_a, 2.0, R, "SBS (backhauled band)");

  const double band_a = radio.access_band();
  const double band_b = radio.backhaul_band();
  const double noise_a = sim.include_noise ? noise_power_w(band_a) : 0.0;
  const double noise_b = sim.include_noise ? noise_power_w(band_b) : 0.0;
  const double scale = radio.p_a_w * radio.beta;
  const double half_alpha = 0.5 * radio.alpha_a;
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  const auto draws = run_trials<DualRates>(sim.trials, sim.workers, [&](std::int64_t t) {
    StreamRng rng(sim.seed, static_cast<std::uint64_t>(t), StreamRole::Delay);
    std::poisson_distribution<std::int64_t> count(deploy.lambda_s * kPi * R * R);
    const std::int64_t cnt = count(rng);
    if (cnt == 0) return DualRates{kNaN, kNaN};  // no server: counted as rejected
    thread_local std::vector<double> r2;
    r2.resize(static_cast<std::size_t>(cnt));
    std::size_t serving = 0;
    for (std::size_t i = 0; i < r2.size(); ++i) {
      r2[i] = uniform_disc_r2(R, rng);
      if (r2[i] < r2[serving]) serving = i;
    }
    std::exponential_distribution<double> fade(1.0);
    const double own = std::pow(r2[serving], -half_alpha);
    const double s_a = fade(rng) * own;
    const double s_b = fade(rng) * own;
    double i_a = 0.0;
    double i_b = 0.0;
    for (std::size_t i = 0; i < r2.size(); ++i) {
      if (i == serving) continue;
      const bool cached_band = rng.uniform() < q;
      const double p = fade(rng) * std::pow(r2[i], -half_alpha);
      (cached_band ? i_a : i_b) += p;
    }
    i_a += tail_mean(q * deploy.lambda_s, radio.alpha_a, R);
    i_b += tail_mean((1.0 - q) * deploy.lambda_s, radio.alpha_a, R);
    const double sinr_a = scale * s_a / (scale * i_a + noise_a);
    const double sinr_b = scale * s_b / (scale * i_b + noise_b);
    return DualRates{band_a * std::log2(1.0 + sinr_a), band_b * std::log2(1.0 + sinr_b)};
  });

  std::vector<double> ra(draws.size());
  std::vector<double> rb(draws.size());
  for (std::size_t i = 0; i < draws.size(); ++i) {
    ra[i] = draws[i].cached;
    rb[i] = draws[i].backhauled;
  }

  DelaySimEstimate out;
  out.rate_cached = summarize(ra);
  out.rate_backhauled = summarize(rb);
  const Moments ma = moments(ra);
  const Moments mb = moments(rb);

  // Renormalized load weights over 1..k; only E[k] enters because
  // E[R | k] = E[R | 1]/k under equal time sharing.
  const double ratio = deploy.load_ratio();
  double norm = 0.0;
  double mean_k = 0.0;
  for (std::int64_t j = 1; j <= k; ++j) {
    const double w = load_pmf(ratio, j, deploy.gamma_load);
    norm += w;
    mean_k += w * static_cast<double>(j);
  }
  mean_k /= norm;
  const double Q = spec.content_bits;

  double var_bh = 0.0;
  double g_bh = 0.0;
  if (q < 1.0) {
    DeploymentConfig mbs = deploy;
    mbs.antennas = n;
    out.backhaul_rate = backhaul ? *backhaul : simulate_backhaul_rate(radio, mbs, s_o, sim);
    out.t1 = Q / out.backhaul_rate.mean;
    var_bh = std::pow(out.backhaul_rate.ci_half_width_95 / kZ95, 2);
    g_bh = Q / (out.backhaul_rate.mean * out.backhaul_rate.mean);
  } else {
    out.t1 = kNaN;
  }

  const double g_a = Q * mean_k / (ma.mean * ma.mean);
  const double g_b = Q * mean_k / (mb.mean * mb.mean);
  const double d_a = Q * mean_k / ma.mean;
  const double d_b = out.t1 + Q * mean_k / mb.mean;
  const double var_a = g_a * g_a * ma.var_of_mean;
  const double var_b = g_b * g_b * mb.var_of_mean + g_bh * g_bh * var_bh;
  const double cov = covariance_of_means(ra, rb, ma.mean, mb.mean);

  out.delay_cached = {q > 0.0 ? d_a : kNaN, kZ95 * std::sqrt(var_a), ma.n, out.rate_cached.rejected};
  out.delay_backhauled = {q < 1.0 ? d_b : kNaN, kZ95 * std::sqrt(var_b), mb.n,
                          out.rate_backhauled.rejected};
  double delay = 0.0;
  double var = 0.0;
  if (q > 0.0) {
    delay += q * d_a;
    var += q * q * var_a;
  }
  if (q < 1.0) {
    delay += (1.0 - q) * d_b;
    var += (1.0 - q) * (1.0 - q) * var_b;
  }
  if (q > 0.0 && q < 1.0) var += 2.0 * q * (1.0 - q) * g_a * g_b * cov;
  out.delay = {delay, kZ95 * std::sqrt(std::max(var, 0.0)), ma.n, out.rate_cached.rejected};
  return out;
}

}  // namespace hetcache
