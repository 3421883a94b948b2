#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hetcache/backhaul_analysis.hpp"
#include "hetcache/errors.hpp"
#include "oracles.hpp"

using namespace hetcache;

namespace {

// Rate integral written directly in the serving distance y with the
// truncated-Rayleigh density 2 pi l y exp(-pi l (y^2 - r_b^2)).
double rate_oracle(const RadioConfig& r, const DeploymentConfig& d, std::int64_t s_o) {
  const double m = static_cast<double>(d.antennas - s_o);
  const double g = boost::math::tgamma_ratio(m + 1.5, m + 1.0);
  const double gain = g * g;
  const double pl = std::numbers::pi * d.lambda_m;
  const double band = (1 - r.eta) * r.bandwidth_hz;
  const double noise = std::pow(10.0, (-174.0 + 10 * std::log10(band) - 30.0) / 10.0);
  auto f = [&](double y) {
    const double l = r.beta * std::pow(y, -r.alpha_b);
    const double p = r.p_b_w / s_o;
    const double interf = r.p_b_w * r.beta * 2 * std::numbers::pi * d.lambda_m *
                          std::pow(y, 2 - r.alpha_b) / (r.alpha_b - 2);
    const double sinr = p * l * gain / (p * l * (m + 1 - gain) + interf + noise);
    return std::log2(1 + sinr) * 2 * pl * y * std::exp(-pl * (y * y - r.r_b * r.r_b));
  };
  boost::math::quadrature::exp_sinh<double> es;
  return band * es.integrate([&](double t) { return f(r.r_b + t); }, 1e-13);
}

double expected_log_distance(const RadioConfig& r, const DeploymentConfig& d) {
  const double pl = std::numbers::pi * d.lambda_m;
  boost::math::quadrature::exp_sinh<double> es;
  return es.integrate(
      [&](double t) {
        const double y = r.r_b + t;
        return std::log(y) * 2 * pl * y * std::exp(-pl * (y * y - r.r_b * r.r_b));
      },
      1e-14);
}

}  // namespace

TEST_CASE("exact backhaul rate matches the distance-domain integral") {
  RadioConfig radio;
  DeploymentConfig deploy;
  for (std::int64_t n : {64, 128, 256}) {
    for (std::int64_t s : {5, 10, 15}) {
      deploy.antennas = n;
      CAPTURE(n);
      CAPTURE(s);
      CHECK(backhaul_rate_exact(radio, deploy, s) ==
            doctest::Approx(rate_oracle(radio, deploy, s)).epsilon(1e-8));
    }
  }
  radio.alpha_b = 3.4;
  radio.r_b = 20.0;
  deploy.lambda_m = 4e-5;
  deploy.antennas = 100;
  CHECK(backhaul_rate_exact(radio, deploy, 3) == doctest::Approx(rate_oracle(radio, deploy, 3)).epsilon(1e-8));
}

TEST_CASE("backhaul rates are monotone in S_o and N, and lower <= exact") {
  RadioConfig radio;
  DeploymentConfig deploy;
  const std::vector<std::int64_t> ns{64, 128, 256, 512};
  const std::vector<std::int64_t> ss{1, 5, 10, 15, 20};
  std::vector<std::vector<double>> ex(ns.size()), lo(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    deploy.antennas = ns[i];
    for (auto s : ss) {
      ex[i].push_back(backhaul_rate_exact(radio, deploy, s));
      lo[i].push_back(backhaul_rate_lower(radio, deploy, s).rate_bps);
      CHECK(lo[i].back() <= ex[i].back());
    }
  }
  for (std::size_t i = 0; i < ns.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ss.size(); ++j) {
      CHECK(ex[i][j + 1] < ex[i][j]);
      CHECK(lo[i][j + 1] < lo[i][j]);
    }
  }
  for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
    for (std::size_t j = 0; j < ss.size(); ++j) {
      CHECK(ex[i + 1][j] > ex[i][j]);
      CHECK(lo[i + 1][j] > lo[i][j]);
    }
  }
  deploy.antennas = 128;
  const double e = backhaul_rate_exact(radio, deploy, 10);
  const double l = backhaul_rate_lower(radio, deploy, 10).rate_bps;
  CHECK((e - l) / e <= 0.10);
}

TEST_CASE("rate vanishes with the backhaul band") {
  RadioConfig radio;
  DeploymentConfig deploy;
  double prev = backhaul_rate_exact(radio, deploy, 10);
  for (double eta : {0.9, 0.99, 0.999, 0.99999}) {
    radio.eta = eta;
    const double r = backhaul_rate_exact(radio, deploy, 10);
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev < 1e-4 * 1.5e8);
}

TEST_CASE("quadrature tolerance halving is stable") {
  RadioConfig radio;
  DeploymentConfig deploy;
  QuadratureOptions a;
  a.rel_tol = 1e-6;
  a.abs_tol = 1e-12;
  QuadratureOptions b = a;
  b.rel_tol = 5e-7;
  const double ra = backhaul_rate_exact(radio, deploy, 10, a);
  const double rb = backhaul_rate_exact(radio, deploy, 10, b);
  CHECK(std::abs(ra - rb) / rb < 1e-4);
}

TEST_CASE("mean interference equals the Campbell integral") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> uy(5.0, 2000.0), ul(1e-6, 1e-4), ua(2.2, 4.5);
  boost::math::quadrature::exp_sinh<double> es;
  for (int i = 0; i < 10; ++i) {
    RadioConfig radio;
    DeploymentConfig deploy;
    const double y = uy(gen);
    deploy.lambda_m = ul(gen);
    radio.alpha_b = ua(gen);
    const double camp = deploy.lambda_m * es.integrate(
                                              [&](double t) {
                                                const double r = y + t;
                                                return radio.p_b_w * radio.beta *
                                                       std::pow(r, -radio.alpha_b) * 2 *
                                                       std::numbers::pi * r;
                                              },
                                              1e-14);
    CHECK(std::abs(interference_mean(y, radio, deploy) / camp - 1.0) <= 1e-8);
  }
}

TEST_CASE("Delta1 is -alpha_b E[ln y]") {
  RadioConfig radio;
  DeploymentConfig deploy;
  const double ref = -radio.alpha_b * expected_log_distance(radio, deploy);
  CHECK(std::abs(delta1_bar(radio, deploy) - ref) <= 1e-6);
  radio.r_b = 50.0;
  deploy.lambda_m = 3e-5;
  CHECK(std::abs(delta1_bar(radio, deploy) + radio.alpha_b * expected_log_distance(radio, deploy)) <= 1e-6);
}

TEST_CASE("Delta2 matches direct quadrature and the printed-exponent flag changes it") {
  RadioConfig radio;
  DeploymentConfig deploy;
  const double pl = std::numbers::pi * deploy.lambda_m;
  const double noise = noise_power_w(radio.backhaul_band());
  boost::math::quadrature::exp_sinh<double> es;
  const double ref = es.integrate(
      [&](double t) {
        const double y = radio.r_b + t;
        const double v = radio.p_b_w * radio.beta / 20.0 * std::pow(y, -radio.alpha_b) +
                         interference_mean(y, radio, deploy) + noise;
        return std::log(v) * 2 * pl * y * std::exp(-pl * (y * y - radio.r_b * radio.r_b));
      },
      1e-13);
  CHECK(delta2_bar(radio, deploy, 10) == doctest::Approx(ref).epsilon(1e-9));
  RadioConfig printed = radio;
  printed.printed_delta2_exponent = true;
  CHECK(delta2_bar(printed, deploy, 10) != doctest::Approx(ref).epsilon(1e-3));
}

TEST_CASE("lower bound validity flag and domain") {
  RadioConfig radio;
  DeploymentConfig deploy;
  deploy.antennas = 16;
  CHECK(backhaul_rate_lower(radio, deploy, 8).asymptotic_valid);
  CHECK_FALSE(backhaul_rate_lower(radio, deploy, 9).asymptotic_valid);
  CHECK_THROWS_AS(backhaul_rate_exact(radio, deploy, 16), DomainError);
  CHECK_THROWS_AS(backhaul_rate_exact(radio, deploy, 0), DomainError);
}

TEST_CASE("backhaul time") {
  CHECK(backhaul_time(0.0, 5e7) == 0.0);
  CHECK(backhaul_time(1e9, 1e9) == 1.0);
  CHECK_THROWS_AS(backhaul_time(1e6, 0.0), DomainError);
  RadioConfig radio;
  radio.eta = 0.45;
  DeploymentConfig deploy;
  const auto rep = backhaul_report(radio, deploy, 10, 1e9);
  CHECK(rep.t1 == doctest::Approx(1e9 / rep.rate_exact));
  CHECK(rep.t1 <= 1e9 / rep.rate_lower);
}

TEST_CASE("maximum backhaul load") {
  RadioConfig radio;
  DeploymentConfig deploy;
  CHECK(max_backhaul_load(radio, deploy, 1.0) == deploy.antennas - 1);
  for (double rmin : {5e7, 1.2e8, 2e8}) {
    const auto s = max_backhaul_load(radio, deploy, rmin);
    CAPTURE(rmin);
    CHECK(backhaul_rate_exact(radio, deploy, s) >= rmin);
    CHECK(backhaul_rate_exact(radio, deploy, s + 1) < rmin);
  }
  CHECK_THROWS_AS(max_backhaul_load(radio, deploy, 1e10), InfeasibleError);
  double prev = backhaul_rate_exact(radio, deploy, 1);
  for (std::int64_t s = 2; s <= 64; ++s) {
    const double r = backhaul_rate_exact(radio, deploy, s);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("minimum MBS density") {
  CHECK(min_mbs_density(1e-4, 1.0, 5, 0.1).density == 0.0);
  const auto m = min_mbs_density(1e-4, 0.4, 5, 0.1);
  CHECK(m.ratio == 6.0);
  CHECK(m.density == doctest::Approx(1e-4 * 0.6 / 6.0));
  const auto t = min_mbs_density(1e-4, 0.4, 20, 0.01);
  double worst = 0.0;
  for (std::int64_t k = 21; k <= 520; ++k) worst = std::max(worst, load_pmf(t.ratio, k));
  CHECK(worst <= 0.01 * (1 + 1e-12));
}

TEST_CASE("antennas for delay parity") {
  RadioConfig radio;
  DeploymentConfig deploy;
  const double e_ra = 5e7, e_rap = 8e7, eta_o = 0.5;
  const auto n = min_antennas_for_delay_parity(radio, deploy, 10, e_ra, e_rap, eta_o);
  CHECK(n > 20);
  RadioConfig at = radio;
  at.eta = eta_o;
  const double q = 1e9;
  const double budget = q / e_ra - q / e_rap;
  deploy.antennas = n;
  CHECK(q / backhaul_rate_lower(at, deploy, 10).rate_bps <= budget * (1 + 1e-12));
  deploy.antennas = n - 1;
  CHECK(q / backhaul_rate_lower(at, deploy, 10).rate_bps > budget);

  // vanishing theta: N -> S_o
  CHECK(min_antennas_for_delay_parity(radio, deploy, 10, 1e-3, 8e7, eta_o) == 10);
  std::int64_t prev = 0;
  for (std::int64_t s : {2, 5, 10, 15, 20}) {
    const auto v = min_antennas_for_delay_parity(radio, deploy, s, e_ra, e_rap, eta_o);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(min_antennas_for_delay_parity(radio, deploy, 10, 8e7, 5e7, eta_o), DomainError);
  CHECK(parity_theta(1e8, e_ra, e_rap, eta_o) == doctest::Approx(e_ra * e_rap / 3e7 / 5e7));
}
