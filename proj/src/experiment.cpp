#include "hetcache/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>

#include "hetcache/backhaul_analysis.hpp"
#include "hetcache/delivery_analysis.hpp"
#include "hetcache/errors.hpp"
#include "hetcache/load_analysis.hpp"
#include "hetcache/monte_carlo.hpp"

namespace hetcache {

UnknownCommand::UnknownCommand(const std::string& name)
    : std::runtime_error("unknown command '" + name + "'") {}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Row = std::vector<std::string>;

std::string fmt(double v) { return format_real(v); }
std::string fmt(std::int64_t v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }
std::string fmt(const char* v) { return v; }
std::string fmt(const std::string& v) { return v; }

template <class... T>
Row row(const T&... cells) {
  return Row{fmt(cells)...};
}

const std::map<std::string, std::vector<std::string>>& schemas() {
  static const std::map<std::string, std::vector<std::string>> s = {
      {"fig2", {"k", "rate_threshold_bps", "ccdf_analytic", "ccdf_sim", "sim_ci"}},
      {"fig3", {"epsilon", "cache_size", "q_hit", "kmax_a", "scd_cached"}},
      {"fig4", {"lambda_u", "rho", "kmax", "ratio", "lambda_s_min"}},
      {"fig5", {"n", "s_o", "rate_exact_bps", "rate_lower_bps", "rate_sim_bps", "sim_ci"}},
      {"fig6",
       {"cache_size", "q_hit", "t1_s", "delay_cached_s", "delay_backhauled_s", "delay_total_s",
        "delay_sim_s", "sim_ci", "delay_cached_sim_s", "delay_backhauled_sim_s"}},
      {"kmax", {"sweep_value", "q_hit", "t1_s", "kmax_a", "kmax_b"}},
      {"scd",
       {"sweep_value", "q_hit", "t1_s", "kmax_a", "kmax_b", "psi_a", "psi_b", "psi_total",
        "psi_total_piecewise", "regime"}},
      {"densities",
       {"sweep_value", "q_hit", "kmax_a", "ratio_s", "lambda_s_min", "s_max", "omega_b",
        "lambda_m_min"}},
      {"backhaul-rate",
       {"sweep_value", "n", "s_o", "rate_exact_bps", "rate_lower_bps", "t1_s", "delta1_bar",
        "delta2_bar", "asymptotic_valid", "rate_sim_bps", "sim_ci"}},
      {"delay",
       {"sweep_value", "q_hit", "t1_s", "kmax_used", "delay_cached_s", "delay_backhauled_s",
        "delay_total_s", "eta_o", "theta", "n_parity", "delay_sim_s", "sim_ci"}},
      {"hit-bounds", {"sweep_value", "t1_s", "hit_upper", "hit_lower"}},
      {"regime",
       {"sweep_value", "q_hit", "t1_s", "regime", "l_lower", "l_upper", "interval_empty",
        "psi_approx"}},
      {"load-pmf", {"sweep_value", "ratio", "k", "pmf_analytic", "pmf_sim"}},
  };
  return s;
}

bool is_figure(const std::string& command) { return command.rfind("fig", 0) == 0; }

double resolve_t1(const ExperimentConfig& cfg) {
  if (cfg.experiment.t1_s) return *cfg.experiment.t1_s;
  const auto s_o = cfg.experiment.s_o;
  const double rate = cfg.experiment.t1_from_lower_bound
                          ? backhaul_rate_lower(cfg.radio, cfg.deploy, s_o).rate_bps
                          : backhaul_rate_exact(cfg.radio, cfg.deploy, s_o);
  return backhaul_time(cfg.delivery.content_bits, rate);
}

ContentConfig with_cache(const ContentConfig& c, std::int64_t L) {
  ContentConfig out = c;
  out.placement = Placement::MostPopular;
  out.placement_q.clear();
  out.cache_size = L;
  return out;
}

// ---- figure commands --------------------------------------------------------

void fig2(const ExperimentConfig& cfg, const std::optional<SimulationSpec>& sim, Table& t) {
  const auto& e = cfg.experiment;
  std::vector<double> thresholds = e.rate_thresholds_bps;
  if (thresholds.empty()) thresholds.push_back(cfg.delivery.content_bits / cfg.delivery.deadline_s);
  const double q = hit_probability(cfg.content);
  const double band = cfg.radio.access_band();
  std::vector<double> sinr;
  if (sim) sinr = simulate_access_sinr(cfg.radio, cfg.deploy, q, band, *sim);
  for (auto k : e.loads) {
    for (double thr : thresholds) {
      const double analytic =
          access_success_probability(static_cast<double>(k) * thr / band, q, cfg.radio.alpha_a).value;
      SimEstimate est{kNaN, kNaN, 0, 0};
      if (sim) est = ccdf_from_sinr(sinr, band, k, thr);
      t.rows.push_back(row(k, thr, analytic, est.mean, est.ci_half_width_95));
    }
  }
}

void fig3(const ExperimentConfig& cfg, Table& t) {
  const double bracket = 10.0 * cfg.deploy.load_ratio();
  for (double eps : cfg.experiment.epsilons) {
    DeliverySpec spec = cfg.delivery;
    spec.scd_threshold = eps;
    spec.validate();
    for (auto L : cfg.experiment.cache_sizes) {
      const double q = hit_probability(with_cache(cfg.content, L));
      t.rows.push_back(row(eps, L, q, kmax_cached(q, spec, cfg.radio, bracket),
                           scd_cached(q, cfg.deploy, spec, cfg.radio)));
    }
  }
}

void fig4(const ExperimentConfig& cfg, Table& t) {
  for (double rho : cfg.experiment.rho_values) {
    for (double lu : cfg.experiment.lambda_u_values) {
      const MinDensity m = min_sbs_density(lu, cfg.experiment.kmax, rho, cfg.deploy.gamma_load);
      t.rows.push_back(row(lu, rho, cfg.experiment.kmax, m.ratio, m.density));
    }
  }
}

void fig5(const ExperimentConfig& cfg, const std::optional<SimulationSpec>& sim, Table& t) {
  for (auto n : cfg.experiment.antenna_values) {
    DeploymentConfig d = cfg.deploy;
    d.antennas = n;
    for (auto s : cfg.experiment.s_o_values) {
      const double exact = backhaul_rate_exact(cfg.radio, d, s);
      const double lower = backhaul_rate_lower(cfg.radio, d, s).rate_bps;
      SimEstimate est{kNaN, kNaN, 0, 0};
      if (sim) est = simulate_backhaul_rate(cfg.radio, d, s, *sim);
      t.rows.push_back(row(n, s, exact, lower, est.mean, est.ci_half_width_95));
    }
  }
}

void fig6(const ExperimentConfig& cfg, const std::optional<SimulationSpec>& sim, Table& t) {
  const double t1 = resolve_t1(cfg);
  const auto& e = cfg.experiment;
  std::optional<SimEstimate> backhaul;
  if (sim) backhaul = simulate_backhaul_rate(cfg.radio, cfg.deploy, e.s_o, *sim);
  for (auto L : e.cache_sizes) {
    const ContentConfig content = with_cache(cfg.content, L);
    const DelayReport d = avg_delay(cfg.deploy, cfg.radio, cfg.delivery, content, e.kmax_used, t1);
    DelaySimEstimate s;
    s.delay = s.delay_cached = s.delay_backhauled = {kNaN, kNaN, 0, 0};
    if (sim) {
      s = simulate_delay(cfg.radio, cfg.deploy, content, cfg.delivery, e.kmax_used, e.s_o,
                         cfg.deploy.antennas, *sim, backhaul);
    }
    t.rows.push_back(row(L, d.q_hit, t1, d.delay_cached, d.delay_backhauled, d.delay, s.delay.mean,
                         s.delay.ci_half_width_95, s.delay_cached.mean, s.delay_backhauled.mean));
  }
}

// ---- per-sweep-point commands -------------------------------------------------

using PointFn = std::function<void(const ExperimentConfig&, const std::optional<SimulationSpec>&,
                                   const std::string&, Table&)>;

void kmax_point(const ExperimentConfig& cfg, const std::optional<SimulationSpec>&,
                const std::string& sv, Table& t) {
  const double q = hit_probability(cfg.content);
  const double t1 = resolve_t1(cfg);
  const double bracket = 10.0 * cfg.deploy.load_ratio();
  t.rows.push_back(row(sv, q, t1, kmax_cached(q, cfg.delivery, cfg.radio, bracket),
                       kmax_backhaul(q, t1, cfg.delivery, cfg.radio, bracket)));
}

void scd_point(const ExperimentConfig& cfg, const std::optional<SimulationSpec>&,
               const std::string& sv, Table& t) {
  const double t1 = resolve_t1(cfg);
  const ScdReport r = scd_total(cfg.deploy, cfg.radio, cfg.delivery, cfg.content, t1);
  t.rows.push_back(row(sv, r.q_hit, t1, r.kmax_a, r.kmax_b, r.psi_a, r.psi_b, r.psi_total,
                       r.psi_total_piecewise, regime_name(r.regime)));
}

void densities_point(const ExperimentConfig& cfg, const std::optional<SimulationSpec>&,
                     const std::string& sv, Table& t) {
  const double q = hit_probability(cfg.content);
  const double rho = cfg.delivery.overload_rho;
  const auto kmax_a = kmax_cached(q, cfg.delivery, cfg.radio, 10.0 * cfg.deploy.load_ratio());
  double ratio_s = kNaN;
  double lambda_s_min = kNaN;
  if (kmax_a >= 1 && kmax_a < kUnboundedLoad) {
    const MinDensity m = min_sbs_density(cfg.deploy.lambda_u, kmax_a, rho, cfg.deploy.gamma_load);
    ratio_s = m.ratio;
    lambda_s_min = m.density;
  }
  const auto s_max = max_backhaul_load(cfg.radio, cfg.deploy, cfg.delivery.min_backhaul_rate_bps);
  const MinDensity mb = min_mbs_density(cfg.deploy.lambda_s, q, s_max, rho, cfg.deploy.gamma_load);
  t.rows.push_back(row(sv, q, kmax_a, ratio_s, lambda_s_min, s_max, mb.ratio, mb.density));
}

void backhaul_point(const ExperimentConfig& cfg, const std::optional<SimulationSpec>& sim,
                    const std::string& sv, Table& t) {
  const auto s_o = cfg.experiment.s_o;
  const BackhaulRateReport r = backhaul_report(cfg.radio, cfg.deploy, s_o, cfg.delivery.content_bits);
  SimEstimate est{kNaN, kNaN, 0, 0};
  if (sim) est = simulate_backhaul_rate(cfg.radio, cfg.deploy, s_o, *sim);
  t.rows.push_back(row(sv, r.n, r.s_o, r.rate_exact, r.rate_lower, r.t1, r.delta1_bar,
                       r.delta2_bar, r.asymptotic_valid, est.mean, est.ci_half_width_95));
}

void delay_point(const ExperimentConfig& cfg, const std::optional<SimulationSpec>& sim,
                 const std::string& sv, Table& t) {
  const auto& e = cfg.experiment;
  const double t1 = resolve_t1(cfg);
  const DelayReport d = avg_delay(cfg.deploy, cfg.radio, cfg.delivery, cfg.content, e.kmax_used, t1);
  std::string n_parity;
  if (std::isfinite(d.theta)) {
    n_parity = fmt(min_antennas_for_delay_parity(cfg.radio, cfg.deploy, e.s_o, d.e_ra_per_k.front(),
                                                 d.e_rap_per_k.front(), d.eta_o));
  }
  SimEstimate est{kNaN, kNaN, 0, 0};
  if (sim) {
    est = simulate_delay(cfg.radio, cfg.deploy, cfg.content, cfg.delivery, e.kmax_used, e.s_o,
                         cfg.deploy.antennas, *sim)
              .delay;
  }
  t.rows.push_back(row(sv, d.q_hit, t1, e.kmax_used, d.delay_cached, d.delay_backhauled, d.delay,
                       d.eta_o, d.theta, n_parity, est.mean, est.ci_half_width_95));
}

void hit_bounds_point(const ExperimentConfig& cfg, const std::optional<SimulationSpec>&,
                      const std::string& sv, Table& t) {
  const double t1 = resolve_t1(cfg);
  t.rows.push_back(row(sv, t1, hit_upper_bound(cfg.delivery, cfg.radio),
                       hit_lower_bound(t1, cfg.delivery, cfg.radio)));
}

void regime_point(const ExperimentConfig& cfg, const std::optional<SimulationSpec>&,
                  const std::string& sv, Table& t) {
  const double t1 = resolve_t1(cfg);
  const RegimeReport r = cache_size_regime(cfg.content, cfg.radio, cfg.delivery, t1, cfg.deploy);
  t.rows.push_back(row(sv, hit_probability(cfg.content), t1, regime_name(r.regime), r.l_lower,
                       r.l_upper, r.interval_empty, r.psi_approx));
}

void load_pmf_point(const ExperimentConfig& cfg, const std::optional<SimulationSpec>& sim,
                    const std::string& sv, Table& t) {
  const double ratio = cfg.deploy.load_ratio();
  std::vector<double> empirical;
  if (sim) empirical = simulate_cell_load(cfg.deploy, *sim).pmf;
  for (std::int64_t k = 1; k <= cfg.experiment.load_kmax; ++k) {
    double p_sim = kNaN;
    if (sim) {
      const auto idx = static_cast<std::size_t>(k - 1);
      p_sim = idx < empirical.size() ? empirical[idx] : 0.0;
    }
    t.rows.push_back(row(sv, ratio, k, load_pmf(ratio, k, cfg.deploy.gamma_load), p_sim));
  }
}

const std::map<std::string, PointFn>& point_commands() {
  static const std::map<std::string, PointFn> m = {
      {"kmax", kmax_point},         {"scd", scd_point},
      {"densities", densities_point}, {"backhaul-rate", backhaul_point},
      {"delay", delay_point},       {"hit-bounds", hit_bounds_point},
      {"regime", regime_point},     {"load-pmf", load_pmf_point},
  };
  return m;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "fig2", "fig3",       "fig4",   "fig5",       "fig6",   "kmax",    "scd",
      "densities", "backhaul-rate", "delay", "hit-bounds", "regime", "load-pmf"};
  return names;
}

std::vector<std::string> command_columns(const std::string& command) {
  const auto it = schemas().find(command);
  if (it == schemas().end()) throw UnknownCommand(command);
  return it->second;
}

std::optional<SimulationSpec> effective_sim(const ExperimentConfig& cfg, const RunOptions& opts) {
  if (opts.no_sim) return std::nullopt;
  if (!cfg.sim && !opts.seed && !opts.trials) return std::nullopt;
  SimulationSpec sim = cfg.sim.value_or(SimulationSpec{});
  if (opts.seed) sim.seed = *opts.seed;
  if (opts.trials) sim.trials = *opts.trials;
  if (opts.workers) sim.workers = *opts.workers;
  try {
    sim.validate();
  } catch (const DomainError& e) {
    throw ValidationError("sim", e.what());
  }
  return sim;
}

Table run(const std::string& command, const ExperimentConfig& cfg, const RunOptions& opts) {
  Table t;
  t.header = command_columns(command);
  if (is_figure(command)) {
    if (cfg.sweep) {
      throw ValidationError("sweep.parameter", "figure commands do not take a sweep");
    }
    const auto sim = effective_sim(cfg, opts);
    if (command == "fig2") fig2(cfg, sim, t);
    if (command == "fig3") fig3(cfg, t);
    if (command == "fig4") fig4(cfg, t);
    if (command == "fig5") fig5(cfg, sim, t);
    if (command == "fig6") fig6(cfg, sim, t);
    return t;
  }
  const PointFn& fn = point_commands().at(command);
  if (!cfg.sweep) {
    fn(cfg, effective_sim(cfg, opts), "", t);
    return t;
  }
  for (const auto& value : cfg.sweep->values) {
    const ExperimentConfig point = with_override(cfg, cfg.sweep->parameter, value);
    fn(point, effective_sim(point, opts), value, t);
  }
  return t;
}

std::string format_real(double v) {
  if (std::isnan(v)) return {};
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_csv(const Table& table) {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += field(cells[i]);
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return out;
}

}  // namespace hetcache
