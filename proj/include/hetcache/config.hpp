#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetcache/content_model.hpp"
#include "hetcache/monte_carlo.hpp"
#include "hetcache/network.hpp"

namespace hetcache {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, int column, const std::string& what);
  int line;
  int column;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& what);
  std::string field;
};

class UnknownKeyError : public std::runtime_error {
 public:
  UnknownKeyError(std::string key, int line);
  std::string key;
  int line;
};

/// Grids and operating points used by the experiment commands.
struct ExperimentParams {
  std::vector<std::int64_t> loads{1, 2, 3, 4, 5, 6, 7, 8};  // fig2 curves
  std::vector<double> rate_thresholds_bps;                  // fig2; empty: Q / T_th
  std::vector<double> epsilons{0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<std::int64_t> cache_sizes{1000, 2000, 3000, 4000, 5000, 6000, 7000, 8000, 9000};
  std::vector<double> lambda_u_values{1e-4, 2e-4, 3e-4, 4e-4, 5e-4};
  std::vector<double> rho_values{0.1, 0.01};
  std::int64_t kmax = 5;  // fig4 maximum load
  std::vector<std::int64_t> antenna_values{64, 128, 256};
  std::vector<std::int64_t> s_o_values{5, 10, 15};
  std::int64_t s_o = 10;
  std::int64_t kmax_used = 5;
  std::optional<double> t1_s;  // fixed backhaul time; otherwise Q / backhaul rate
  bool t1_from_lower_bound = false;
  double balance_k = 1.0;
  std::int64_t load_kmax = 30;
};

struct SweepSpec {
  std::string parameter;
  std::vector<std::string> values;
};

struct ConfigEntry {
  std::string value;
  int line = 0;
};

struct ExperimentConfig {
  RadioConfig radio;
  DeploymentConfig deploy;
  ContentConfig content;
  DeliverySpec delivery;
  std::optional<SimulationSpec> sim;  // present when any sim.* key is given
  ExperimentParams experiment;
  std::optional<SweepSpec> sweep;
  std::map<std::string, ConfigEntry> entries;  // raw key/value pairs
  std::string base_dir;                        // for relative file references
};

/// Parses flat `section.key = value` text ('#' starts a comment, lists are
/// comma separated). Omitted keys take the documented defaults.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>",
                              const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

/// Rebuilds the configuration with one key replaced (used by sweeps).
ExperimentConfig with_override(const ExperimentConfig& cfg, const std::string& key,
                               const std::string& value);

/// Every recognised key with its default, in documentation order.
const std::vector<std::pair<std::string, std::string>>& known_keys();

}  // namespace hetcache
