#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetcache/config.hpp"

namespace hetcache {

class UnknownCommand : public std::runtime_error {
 public:
  explicit UnknownCommand(const std::string& name);
};

/// Command-line adjustments applied on top of a loaded configuration.
struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::optional<int> workers;
  bool no_sim = false;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

const std::vector<std::string>& command_names();

/// Column names of a command; fixed per command.
std::vector<std::string> command_columns(const std::string& command);

/// Simulation settings in force after applying `opts`, or nullopt when
/// simulation is disabled.
std::optional<SimulationSpec> effective_sim(const ExperimentConfig& cfg, const RunOptions& opts);

Table run(const std::string& command, const ExperimentConfig& cfg, const RunOptions& opts = {});

/// RFC-4180 CSV with '\n' line ends.
std::string to_csv(const Table& table);

/// %.12g; NaN becomes an empty field.
std::string format_real(double v);

}  // namespace hetcache
