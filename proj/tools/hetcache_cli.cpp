// hetcache: reproduce the delivery/latency analysis and its Monte Carlo
// cross-checks as CSV tables.
//
//   hetcache <command> [--config FILE] [--out FILE] [--seed N] [--trials N]
//                      [--workers N] [--no-sim]
//
// Exit status: 0 ok, 2 configuration/validation error, 3 infeasible
// operating point, 1 anything else.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hetcache/config.hpp"
#include "hetcache/errors.hpp"
#include "hetcache/experiment.hpp"

namespace {

std::string command_list() {
  std::string s;
  for (const auto& c : hetcache::command_names()) s += (s.empty() ? "" : ", ") + c;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cache-enabled HetNet with massive-MIMO self-backhaul: analysis and simulation"};
  std::string command;
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  int workers = 0;
  bool no_sim = false;
  app.add_option("command", command, "One of: " + command_list())->required();
  app.add_option("--config", config_path, "Configuration file (key = value)");
  auto* out_opt = app.add_option("--out", out_path, "Output CSV (default: stdout)");
  auto* seed_opt = app.add_option("--seed", seed, "Simulation seed (enables simulation)");
  auto* trials_opt =
      app.add_option("--trials", trials, "Monte Carlo trials (enables simulation)")->check(CLI::PositiveNumber);
  auto* workers_opt =
      app.add_option("--workers", workers, "Simulation threads (results do not depend on it)")
          ->check(CLI::PositiveNumber);
  app.add_flag("--no-sim", no_sim, "Analytic columns only");
  CLI11_PARSE(app, argc, argv);

  try {
    hetcache::command_columns(command);  // reject unknown commands before any work
    const hetcache::ExperimentConfig cfg =
        config_path.empty() ? hetcache::parse_config("", "<defaults>") : hetcache::load_config(config_path);
    hetcache::RunOptions opts;
    if (seed_opt->count()) opts.seed = seed;
    if (trials_opt->count()) opts.trials = trials;
    if (workers_opt->count()) opts.workers = workers;
    opts.no_sim = no_sim;

    const std::string csv = hetcache::to_csv(hetcache::run(command, cfg, opts));
    if (out_opt->count()) {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
      out << csv;
      out.close();
      if (!out) throw std::runtime_error("failed writing '" + out_path + "'");
    } else {
      std::cout << csv;
    }
    return 0;
  } catch (const hetcache::UnknownCommand& e) {
    std::cerr << "error: " << e.what() << " (expected one of: " << command_list() << ")\n";
    return 2;
  } catch (const hetcache::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const hetcache::UnknownKeyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hetcache::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const hetcache::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const hetcache::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
