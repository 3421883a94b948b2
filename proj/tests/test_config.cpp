#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "doctest.h"
#include "hetcache/config.hpp"
#include "hetcache/experiment.hpp"

using namespace hetcache;

TEST_CASE("empty configuration gives the defaults") {
  const ExperimentConfig c = parse_config("");
  CHECK(c.radio.alpha_a == 3.0);
  CHECK(c.radio.alpha_b == 2.6);
  CHECK(c.radio.p_a_w == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.radio.p_b_w == doctest::Approx(39.810717055).epsilon(1e-10));
  CHECK(c.radio.carrier_hz == 3.5e9);
  CHECK(c.radio.bandwidth_hz == 100e6);
  CHECK(c.radio.eta == 0.5);
  CHECK(c.radio.r_b == 5.0);
  CHECK(c.content.library_size == 100000);
  CHECK(c.content.zipf_exponent == 0.7);
  CHECK(c.content.cache_size == 3000);
  CHECK(c.deploy.lambda_u == 3e-4);
  CHECK(c.deploy.lambda_s == 1e-4);
  CHECK(c.deploy.lambda_m == 1e-5);
  CHECK(c.deploy.antennas == 128);
  CHECK(c.delivery.content_bits == 1e6);
  CHECK_FALSE(c.sim.has_value());
  CHECK_FALSE(c.sweep.has_value());
  const double b = std::pow(3e8 / (4 * M_PI * 3.5e9), 2);
  CHECK(c.radio.beta == doctest::Approx(b).epsilon(1e-14));
  CHECK(c.radio.beta == doctest::Approx(4.65e-5).epsilon(2e-3));
}

TEST_CASE("values, comments and derived quantities") {
  const ExperimentConfig c = parse_config(
      "# comment\n"
      "radio.carrier_hz = 28e9   # mmWave\n"
      "radio.p_b_dbm = 40\n"
      "\n"
      "  deploy.antennas=64\n"
      "experiment.loads = 1, 3,5\n"
      "sim.trials = 500\n");
  CHECK(c.radio.beta == doctest::Approx(std::pow(3e8 / (4 * M_PI * 28e9), 2)).epsilon(1e-14));
  CHECK(c.radio.p_b_w == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(c.deploy.antennas == 64);
  CHECK(c.experiment.loads == std::vector<std::int64_t>{1, 3, 5});
  REQUIRE(c.sim.has_value());
  CHECK(c.sim->trials == 500);
  CHECK(c.sim->seed == 1);
}

TEST_CASE("validation errors name the field and constraint") {
  try {
    parse_config("radio.eta = 1.5\n");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("eta") != std::string::npos);
    CHECK(msg.find("(0,1)") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("radio.alpha_a = 2\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("deploy.antennas = 12.5\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("content.cache_size = 200000\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("delivery.scd_threshold = abc\n"), ValidationError);
}

TEST_CASE("unknown keys and syntax errors") {
  try {
    parse_config("radio.eta = 0.4\nradio.etta = 0.4\n");
    FAIL("expected an unknown-key error");
  } catch (const UnknownKeyError& e) {
    CHECK(e.key == "radio.etta");
    CHECK(e.line == 2);
  }
  try {
    parse_config("radio.eta = 0.4\n\n   radio.alpha_a 3\n", "x.cfg");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.column == 4);
    CHECK(std::string(e.what()).rfind("x.cfg:3:4", 0) == 0);
  }
  try {
    parse_config("radio.al-pha = 3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.column == 9);
  }
  CHECK_THROWS_AS(parse_config("radio.eta = 0.4\nradio.eta = 0.3\n"), ParseError);
}

TEST_CASE("explicit placement") {
  ExperimentConfig c = parse_config(
      "content.library_size = 4\ncontent.cache_size = 2\ncontent.placement = explicit\n"
      "content.placement_q = 0.5,0.5,0.5,0.5\n");
  CHECK(c.content.placement == Placement::Explicit);
  CHECK(c.content.placement_q.size() == 4);
  CHECK_THROWS_AS(parse_config("content.library_size = 4\ncontent.cache_size = 1\n"
                               "content.placement = explicit\ncontent.placement_q = 0.5,0.5,0.5,0.5\n"),
                  ValidationError);
  const auto dir = std::filesystem::temp_directory_path() / "hetcache_cfg_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "q.txt") << "1 0.5\n0.5 0\n";
  std::ofstream(dir / "c.cfg") << "content.library_size = 4\ncontent.cache_size = 2\n"
                                  "content.placement = explicit\ncontent.placement_q_file = q.txt\n";
  c = load_config((dir / "c.cfg").string());
  CHECK(c.content.placement_q == std::vector<double>{1.0, 0.5, 0.5, 0.0});
  CHECK_THROWS_AS(load_config((dir / "missing.cfg").string()), ValidationError);
}

TEST_CASE("sweeps rebuild the configuration per value") {
  const ExperimentConfig c =
      parse_config("sweep.parameter = radio.eta\nsweep.values = 0.3, 0.6\nradio.alpha_a = 3.5\n");
  REQUIRE(c.sweep.has_value());
  CHECK(c.sweep->values == std::vector<std::string>{"0.3", "0.6"});
  const ExperimentConfig p = with_override(c, "radio.eta", "0.6");
  CHECK(p.radio.eta == 0.6);
  CHECK(p.radio.alpha_a == 3.5);
  CHECK_FALSE(p.sweep.has_value());
  CHECK_THROWS_AS(with_override(c, "radio.eta", "2"), ValidationError);
  CHECK_THROWS_AS(parse_config("sweep.parameter = radio.nope\nsweep.values = 1\n"), ValidationError);

  const Table t = run("kmax", c);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][0] == "0.3");
  CHECK(t.rows[1][0] == "0.6");
}

TEST_CASE("CSV formatting") {
  CHECK(format_real(6.0) == "6");
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(std::numeric_limits<double>::quiet_NaN()).empty());
  Table t{{"a", "b"}, {{"1", "x,y"}, {"2", "say \"hi\""}}};
  CHECK(to_csv(t) == "a,b\n1,\"x,y\"\n2,\"say \"\"hi\"\"\"\n");
}

TEST_CASE("commands: schema, errors and analytic-only mode") {
  const ExperimentConfig c = parse_config("");
  for (const auto& cmd : command_names()) {
    CHECK_FALSE(command_columns(cmd).empty());
  }
  CHECK_THROWS_AS(run("fig7", c), UnknownCommand);
  CHECK_THROWS_AS(command_columns("fig7"), UnknownCommand);

  const ExperimentConfig swept = parse_config("sweep.parameter = radio.eta\nsweep.values = 0.4\n");
  CHECK_THROWS_AS(run("fig4", swept), ValidationError);

  const Table f4 = run("fig4", c);
  CHECK(f4.header == command_columns("fig4"));
  REQUIRE(f4.rows.size() == 10);
  const auto& h = f4.header;
  const auto col = [&](const std::string& n) {
    return static_cast<std::size_t>(std::find(h.begin(), h.end(), n) - h.begin());
  };
  bool saw_six = false;
  for (const auto& row : f4.rows) {
    if (row[col("rho")] == "0.1") {
      CHECK(row[col("ratio")] == "6");
      saw_six = true;
    } else {
      CHECK(std::stod(row[col("ratio")]) < 6.0);
    }
  }
  CHECK(saw_six);

  const Table f2 = run("fig2", c);
  CHECK(f2.rows.size() == 8);
  const auto sim_col = static_cast<std::size_t>(
      std::find(f2.header.begin(), f2.header.end(), "ccdf_sim") - f2.header.begin());
  for (const auto& row : f2.rows) {
    CHECK(row[sim_col].empty());
    CHECK(row.back().empty());
    CHECK_FALSE(row[2].empty());
  }
  CHECK_FALSE(effective_sim(c, {}).has_value());
  RunOptions seeded;
  seeded.seed = 3;
  CHECK(effective_sim(c, seeded).has_value());
  const ExperimentConfig with_sim = parse_config("sim.trials = 10\n");
  RunOptions off;
  off.no_sim = true;
  CHECK_FALSE(effective_sim(with_sim, off).has_value());
}

TEST_CASE("simulated output is reproducible") {
  const ExperimentConfig c = parse_config("sim.trials = 400\nsim.seed = 12\nexperiment.loads = 1,4\n");
  const std::string a = to_csv(run("fig2", c));
  RunOptions four;
  four.workers = 4;
  CHECK(a == to_csv(run("fig2", c)));
  CHECK(a == to_csv(run("fig2", c, four)));
  RunOptions other;
  other.seed = 99;
  CHECK(a != to_csv(run("fig2", c, other)));
}
