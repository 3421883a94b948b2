#include "hetcache/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hetcache/errors.hpp"

namespace hetcache {

ParseError::ParseError(const std::string& source, int line_, int column_, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line_) + ":" + std::to_string(column_) +
                         ": " + what),
      line(line_),
      column(column_) {}

ValidationError::ValidationError(std::string field_, const std::string& what)
    : std::runtime_error("invalid " + field_ + ": " + what), field(std::move(field_)) {}

UnknownKeyError::UnknownKeyError(std::string key_, int line_)
    : std::runtime_error("unknown configuration key '" + key_ + "' on line " +
                         std::to_string(line_)),
      key(std::move(key_)),
      line(line_) {}

const std::vector<std::pair<std::string, std::string>>& known_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"radio.p_a_dbm", "30"},
      {"radio.p_b_dbm", "46"},
      {"radio.alpha_a", "3.0"},
      {"radio.alpha_b", "2.6"},
      {"radio.carrier_hz", "3.5e9"},
      {"radio.bandwidth_hz", "100e6"},
      {"radio.eta", "0.5"},
      {"radio.r_b", "5"},
      {"radio.printed_delta2_exponent", "false"},
      {"deploy.lambda_u", "3e-4"},
      {"deploy.lambda_s", "1e-4"},
      {"deploy.lambda_m", "1e-5"},
      {"deploy.antennas", "128"},
      {"deploy.gamma_load", "3.5"},
      {"content.library_size", "100000"},
      {"content.zipf_exponent", "0.7"},
      {"content.cache_size", "3000"},
      {"content.placement", "most_popular"},
      {"content.placement_q", ""},
      {"content.placement_q_file", ""},
      {"delivery.content_bits", "1e6"},
      {"delivery.deadline_s", "1"},
      {"delivery.scd_threshold", "0.8"},
      {"delivery.overload_rho", "0.1"},
      {"delivery.min_backhaul_rate_bps", "50e6"},
      {"sim.trials", "100000"},
      {"sim.seed", "1"},
      {"sim.window_radius_m", "0"},
      {"sim.include_noise", "true"},
      {"sim.workers", "1"},
      {"experiment.loads", "1,2,3,4,5,6,7,8"},
      {"experiment.rate_thresholds_bps", ""},
      {"experiment.epsilons", "0.5,0.6,0.7,0.8,0.9"},
      {"experiment.cache_sizes", "1000,2000,3000,4000,5000,6000,7000,8000,9000"},
      {"experiment.lambda_u_values", "1e-4,2e-4,3e-4,4e-4,5e-4"},
      {"experiment.rho_values", "0.1,0.01"},
      {"experiment.kmax", "5"},
      {"experiment.antenna_values", "64,128,256"},
      {"experiment.s_o_values", "5,10,15"},
      {"experiment.s_o", "10"},
      {"experiment.kmax_used", "5"},
      {"experiment.t1_s", ""},
      {"experiment.t1_from_lower_bound", "false"},
      {"experiment.balance_k", "1"},
      {"experiment.load_kmax", "30"},
      {"sweep.parameter", ""},
      {"sweep.values", ""},
  };
  return keys;
}

namespace {

bool is_known(const std::string& key) {
  const auto& keys = known_keys();
  return std::any_of(keys.begin(), keys.end(), [&](const auto& kv) { return kv.first == key; });
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ValidationError(key, "expected a real number, got '" + text + "'");
  }
  return v;
}

std::int64_t to_int(const std::string& key, const std::string& text) {
  // Accept integral reals such as 1e5.
  const double v = to_real(key, text);
  if (v != std::floor(v) || std::abs(v) > 9.0e15) {
    throw ValidationError(key, "expected an integer, got '" + text + "'");
  }
  return static_cast<std::int64_t>(v);
}

std::uint64_t to_u64(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError(key, "expected an unsigned 64-bit integer, got '" + text + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ValidationError(key, "expected true/false, got '" + text + "'");
}

std::vector<double> to_reals(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(to_real(key, item));
  return out;
}

std::vector<std::int64_t> to_ints(const std::string& key, const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& item : split_list(text)) out.push_back(to_int(key, item));
  return out;
}

std::vector<double> read_q_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("content.placement_q_file", "cannot open '" + path + "'");
  std::vector<double> q;
  std::string tok;
  while (in >> tok) {
    for (const auto& item : split_list(tok)) q.push_back(to_real("content.placement_q_file", item));
  }
  return q;
}

std::map<std::string, ConfigEntry> parse_entries(const std::string& text, const std::string& source) {
  std::map<std::string, ConfigEntry> entries;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    const int first_col = static_cast<int>(line.find_first_not_of(" \t")) + 1;
    if (eq == std::string::npos) {
      throw ParseError(source, line_no, first_col, "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(source, line_no, first_col, "missing key before '='");
    for (std::size_t i = 0; i < key.size(); ++i) {
      const unsigned char c = static_cast<unsigned char>(key[i]);
      if (!(std::isalnum(c) || c == '_' || c == '.')) {
        throw ParseError(source, line_no, static_cast<int>(line.find(key)) + static_cast<int>(i) + 1,
                         std::string("invalid character '") + key[i] + "' in key");
      }
    }
    if (!is_known(key)) throw UnknownKeyError(key, line_no);
    if (entries.count(key)) {
      throw ParseError(source, line_no, first_col, "duplicate key '" + key + "'");
    }
    entries[key] = {trim(line.substr(eq + 1)), line_no};
  }
  return entries;
}

// Look up `key`, falling back to the documented default.
struct Lookup {
  const std::map<std::string, ConfigEntry>& entries;
  std::string get(const std::string& key) const {
    if (auto it = entries.find(key); it != entries.end()) return it->second.value;
    for (const auto& [k, v] : known_keys()) {
      if (k == key) return v;
    }
    return {};
  }
  bool has(const std::string& key) const { return entries.count(key) > 0; }
};

template <class F>
void checked(const std::string& field, F&& f) {
  try {
    f();
  } catch (const DomainError& e) {
    throw ValidationError(field, e.what());
  }
}

ExperimentConfig build(std::map<std::string, ConfigEntry> entries, const std::string& base_dir) {
  ExperimentConfig cfg;
  cfg.base_dir = base_dir;
  const Lookup L{entries};
  auto real = [&](const std::string& k) { return to_real(k, L.get(k)); };
  auto integer = [&](const std::string& k) { return to_int(k, L.get(k)); };

  RadioConfig& r = cfg.radio;
  r.p_a_w = dbm_to_watts(real("radio.p_a_dbm"));
  r.p_b_w = dbm_to_watts(real("radio.p_b_dbm"));
  r.alpha_a = real("radio.alpha_a");
  r.alpha_b = real("radio.alpha_b");
  r.carrier_hz = real("radio.carrier_hz");
  if (!(r.carrier_hz > 0.0)) throw ValidationError("radio.carrier_hz", "must be > 0");
  r.beta = free_space_beta(r.carrier_hz);
  r.bandwidth_hz = real("radio.bandwidth_hz");
  r.eta = real("radio.eta");
  r.r_b = real("radio.r_b");
  r.printed_delta2_exponent = to_bool("radio.printed_delta2_exponent",
                                      L.get("radio.printed_delta2_exponent"));
  checked("radio", [&] { r.validate(); });

  DeploymentConfig& d = cfg.deploy;
  d.lambda_u = real("deploy.lambda_u");
  d.lambda_s = real("deploy.lambda_s");
  d.lambda_m = real("deploy.lambda_m");
  d.antennas = integer("deploy.antennas");
  d.gamma_load = real("deploy.gamma_load");
  checked("deploy", [&] { d.validate(); });

  ContentConfig& c = cfg.content;
  c.library_size = integer("content.library_size");
  c.zipf_exponent = real("content.zipf_exponent");
  c.cache_size = integer("content.cache_size");
  const std::string placement = L.get("content.placement");
  if (placement == "most_popular") {
    c.placement = Placement::MostPopular;
  } else if (placement == "explicit") {
    c.placement = Placement::Explicit;
    if (L.has("content.placement_q") == L.has("content.placement_q_file")) {
      throw ValidationError("content.placement_q",
                            "explicit placement needs exactly one of placement_q / placement_q_file");
    }
    if (L.has("content.placement_q")) {
      c.placement_q = to_reals("content.placement_q", L.get("content.placement_q"));
    } else {
      std::filesystem::path p = L.get("content.placement_q_file");
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      c.placement_q = read_q_file(p.string());
    }
  } else {
    throw ValidationError("content.placement", "expected most_popular or explicit, got '" +
                                                   placement + "'");
  }
  checked("content", [&] { c.validate(); });

  DeliverySpec& s = cfg.delivery;
  s.content_bits = real("delivery.content_bits");
  s.deadline_s = real("delivery.deadline_s");
  s.scd_threshold = real("delivery.scd_threshold");
  s.overload_rho = real("delivery.overload_rho");
  s.min_backhaul_rate_bps = real("delivery.min_backhaul_rate_bps");
  checked("delivery", [&] { s.validate(); });

  const bool any_sim = std::any_of(entries.begin(), entries.end(),
                                   [](const auto& kv) { return kv.first.rfind("sim.", 0) == 0; });
  if (any_sim) {
    SimulationSpec sim;
    sim.trials = integer("sim.trials");
    sim.seed = to_u64("sim.seed", L.get("sim.seed"));
    sim.window_radius_m = real("sim.window_radius_m");
    sim.include_noise = to_bool("sim.include_noise", L.get("sim.include_noise"));
    sim.workers = static_cast<int>(integer("sim.workers"));
    checked("sim", [&] { sim.validate(); });
    cfg.sim = sim;
  }

  ExperimentParams& e = cfg.experiment;
  e.loads = to_ints("experiment.loads", L.get("experiment.loads"));
  e.rate_thresholds_bps = to_reals("experiment.rate_thresholds_bps",
                                   L.get("experiment.rate_thresholds_bps"));
  e.epsilons = to_reals("experiment.epsilons", L.get("experiment.epsilons"));
  e.cache_sizes = to_ints("experiment.cache_sizes", L.get("experiment.cache_sizes"));
  e.lambda_u_values = to_reals("experiment.lambda_u_values", L.get("experiment.lambda_u_values"));
  e.rho_values = to_reals("experiment.rho_values", L.get("experiment.rho_values"));
  e.kmax = integer("experiment.kmax");
  e.antenna_values = to_ints("experiment.antenna_values", L.get("experiment.antenna_values"));
  e.s_o_values = to_ints("experiment.s_o_values", L.get("experiment.s_o_values"));
  e.s_o = integer("experiment.s_o");
  e.kmax_used = integer("experiment.kmax_used");
  if (!L.get("experiment.t1_s").empty()) {
    e.t1_s = real("experiment.t1_s");
    if (!(*e.t1_s >= 0.0)) throw ValidationError("experiment.t1_s", "must be >= 0");
  }
  e.t1_from_lower_bound = to_bool("experiment.t1_from_lower_bound",
                                  L.get("experiment.t1_from_lower_bound"));
  e.balance_k = real("experiment.balance_k");
  e.load_kmax = integer("experiment.load_kmax");
  if (e.kmax < 1) throw ValidationError("experiment.kmax", "must be >= 1");
  if (e.kmax_used < 1) throw ValidationError("experiment.kmax_used", "must be >= 1");
  if (e.s_o < 1) throw ValidationError("experiment.s_o", "must be >= 1");
  if (e.load_kmax < 1) throw ValidationError("experiment.load_kmax", "must be >= 1");
  if (!(e.balance_k >= 1.0)) throw ValidationError("experiment.balance_k", "must be >= 1");

  if (L.has("sweep.parameter") || L.has("sweep.values")) {
    SweepSpec sw;
    sw.parameter = L.get("sweep.parameter");
    sw.values = split_list(L.get("sweep.values"));
    if (!is_known(sw.parameter) || sw.parameter.rfind("sweep.", 0) == 0) {
      throw ValidationError("sweep.parameter", "'" + sw.parameter + "' is not a sweepable key");
    }
    if (sw.values.empty()) throw ValidationError("sweep.values", "must list at least one value");
    cfg.sweep = sw;
  }
  cfg.entries = std::move(entries);
  return cfg;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source,
                              const std::string& base_dir) {
  return build(parse_entries(text, source), base_dir);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("--config", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(buf.str(), path, dir.empty() ? "." : dir.string());
}

ExperimentConfig with_override(const ExperimentConfig& cfg, const std::string& key,
                               const std::string& value) {
  auto entries = cfg.entries;
  entries.erase("sweep.parameter");
  entries.erase("sweep.values");
  const int line = entries.count(key) ? entries[key].line : 0;
  entries[key] = {value, line};
  return build(std::move(entries), cfg.base_dir);
}

}  // namespace hetcache
