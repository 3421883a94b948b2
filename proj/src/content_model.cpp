#include "hetcache/content_model.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "hetcache/errors.hpp"

namespace hetcache {

namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      c += (sum - t) + x;
    } else {
      c += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + c; }
};

std::mutex memo_mutex;
std::map<std::pair<std::int64_t, double>, std::shared_ptr<const std::vector<double>>> memo;

}  // namespace

void ContentConfig::validate() const {
  if (library_size < 1) throw DomainError("content.library_size must be >= 1");
  if (!(zipf_exponent >= 0.0)) throw DomainError("content.zipf_exponent must be >= 0");
  if (cache_size < 0 || cache_size > library_size) {
    throw DomainError("content.cache_size must satisfy 0 <= L <= J");
  }
  if (placement == Placement::Explicit) {
    if (static_cast<std::int64_t>(placement_q.size()) != library_size) {
      throw DomainError("content.placement_q must have J = " + std::to_string(library_size) +
                        " entries, got " + std::to_string(placement_q.size()));
    }
    CompensatedSum s;
    for (double q : placement_q) {
      if (!(q >= 0.0 && q <= 1.0)) throw DomainError("content.placement_q entries must lie in [0,1]");
      s.add(q);
    }
    if (s.value() > static_cast<double>(cache_size) * (1.0 + 1e-12)) {
      throw DomainError("content.placement_q must sum to at most the cache size L");
    }
  }
}

std::shared_ptr<const std::vector<double>> zipf_popularity(std::int64_t library_size,
                                                           double exponent) {
  if (library_size < 1) throw DomainError("zipf_popularity: J must be >= 1");
  if (!(exponent >= 0.0)) throw DomainError("zipf_popularity: exponent must be >= 0");
  const auto key = std::make_pair(library_size, exponent);
  {
    std::lock_guard lock(memo_mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  auto a = std::make_shared<std::vector<double>>(static_cast<std::size_t>(library_size));
  CompensatedSum norm;
  for (std::int64_t j = 1; j <= library_size; ++j) {
    const double w = std::pow(static_cast<double>(j), -exponent);
    (*a)[static_cast<std::size_t>(j - 1)] = w;
    norm.add(w);
  }
  const double z = norm.value();
  for (double& w : *a) w /= z;
  std::lock_guard lock(memo_mutex);
  return memo.emplace(key, std::move(a)).first->second;
}

double hit_probability(const ContentConfig& cfg) {
  cfg.validate();
  // whole library cached: exactly 1, not 1 - round-off
  if (cfg.placement == Placement::MostPopular && cfg.cache_size == cfg.library_size) return 1.0;
  const auto a = zipf_popularity(cfg.library_size, cfg.zipf_exponent);
  CompensatedSum s;
  if (cfg.placement == Placement::MostPopular) {
    for (std::int64_t j = 0; j < cfg.cache_size; ++j) s.add((*a)[static_cast<std::size_t>(j)]);
  } else {
    for (std::size_t j = 0; j < a->size(); ++j) s.add((*a)[j] * cfg.placement_q[j]);
  }
  return std::min(1.0, std::max(0.0, s.value()));
}

double mpc_hit_approx(std::int64_t cache_size, std::int64_t library_size, double exponent) {
  if (!(cache_size > 0 && cache_size <= library_size)) {
    throw DomainError("mpc_hit_approx: need 0 < L <= J");
  }
  if (!(exponent >= 0.0 && exponent < 1.0)) {
    throw DomainError("mpc_hit_approx: exponent must lie in [0,1)");
  }
  return std::pow(static_cast<double>(cache_size) / static_cast<double>(library_size),
                  1.0 - exponent);
}

std::vector<double> placement_vector(const ContentConfig& cfg) {
  cfg.validate();
  if (cfg.placement == Placement::Explicit) return cfg.placement_q;
  std::vector<double> q(static_cast<std::size_t>(cfg.library_size), 0.0);
  for (std::int64_t j = 0; j < cfg.cache_size; ++j) q[static_cast<std::size_t>(j)] = 1.0;
  return q;
}

std::vector<std::int64_t> select_cached_contents(const std::vector<double>& q, double u) {
  if (!(u >= 0.0 && u < 1.0)) throw DomainError("select_cached_contents: u must lie in [0,1)");
  std::vector<std::int64_t> picked;
  double start = 0.0;
  double next = u;  // next lattice point u + m
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (!(q[j] >= 0.0 && q[j] <= 1.0)) {
      throw DomainError("select_cached_contents: q entries must lie in [0,1]");
    }
    const double end = start + q[j];
    // q_j <= 1 means at most one lattice point in [start, end).
    if (next < end) {
      picked.push_back(static_cast<std::int64_t>(j) + 1);
      next += 1.0;
    }
    start = end;
  }
  return picked;
}

}  // namespace hetcache
