#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "hetcache/content_model.hpp"
#include "hetcache/errors.hpp"
#include "hetcache/rng.hpp"

using namespace hetcache;

TEST_CASE("zipf small cases") {
  auto u = zipf_popularity(4, 0.0);
  for (double a : *u) CHECK(a == doctest::Approx(0.25).epsilon(1e-15));
  auto h = zipf_popularity(2, 1.0);
  CHECK((*h)[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK((*h)[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(zipf_popularity(0, 0.7), DomainError);
  CHECK_THROWS_AS(zipf_popularity(10, -0.1), DomainError);
}

TEST_CASE("zipf normalization and ordering") {
  for (auto [j, s] : {std::pair{100000L, 0.7}, {1000L, 0.0}, {50000L, 1.2}, {7L, 2.5}}) {
    auto a = zipf_popularity(j, s);
    long double sum = 0.0L;
    for (auto it = a->rbegin(); it != a->rend(); ++it) sum += *it;
    CHECK(std::abs(static_cast<double>(sum) - 1.0) < 1e-12);
    for (std::size_t i = 1; i < a->size(); ++i) {
      if (s > 0.0) {
        REQUIRE((*a)[i] < (*a)[i - 1]);
      } else {
        REQUIRE((*a)[i] == (*a)[i - 1]);
      }
    }
  }
  CHECK(zipf_popularity(100000, 0.7) == zipf_popularity(100000, 0.7));  // memoised
}

TEST_CASE("hit probability") {
  ContentConfig all;
  all.cache_size = all.library_size;
  CHECK(hit_probability(all) == doctest::Approx(1.0).epsilon(1e-12));

  ContentConfig uni;
  uni.library_size = 1000;
  uni.cache_size = 100;
  uni.placement = Placement::Explicit;
  uni.placement_q.assign(1000, 0.1);
  CHECK(hit_probability(uni) == doctest::Approx(0.1).epsilon(1e-12));

  // reverse-order long-double partial sum, computed from scratch
  ContentConfig mpc;  // L = 3000, J = 1e5, 0.7
  long double top = 0.0L, norm = 0.0L;
  for (long j = 100000; j >= 1; --j) {
    const long double w = std::pow(static_cast<long double>(j), -0.7L);
    norm += w;
    if (j <= 3000) top += w;
  }
  const double ref = static_cast<double>(top / norm);
  CHECK(std::abs(hit_probability(mpc) - ref) < 1e-12);

  double prev = 0.0;
  for (std::int64_t l = 0; l <= 100000; l += 5000) {
    mpc.cache_size = l;
    const double q = hit_probability(mpc);
    CHECK(q >= prev);
    CHECK(q <= 1.0);
    prev = q;
  }
}

TEST_CASE("MPC approximation") {
  CHECK(mpc_hit_approx(100000, 100000, 0.7) == doctest::Approx(1.0));
  CHECK(mpc_hit_approx(3000, 100000, 0.7) == doctest::Approx(std::pow(0.03, 0.3)).epsilon(1e-14));
  CHECK(mpc_hit_approx(3000, 100000, 0.7) == doctest::Approx(0.3491).epsilon(1e-3));
  CHECK(mpc_hit_approx(3000, 100000, 0.0) == 0.03);
  CHECK_THROWS_AS(mpc_hit_approx(3000, 100000, 1.0), DomainError);
  // the approximation overstates the exact partial sum at the default point
  ContentConfig mpc;
  CHECK(mpc_hit_approx(3000, 100000, 0.7) > hit_probability(mpc));
}

TEST_CASE("placement vector") {
  ContentConfig c;
  c.library_size = 10;
  c.cache_size = 3;
  auto q = placement_vector(c);
  REQUIRE(q.size() == 10);
  CHECK(q[0] == 1.0);
  CHECK(q[2] == 1.0);
  CHECK(q[3] == 0.0);
}

TEST_CASE("content validation") {
  ContentConfig c;
  c.library_size = 4;
  c.cache_size = 2;
  c.placement = Placement::Explicit;
  c.placement_q = {0.9, 0.9, 0.9, 0.0};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.placement_q = {0.5, 0.5};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.placement_q = {1.5, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.cache_size = 5;
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("cache realizations") {
  StreamRng rng(7, 0, StreamRole::Cache);
  ContentConfig top;
  top.library_size = 10;
  top.cache_size = 3;
  CHECK(sample_cache_realization(top, rng) == std::vector<std::int64_t>{1, 2, 3});

  ContentConfig forced;
  forced.library_size = 6;
  forced.cache_size = 2;
  forced.placement = Placement::Explicit;
  forced.placement_q = {1, 1, 0, 0, 0, 0};
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_cache_realization(forced, rng) == std::vector<std::int64_t>{1, 2});
  }

  ContentConfig half;
  half.library_size = 4;
  half.cache_size = 2;
  half.placement = Placement::Explicit;
  half.placement_q = {0.5, 0.5, 0.5, 0.5};
  std::vector<int> hits(4, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    StreamRng r(11, static_cast<std::uint64_t>(i), StreamRole::Cache);
    auto s = sample_cache_realization(half, r);
    CHECK(s.size() == 2);
    for (auto j : s) ++hits[static_cast<std::size_t>(j - 1)];
  }
  for (int h : hits) CHECK(std::abs(h / double(draws) - 0.5) < 0.01);
}

TEST_CASE("systematic sampling marginals for an uneven vector") {
  const std::vector<double> q{0.9, 0.05, 0.3, 0.75, 0.0, 0.5, 0.5};
  double mass = 0.0;
  for (double v : q) mass += v;
  std::vector<int> hits(q.size(), 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    StreamRng r(3, static_cast<std::uint64_t>(i), StreamRole::Cache);
    auto s = select_cached_contents(q, r.uniform());
    CHECK(static_cast<double>(s.size()) <= std::ceil(mass));
    CHECK(std::set<std::int64_t>(s.begin(), s.end()).size() == s.size());
    for (auto j : s) ++hits[static_cast<std::size_t>(j - 1)];
  }
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double se = std::sqrt(q[j] * (1 - q[j]) / draws);
    CAPTURE(j);
    CHECK(std::abs(hits[j] / double(draws) - q[j]) <= 3.0 * se + 1e-12);
  }
}
