#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace hetcache::detail {

template <class F>
std::int64_t largest_feasible_load(F&& success, double epsilon, double bracket_upper,
                                   double k_saturate) {
  if (success(1.0) < epsilon) return 0;
  double hi = std::max(bracket_upper, 2.0);
  int widen = 0;
  while (success(hi) >= epsilon && widen < 3) {
    hi *= 10.0;
    ++widen;
  }
  if (success(hi) >= epsilon) {
    hi = std::max(hi, k_saturate);
    if (success(hi) >= epsilon) return static_cast<std::int64_t>(std::floor(hi));
  }
  double lo = 1.0;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (success(mid) >= epsilon) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Floor, then repair against round-off so that the bracketing contract
  // success(k) >= eps > success(k + 1) holds exactly on the integers.
  auto k = static_cast<std::int64_t>(std::floor(lo));
  while (success(static_cast<double>(k + 1)) >= epsilon) ++k;
  while (k >= 1 && success(static_cast<double>(k)) < epsilon) --k;
  return k;
}

}  // namespace hetcache::detail
