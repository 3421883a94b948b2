#pragma once

#include <cstdint>

namespace hetcache {

struct Tolerance {
  double rel_tol = 1e-12;
  int max_terms = 10'000;

  void validate() const;
};

/// 2F1(1, b; b + 1; z) for 0 < b < 1 and z <= 0.
///
/// For -2 <= z <= 0 the Pfaff transform w = z / (z - 1) keeps the series
/// argument in [0, 2/3]. Below that the series around z = infinity is used:
///   b*pi*x^-b / sin(pi*b) - (b/x) * sum_n (-1/x)^n / (n + 1 - b),  x = -z.
double hyp2f1_unit(double b, double z, const Tolerance& tol = {});

/// 2F1(1, 1 - 2/alpha; 2 - 2/alpha; z), the interference factor of an
/// interference-limited Rayleigh link with pathloss exponent alpha > 2.
double hyp2f1_access(double alpha, double z, const Tolerance& tol = {});

/// Exponential integral Ei(x) = -int_{-x}^inf e^-t / t dt for 0 < |x| <= 40.
double exp_integral_ei(double x, const Tolerance& tol = {});

/// (Gamma(n + 3/2) / Gamma(n + 1))^2, the squared mean amplitude of a
/// Gamma(n + 1, 1) channel gain. Evaluated through log-gamma differences.
double array_gain_sq(std::int64_t n_eff);

}  // namespace hetcache
