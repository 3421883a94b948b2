#pragma once

#include <functional>

namespace hetcache {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) on a finite interval [a, b].
/// Stops once the summed error estimate is below max(abs_tol, rel_tol*|I|);
/// throws EvaluationError when the interval budget runs out first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

/// Same, on [a, inf) through x = a + t/(1-t).
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       const QuadratureOptions& opts = {});

}  // namespace hetcache
