#include "hetcache/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hetcache/errors.hpp"

namespace hetcache {

namespace {

constexpr double kPfaffLimit = 2.0;  // |z| up to which the Pfaff series is used
constexpr double kEiMaxAbs = 40.0;

double pfaff_series(double b, double z, const Tolerance& tol) {
  // 2F1(1,b;b+1;z) = (1-z)^-1 2F1(1,1;b+1;w), w = z/(z-1); terms n!/(b+1)_n w^n
  const double w = z / (z - 1.0);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < tol.max_terms; ++n) {
    term *= (n + 1.0) / (b + 1.0 + n) * w;
    sum += term;
    // term ratio tends to w from below, so the tail is below term * w / (1 - w)
    if (term * w / (1.0 - w) <= 0.5 * tol.rel_tol * sum) return sum / (1.0 - z);
  }
  throw EvaluationError("hyp2f1: Pfaff series did not converge within " +
                        std::to_string(tol.max_terms) + " terms");
}

double large_argument_series(double b, double x, const Tolerance& tol) {
  const double leading = b * std::numbers::pi * std::pow(x, -b) /
                         std::sin(std::numbers::pi * b);
  const double inv = -1.0 / x;
  double power = 1.0;
  double sum = 0.0;
  for (int n = 0; n < tol.max_terms; ++n) {
    const double term = power / (n + 1.0 - b);
    sum += term;
    // alternating with decreasing magnitude: truncation error < next term
    const double result = leading - b / x * sum;
    if (std::abs(power * inv / (n + 2.0 - b)) * b / x <= tol.rel_tol * std::abs(result)) {
      return result;
    }
    power *= inv;
  }
  throw EvaluationError("hyp2f1: large-argument series did not converge within " +
                        std::to_string(tol.max_terms) + " terms");
}

// E1(a) for a > 1 by the modified Lentz continued fraction.
double e1_continued_fraction(double a, const Tolerance& tol) {
  constexpr double tiny = 1e-300;
  double b = a + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < tol.max_terms; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) <= tol.rel_tol * 0.1) return h * std::exp(-a);
  }
  throw EvaluationError("Ei: continued fraction did not converge");
}

double ei_series(double x, const Tolerance& tol) {
  double term = 1.0;
  double sum = 0.0;
  for (int k = 1; k < tol.max_terms; ++k) {
    term *= x / k;
    const double contribution = term / k;
    sum += contribution;
    if (std::abs(contribution) <= 0.01 * tol.rel_tol * std::abs(sum)) {
      return std::numbers::egamma + std::log(std::abs(x)) + sum;
    }
  }
  throw EvaluationError("Ei: power series did not converge");
}

}  // namespace

void Tolerance::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("Tolerance.rel_tol must be > 0");
  if (max_terms < 1) throw DomainError("Tolerance.max_terms must be >= 1");
}

double hyp2f1_unit(double b, double z, const Tolerance& tol) {
  tol.validate();
  if (!(b > 0.0 && b < 1.0)) throw DomainError("hyp2f1_unit: b must lie in (0,1)");
  if (!(z <= 0.0)) throw DomainError("hyp2f1_unit: z must be <= 0");
  if (z == 0.0) return 1.0;
  if (std::isinf(z)) return 0.0;
  const double x = -z;
  if (x <= kPfaffLimit) return pfaff_series(b, z, tol);
  return large_argument_series(b, x, tol);
}

double hyp2f1_access(double alpha, double z, const Tolerance& tol) {
  if (!(alpha > 2.0)) throw DomainError("hyp2f1_access: pathloss exponent must be > 2");
  return hyp2f1_unit(1.0 - 2.0 / alpha, z, tol);
}

double exp_integral_ei(double x, const Tolerance& tol) {
  tol.validate();
  if (x == 0.0 || std::isnan(x)) throw DomainError("Ei: argument must be nonzero");
  if (std::abs(x) > kEiMaxAbs) throw DomainError("Ei: |x| > 40 is outside the supported range");
  if (x < -1.0) return -e1_continued_fraction(-x, tol);
  return ei_series(x, tol);
}

double array_gain_sq(std::int64_t n_eff) {
  if (n_eff < 0) throw DomainError("array_gain_sq: N - S_o must be >= 0");
  const double m = static_cast<double>(n_eff);
  return std::exp(2.0 * (std::lgamma(m + 1.5) - std::lgamma(m + 1.0)));
}

}  // namespace hetcache
