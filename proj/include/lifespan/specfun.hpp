#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace lifespan {

// Tolerances for adaptive quadrature. Defaults are tight because moment
// integrals feed Q(sqrt(N)*(1-beta-mu)/sigma), which amplifies mu errors by
// sqrt(N)/sigma at large node counts.
struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
};

// Thrown when the subdivision budget runs out before the tolerance is met.
// Carries the best estimate so callers can decide whether it is usable.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

// P(a,x) = gamma(a,x)/Gamma(a), the regularized lower incomplete gamma
// function (equivalently the CDF of a unit-rate gamma variate with shape a).
// Computed in log space; stable for shapes up to at least 1e5.
// Requires a > 0 and x >= 0.
double regularized_lower_gamma(double a, double x);

// Q(x) = P(Z >= x) for standard normal Z. Underflows to 0 for x beyond ~39.
double gaussian_ccdf(double x);

// Inverse of gaussian_ccdf on (0,1). Bisection plus Newton polish.
double inverse_gaussian_ccdf(double p);

// Globally adaptive Gauss-Kronrod 7/15 quadrature over [lo, hi]. The nodes
// are open (endpoints are never evaluated), so integrable endpoint
// singularities are handled by subdivision alone.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec = {});

// log P(X = j) for X ~ Binomial(n, q), via log-gamma; exact -inf for
// impossible outcomes at q in {0, 1}. Safe for n ~ 1e4 and beyond.
double binomial_log_pmf(long n, long j, double q);

}  // namespace lifespan
