#pragma once

#include <functional>
#include <limits>
#include <stdexcept>

namespace evalues {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Standard normal distribution function Phi, via Cody's rational Chebyshev
// approximation for erf/erfc (Math. Comp. 23, 1969; SPECFUN). Absolute error
// is below 1e-15 over the whole real line; no libm erf dependence, so results
// are bit-stable across platforms.
double std_normal_cdf(double x);

// log(Phi(x)), usable far into the left tail where Phi underflows.
double log_std_normal_cdf(double x);

// Survival function of the chi-square distribution with an even number of
// degrees of freedom: P(X > x) = exp(-x/2) * sum_{j<dof/2} (x/2)^j / j!.
// Rejects odd or nonpositive dof.
double chi2_survival_even(int dof, double x);

// log of the above; accurate in the far tail where the survival underflows.
double chi2_log_survival_even(int dof, double x);

// Lower incomplete gamma function gamma(a, z) = int_0^z t^(a-1) e^(-t) dt.
// Series for z < a+1, continued fraction for the complement otherwise.
// Relative error below 1e-12. Rejects a <= 0 and z < 0.
double lower_incomplete_gamma(double a, double z);

struct QuadratureResult {
  double value = 0.0;  // integral over the resolved part of (0, 1]
  double error = 0.0;  // resolved-part error plus the estimated tail near 0
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integral of a decreasing f : (0,1] -> [0, inf) over the unit interval.
// Gauss-Kronrod panels on dyadic intervals refined toward 0; the contribution
// below the deepest subdivision (~1e-298) is estimated by tail extrapolation
// and reported inside `error`, never added to `value`. Calibrators with
// 1/(p log^2 p)-type tails therefore come back slightly below their true
// integral, with the shortfall visible in the error field. Throws
// QuadratureError when the singularity at 0 looks non-integrable or the
// refinement budget is exhausted.
QuadratureResult integrate_unit_interval(const std::function<double(double)>& f,
                                         double tol);

}  // namespace evalues
