#pragma once

#include <functional>
#include <string_view>

#include "evalues/numerics.hpp"

namespace evalues {

using PValue = double;  // in [0, 1]
using EValue = double;  // in [0, inf], +inf allowed

// p-to-e calibrators. Each maps a p-value to an e-value and integrates to at
// most 1 over the unit interval. p below 1e-300 is treated as exact zero
// (returns +inf) so overflow never masquerades as a finite e-value.

// kappa * p^(kappa-1), kappa in (0,1)
double calibrate_power(double p, double kappa);

// (1 - p + p log p) / (p log^2 p), the power family integrated over kappa;
// continuous endpoint values F(0) = inf, F(1) = 1/2
double calibrate_integrated(double p);

// piecewise calibrator with threshold exp(-1-kappa), kappa > 0:
// kappa (1+kappa)^kappa p^-1 (-log p)^(-1-kappa) below the threshold, else 0
double calibrate_h(double p, double kappa);

// kappa * igamma_lower(1+kappa, -log p) / (p (-log p)^(1+kappa)), kappa > 0;
// recovers calibrate_integrated at kappa = 1; endpoint value kappa/(1+kappa)
// at p = 1
double calibrate_f_kappa(double p, double kappa);

// Vovk-Sellke bound max_kappa of the power family. An overoptimistic
// benchmark, NOT a calibrator (its integral diverges); excluded from the
// calibrator registry below.
double vs_bound(double p);

// The only admissible e-to-p calibrator: min(1, 1/e); +inf maps to 0.
double e_to_p(double e);

struct CalibratorSpec {
  enum class Kind { power_kappa, integrated, h_kappa, f_kappa };
  Kind kind;
  double kappa = 1.0;  // ignored for `integrated`

  static CalibratorSpec power(double kappa) { return {Kind::power_kappa, kappa}; }
  static CalibratorSpec integrated() { return {Kind::integrated, 1.0}; }
  static CalibratorSpec h(double kappa) { return {Kind::h_kappa, kappa}; }
  static CalibratorSpec f(double kappa) { return {Kind::f_kappa, kappa}; }
};

// Validates the parameter range and returns the calibrator as a function.
std::function<double(double)> make_calibrator(const CalibratorSpec& spec);
std::string_view calibrator_name(CalibratorSpec::Kind kind);

struct CalibratorCheck {
  bool valid;
  double integral;  // quadrature estimate of int_0^1 f
  double error;     // quadrature error bound, including the tail near 0
  double excess;    // max(0, integral - 1)
};

// A decreasing f is a calibrator iff int_0^1 f <= 1; checked by quadrature
// with tolerance tol. Quadrature non-convergence propagates as
// QuadratureError.
CalibratorCheck check_calibrator(const std::function<double(double)>& f, double tol);

// Jeffreys' evidence categories with cut points 1, sqrt(10), 10, 10^1.5, 100.
enum class JeffreysCategory {
  supports_null,
  bare_mention,
  substantial,
  strong,
  very_strong,
  decisive,
};

JeffreysCategory jeffreys_category(double e);
std::string_view jeffreys_label(JeffreysCategory c);

}  // namespace evalues
