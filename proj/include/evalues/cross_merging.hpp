#pragma once

#include <span>
#include <vector>

#include "evalues/calibration.hpp"

namespace evalues {

// Arithmetic mean followed by the e-to-p calibrator:
// min(1, K / (e_1 + ... + e_K)); zero sum gives 1, any +inf input gives 0.
double e_to_p_merge(std::span<const double> e);

// Power calibration followed by the mean: (kappa/K) sum p_k^(kappa-1),
// kappa in (0, 1); any zero entry gives +inf.
double p_to_e_merge(double kappa, std::span<const double> p);

// sum_k weights[k] * f_k(p[k]) for per-coordinate calibrators f_k and simplex
// weights.
double p_to_e_mixture(std::span<const double> weights,
                      std::span<const CalibratorSpec> calibrators,
                      std::span<const double> p);

// Ville-type p-value for sequential e-values in the given order:
// min over k in {0,..,K} of 1/(e_1 ... e_k), capped at 1 by the empty prefix.
double ville_se_to_p(std::span<const double> e);

}  // namespace evalues
