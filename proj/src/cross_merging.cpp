#include "evalues/cross_merging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "evalues/e_merging.hpp"
#include "evalues/p_merging.hpp"

namespace evalues {

double e_to_p_merge(std::span<const double> e) {
  if (e.empty()) throw std::invalid_argument("e_to_p_merge: empty input");
  require_evector(e);
  // min(1, K / sum e) computed literally as the composition of averaging and
  // the e-to-p calibrator, which it equals by construction; a zero sum caps
  // at 1 and any +inf input gives 0
  return e_to_p(arithmetic_mean(e));
}

double p_to_e_merge(double kappa, std::span<const double> p) {
  if (p.empty()) throw std::invalid_argument("p_to_e_merge: empty input");
  require_pvector(p);
  if (!(kappa > 0.0 && kappa < 1.0))
    throw std::invalid_argument("p_to_e_merge: kappa must lie in (0, 1)");
  double sum = 0.0;
  for (double x : p) {
    double v = calibrate_power(x, kappa);
    if (std::isinf(v)) return kInf;
    sum += v;
  }
  return sum / static_cast<double>(p.size());
}

double p_to_e_mixture(std::span<const double> weights,
                      std::span<const CalibratorSpec> calibrators,
                      std::span<const double> p) {
  size_t K = p.size();
  if (K == 0) throw std::invalid_argument("p_to_e_mixture: empty input");
  if (weights.size() != K || calibrators.size() != K)
    throw std::invalid_argument("p_to_e_mixture: need one weight and one calibrator per p-value");
  require_pvector(p);
  double wsum = 0.0;
  for (double w : weights) {
    if (std::isnan(w) || w < 0.0)
      throw std::invalid_argument("p_to_e_mixture: weights must be nonnegative");
    wsum += w;
  }
  if (std::fabs(wsum - 1.0) > 1e-9)
    throw std::invalid_argument("p_to_e_mixture: weights must sum to 1");
  double out = 0.0;
  for (size_t k = 0; k < K; ++k) {
    if (weights[k] == 0.0) continue;
    double v = make_calibrator(calibrators[k])(p[k]);
    if (std::isinf(v)) return kInf;
    out += weights[k] * v;
  }
  return out;
}

double ville_se_to_p(std::span<const double> e) {
  if (e.empty()) throw std::invalid_argument("ville_se_to_p: empty input");
  require_evector(e);
  double log_prefix = 0.0;  // empty prefix has product 1
  double log_max = 0.0;
  bool seen_inf = false;
  for (double x : e) {
    if (std::isinf(x)) seen_inf = true;  // an infinite prefix stays infinite
    if (seen_inf) return 0.0;
    if (x == 0.0) {
      log_prefix = -kInf;
      continue;
    }
    log_prefix += std::log(x);
    log_max = std::max(log_max, log_prefix);
  }
  return std::exp(-log_max);
}

}  // namespace evalues
