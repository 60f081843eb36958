#include "evalues/calibration.hpp"

#include <cmath>
#include <stdexcept>

namespace evalues {

namespace {

// floating-point underflow sets in well before the mathematical singularity;
// below this point p is handled as exact zero
constexpr double kZeroClamp = 1e-300;

void require_pvalue(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("p-value must lie in [0, 1]");
}

void require_evalue(double e) {
  if (std::isnan(e) || e < 0.0)
    throw std::invalid_argument("e-value must be nonnegative");
}

}  // namespace

double calibrate_power(double p, double kappa) {
  require_pvalue(p);
  if (!(kappa > 0.0 && kappa < 1.0))
    throw std::invalid_argument("calibrate_power: kappa must lie in (0, 1)");
  if (p < kZeroClamp) return kInf;
  return kappa * std::pow(p, kappa - 1.0);
}

double calibrate_integrated(double p) {
  require_pvalue(p);
  if (p < kZeroClamp) return kInf;
  if (p == 1.0) return 0.5;
  double u = 1.0 - p;
  if (u < 0.25) {
    // 1 - p + p log p = sum_{k>=2} u^k / (k(k-1)); avoids cancellation near 1
    double term = u * u / 2.0;
    double num = term;
    for (int k = 3; k < 60; ++k) {
      term *= u * (k - 2) / k;
      num += term;
      if (term < num * 1e-17) break;
    }
    double lp = std::log1p(-u);
    return num / (p * lp * lp);
  }
  double lp = std::log(p);
  return (1.0 - p + p * lp) / (p * lp * lp);
}

double calibrate_h(double p, double kappa) {
  require_pvalue(p);
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("calibrate_h: kappa must be positive");
  if (p < kZeroClamp) return kInf;
  if (p > std::exp(-1.0 - kappa)) return 0.0;
  double w = -std::log(p);
  return kappa * std::pow(1.0 + kappa, kappa) / (p * std::pow(w, 1.0 + kappa));
}

double calibrate_f_kappa(double p, double kappa) {
  require_pvalue(p);
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("calibrate_f_kappa: kappa must be positive");
  if (p < kZeroClamp) return kInf;
  double a = 1.0 + kappa;
  if (p == 1.0) return kappa / a;
  double w = -std::log(p);
  if (w < a + 1.0) {
    // igamma series with the w^a e^-w prefactor cancelled against p w^a:
    // F = kappa * sum_n w^n / (a (a+1) ... (a+n))
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
      term *= w / (a + n);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return kappa * sum;
  }
  double log_denom = -w + a * std::log(w);
  return kappa * lower_incomplete_gamma(a, w) * std::exp(-log_denom);
}

double vs_bound(double p) {
  require_pvalue(p);
  if (p < kZeroClamp) return kInf;
  if (p > std::exp(-1.0)) return 1.0;
  return -std::exp(-1.0) / (p * std::log(p));
}

double e_to_p(double e) {
  require_evalue(e);
  if (std::isinf(e)) return 0.0;
  if (e <= 1.0) return 1.0;
  return 1.0 / e;
}

std::function<double(double)> make_calibrator(const CalibratorSpec& spec) {
  using Kind = CalibratorSpec::Kind;
  double kappa = spec.kappa;
  switch (spec.kind) {
    case Kind::power_kappa:
      if (!(kappa > 0.0 && kappa < 1.0))
        throw std::invalid_argument("power calibrator: kappa must lie in (0, 1)");
      return [kappa](double p) { return calibrate_power(p, kappa); };
    case Kind::integrated:
      return [](double p) { return calibrate_integrated(p); };
    case Kind::h_kappa:
      if (!(kappa > 0.0))
        throw std::invalid_argument("H calibrator: kappa must be positive");
      return [kappa](double p) { return calibrate_h(p, kappa); };
    case Kind::f_kappa:
      if (!(kappa > 0.0))
        throw std::invalid_argument("F calibrator: kappa must be positive");
      return [kappa](double p) { return calibrate_f_kappa(p, kappa); };
  }
  throw std::invalid_argument("unknown calibrator kind");
}

std::string_view calibrator_name(CalibratorSpec::Kind kind) {
  using Kind = CalibratorSpec::Kind;
  switch (kind) {
    case Kind::power_kappa: return "power";
    case Kind::integrated: return "integrated";
    case Kind::h_kappa: return "h";
    case Kind::f_kappa: return "f";
  }
  return "?";
}

CalibratorCheck check_calibrator(const std::function<double(double)>& f, double tol) {
  QuadratureResult q = integrate_unit_interval(f, tol);
  bool valid = q.value <= 1.0 + tol;
  return {valid, q.value, q.error, std::max(0.0, q.value - 1.0)};
}

JeffreysCategory jeffreys_category(double e) {
  require_evalue(e);
  if (e <= 1.0) return JeffreysCategory::supports_null;
  if (e <= std::sqrt(10.0)) return JeffreysCategory::bare_mention;
  if (e <= 10.0) return JeffreysCategory::substantial;
  if (e <= std::pow(10.0, 1.5)) return JeffreysCategory::strong;
  if (e <= 100.0) return JeffreysCategory::very_strong;
  return JeffreysCategory::decisive;
}

std::string_view jeffreys_label(JeffreysCategory c) {
  switch (c) {
    case JeffreysCategory::supports_null: return "supports-null";
    case JeffreysCategory::bare_mention: return "bare-mention";
    case JeffreysCategory::substantial: return "substantial";
    case JeffreysCategory::strong: return "strong";
    case JeffreysCategory::very_strong: return "very-strong";
    case JeffreysCategory::decisive: return "decisive";
  }
  return "?";
}

}  // namespace evalues
