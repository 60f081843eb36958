// Test-local oracles, kept independent of the library code paths they check.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace test_oracle {

// Adaptive Simpson on [a, b]; for smooth integrands only.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double fa, double fm, double fb, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, tol / 2.0, depth - 1) +
         simpson(f, m, b, fm, frm, fb, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-11) {
  double m = 0.5 * (a + b);
  return simpson(f, a, b, f(a), f(m), f(b), tol, 40);
}

// Enumeration of min/max over all subsets containing each index; the direct
// transcription of the closure definitions.
inline std::vector<double> closure_by_enumeration(
    const std::function<double(const std::vector<double>&)>& merge,
    const std::vector<double>& v, bool take_min) {
  int K = static_cast<int>(v.size());
  std::vector<double> out(v.size(),
                          take_min ? std::numeric_limits<double>::infinity()
                                   : -std::numeric_limits<double>::infinity());
  for (unsigned mask = 1; mask < (1u << K); ++mask) {
    std::vector<double> sub;
    for (int k = 0; k < K; ++k)
      if ((mask >> k) & 1) sub.push_back(v[k]);
    double val = merge(sub);
    for (int k = 0; k < K; ++k)
      if ((mask >> k) & 1)
        out[k] = take_min ? std::min(out[k], val) : std::max(out[k], val);
  }
  return out;
}

inline std::mt19937_64 seeded_rng(uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace test_oracle
