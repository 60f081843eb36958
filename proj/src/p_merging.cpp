#include "evalues/p_merging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "evalues/numerics.hpp"

namespace evalues {

namespace {

void require_nonempty(std::span<const double> p) {
  if (p.empty()) throw std::invalid_argument("merging requires at least one p-value");
}

}  // namespace

void require_pvector(std::span<const double> p) {
  for (double x : p)
    if (!(x >= 0.0 && x <= 1.0))
      throw std::invalid_argument("p-values must lie in [0, 1]");
}

double bonferroni(std::span<const double> p) {
  require_nonempty(p);
  require_pvector(p);
  double m = *std::min_element(p.begin(), p.end());
  return std::min(1.0, static_cast<double>(p.size()) * m);
}

double ruger_p(int k, std::span<const double> p) {
  require_nonempty(p);
  require_pvector(p);
  int K = static_cast<int>(p.size());
  if (k < 1 || k > K)
    throw std::invalid_argument("ruger_p: k must lie in [1, K]");
  std::vector<double> sorted(p.begin(), p.end());
  std::sort(sorted.begin(), sorted.end());
  return std::min(1.0, (static_cast<double>(K) / k) * sorted[k - 1]);
}

double simes(std::span<const double> p) {
  require_nonempty(p);
  require_pvector(p);
  int K = static_cast<int>(p.size());
  std::vector<double> sorted(p.begin(), p.end());
  std::sort(sorted.begin(), sorted.end());
  double best = 1.0;
  for (int k = 1; k <= K; ++k)
    best = std::min(best, (static_cast<double>(K) / k) * sorted[k - 1]);
  return best;
}

double fisher(std::span<const double> p) {
  require_nonempty(p);
  require_pvector(p);
  double stat = 0.0;
  for (double x : p) {
    if (x == 0.0) return 0.0;
    stat -= 2.0 * std::log(x);
  }
  return chi2_survival_even(2 * static_cast<int>(p.size()), stat);
}

double maximum(std::span<const double> p) {
  require_nonempty(p);
  require_pvector(p);
  return *std::max_element(p.begin(), p.end());
}

}  // namespace evalues
