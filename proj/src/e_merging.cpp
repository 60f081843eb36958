#include "evalues/e_merging.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace evalues {

namespace {

bool has_inf(std::span<const double> e) {
  return std::any_of(e.begin(), e.end(), [](double x) { return std::isinf(x); });
}

void require_nonempty(std::span<const double> e) {
  if (e.empty()) throw std::invalid_argument("merging requires at least one e-value");
}

// elementary symmetric polynomials s_0..s_n of the entries
std::vector<double> elementary_symmetric(std::span<const double> e, int n) {
  std::vector<double> s(static_cast<size_t>(n) + 1, 0.0);
  s[0] = 1.0;
  for (size_t i = 0; i < e.size(); ++i) {
    int top = std::min<int>(n, static_cast<int>(i) + 1);
    for (int j = top; j >= 1; --j) s[j] += s[j - 1] * e[i];
  }
  return s;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

}  // namespace

void require_evector(std::span<const double> e) {
  for (double x : e)
    if (std::isnan(x) || x < 0.0)
      throw std::invalid_argument("e-values must be nonnegative");
}

double arithmetic_mean(std::span<const double> e) {
  require_nonempty(e);
  require_evector(e);
  if (has_inf(e)) return kInf;
  double sum = std::accumulate(e.begin(), e.end(), 0.0);
  return sum / static_cast<double>(e.size());
}

double convex_mixture(double lambda, std::span<const double> e) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("convex_mixture: lambda must lie in [0, 1]");
  require_nonempty(e);
  require_evector(e);
  if (has_inf(e)) return kInf;
  return lambda + (1.0 - lambda) * arithmetic_mean(e);
}

double u_statistic(int n, std::span<const double> e) {
  require_nonempty(e);
  require_evector(e);
  int K = static_cast<int>(e.size());
  if (n < 0 || n > K)
    throw std::invalid_argument("u_statistic: n must lie in [0, K]");
  if (n == 0) return 1.0;
  if (has_inf(e)) return kInf;
  auto s = elementary_symmetric(e, n);
  return s[n] / binomial(K, n);
}

double u_mixture(std::span<const double> weights, std::span<const double> e) {
  require_nonempty(e);
  require_evector(e);
  int K = static_cast<int>(e.size());
  if (static_cast<int>(weights.size()) != K + 1)
    throw std::invalid_argument("u_mixture: need K+1 weights");
  double wsum = 0.0;
  for (double w : weights) {
    if (std::isnan(w) || w < 0.0)
      throw std::invalid_argument("u_mixture: weights must be nonnegative");
    wsum += w;
  }
  if (std::fabs(wsum - 1.0) > 1e-9)
    throw std::invalid_argument("u_mixture: weights must sum to 1");
  if (has_inf(e)) return kInf;
  auto s = elementary_symmetric(e, K);
  double out = 0.0;
  for (int n = 0; n <= K; ++n)
    if (weights[n] > 0.0) out += weights[n] * s[n] / binomial(K, n);
  return out;
}

double product(std::span<const double> e) {
  require_nonempty(e);
  require_evector(e);
  if (has_inf(e)) return kInf;  // takes precedence over any zero entry
  double p = 1.0;
  for (double x : e) p *= x;
  return p;
}

double ruger_e(int k, std::span<const double> e) {
  require_nonempty(e);
  require_evector(e);
  int K = static_cast<int>(e.size());
  if (k < 1 || k > K)
    throw std::invalid_argument("ruger_e: k must lie in [1, K]");
  if (has_inf(e)) return kInf;
  std::vector<double> sorted(e.begin(), e.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return (static_cast<double>(k) / K) * sorted[k - 1];
}

double e_simes(std::span<const double> e) {
  require_nonempty(e);
  require_evector(e);
  if (has_inf(e)) return kInf;
  int K = static_cast<int>(e.size());
  std::vector<double> sorted(e.begin(), e.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double best = 0.0;
  for (int k = 1; k <= K; ++k)
    best = std::max(best, (static_cast<double>(k) / K) * sorted[k - 1]);
  return best;
}

double m_family_e(double r, std::span<const double> e) {
  require_nonempty(e);
  require_evector(e);
  if (std::isnan(r)) throw std::invalid_argument("m_family_e: r must not be NaN");
  if (has_inf(e)) return kInf;
  int K = static_cast<int>(e.size());
  double n = static_cast<double>(K);

  if (r == 1.0) return arithmetic_mean(e);
  if (std::isinf(r) && r > 0.0)
    return *std::max_element(e.begin(), e.end()) / n;  // coefficient K^-1
  if (std::isinf(r) && r < 0.0)
    return *std::min_element(e.begin(), e.end());

  bool any_zero = std::any_of(e.begin(), e.end(), [](double x) { return x == 0.0; });
  if (r == 0.0) {
    if (any_zero) return 0.0;
    double s = 0.0;
    for (double x : e) s += std::log(x);
    return std::exp(s / n);
  }
  if (r < 0.0) {
    if (any_zero) return 0.0;  // limit of the power mean
    double m = *std::min_element(e.begin(), e.end());
    double s = 0.0;
    for (double x : e) s += std::pow(x / m, r);
    return m * std::pow(s / n, 1.0 / r);
  }
  double m = *std::max_element(e.begin(), e.end());
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double x : e) s += std::pow(x / m, r);
  double mean_r = m * std::pow(s / n, 1.0 / r);
  double coeff = (r > 1.0) ? std::pow(n, 1.0 / r - 1.0) : 1.0;
  return coeff * mean_r;
}

namespace {
std::string short_num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}
}  // namespace

std::vector<MergeFunction> merge_catalogue() {
  std::vector<MergeFunction> cat;
  auto arb = [&cat](std::string name, std::function<double(std::span<const double>)> f) {
    cat.push_back({std::move(name), MergeClass::arbitrary, std::move(f)});
  };
  auto seq = [&cat](std::string name, std::function<double(std::span<const double>)> f) {
    cat.push_back({std::move(name), MergeClass::sequential, std::move(f)});
  };

  arb("average", [](std::span<const double> e) { return arithmetic_mean(e); });
  for (double lam : {0.25, 0.5, 0.75})
    arb("mixture-" + short_num(lam),
        [lam](std::span<const double> e) { return convex_mixture(lam, e); });
  arb("simes-e", [](std::span<const double> e) { return e_simes(e); });
  for (int k : {1, 2, 3, 4})
    arb("ruger-" + std::to_string(k), [k](std::span<const double> e) {
      return ruger_e(std::min<int>(k, static_cast<int>(e.size())), e);
    });
  for (double r : {-2.0, 0.0, 0.5, 2.0, 17.0, kInf})
    arb("m-family-" + short_num(r),
        [r](std::span<const double> e) { return m_family_e(r, e); });

  seq("product", [](std::span<const double> e) { return product(e); });
  for (int n : {2, 3})
    seq("u-stat-" + std::to_string(n), [n](std::span<const double> e) {
      return u_statistic(std::min<int>(n, static_cast<int>(e.size())), e);
    });
  seq("u-mix-half", [](std::span<const double> e) {
    // half mean, half product
    std::vector<double> w(e.size() + 1, 0.0);
    w[std::min<size_t>(1, e.size())] += 0.5;
    w[e.size()] += 0.5;
    return u_mixture(w, e);
  });
  return cat;
}

const MergeFunction& find_merge_function(const std::string& name) {
  static const std::vector<MergeFunction> cat = merge_catalogue();
  for (const auto& f : cat)
    if (f.name == name) return f;
  throw std::invalid_argument("unknown merging function: " + name);
}

}  // namespace evalues
