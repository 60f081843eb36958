#include "evalues/multiple_testing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "evalues/e_merging.hpp"
#include "evalues/numerics.hpp"
#include "evalues/p_merging.hpp"

namespace evalues {

namespace {

std::vector<int> ascending_order(std::span<const double> v) {
  std::vector<int> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return v[a] < v[b]; });
  return idx;
}

}  // namespace

AdjustedEValues adjust_e_average(std::span<const double> e) {
  if (e.empty()) throw std::invalid_argument("adjust_e_average: empty input");
  require_evector(e);
  int K = static_cast<int>(e.size());
  AdjustedEValues out;
  out.original.assign(e.begin(), e.end());
  out.adjusted.resize(K);
  out.ordering = ascending_order(e);

  // prefix sums of the order statistics
  std::vector<double> S(K + 1, 0.0);
  for (int i = 0; i < K; ++i) S[i + 1] = S[i] + e[out.ordering[i]];

  for (int k = 0; k < K; ++k) {
    double ek = e[out.ordering[k]];
    double best = ek;  // the subset {k} alone
    for (int i = 1; i <= k; ++i)
      best = std::min(best, (ek + S[i]) / (i + 1));
    out.adjusted[out.ordering[k]] = best;
  }
  return out;
}

AdjustedEValues adjust_e_product(std::span<const double> e, bool pseudocode_literal) {
  if (e.empty()) throw std::invalid_argument("adjust_e_product: empty input");
  require_evector(e);
  int K = static_cast<int>(e.size());
  AdjustedEValues out;
  out.original.assign(e.begin(), e.end());
  out.adjusted.resize(K);
  out.ordering = ascending_order(e);

  // prefix/suffix products of the entries below 1 avoid dividing by zero
  std::vector<double> pre(K + 1, 1.0), suf(K + 1, 1.0);
  auto factor = [&](int i) { return e[i] < 1.0 ? e[i] : 1.0; };
  for (int i = 0; i < K; ++i) pre[i + 1] = pre[i] * factor(i);
  for (int i = K - 1; i >= 0; --i) suf[i] = suf[i + 1] * factor(i);

  for (int k = 0; k < K; ++k) {
    double others = pre[k] * suf[k + 1];
    double a = pseudocode_literal ? others * factor(k) : others;
    double ek = e[k];
    out.adjusted[k] = std::isinf(ek) ? kInf : ek * a;
  }
  return out;
}

AdjustedPValues holm_adjust(std::span<const double> p) {
  if (p.empty()) throw std::invalid_argument("holm_adjust: empty input");
  require_pvector(p);
  int K = static_cast<int>(p.size());
  AdjustedPValues out;
  out.original.assign(p.begin(), p.end());
  out.adjusted.resize(K);
  out.ordering = ascending_order(p);

  double running = 0.0;
  for (int j = 0; j < K; ++j) {
    double q = std::min(1.0, (K - j) * p[out.ordering[j]]);
    running = std::max(running, q);
    out.adjusted[out.ordering[j]] = running;
  }
  return out;
}

AdjustedPValues hommel_adjust(std::span<const double> p) {
  if (p.empty()) throw std::invalid_argument("hommel_adjust: empty input");
  require_pvector(p);
  int n = static_cast<int>(p.size());
  AdjustedPValues out;
  out.original.assign(p.begin(), p.end());
  out.adjusted.resize(n);
  out.ordering = ascending_order(p);

  std::vector<double> q(n);  // sorted p-values
  for (int i = 0; i < n; ++i) q[i] = p[out.ordering[i]];

  // Wright's scheme: for each subset size m, the closure maxima live on the
  // sets {i} u {m-1 largest} and the top-m set. Candidates are written as
  // (m/j)*q, the expression simes() uses, so closure equivalence is bit-exact.
  double full = 1.0;
  for (int j = 0; j < n; ++j)
    full = std::min(full, (static_cast<double>(n) / (j + 1)) * q[j]);
  std::vector<double> pa(n, full);
  std::vector<double> qq(n);
  for (int m = n - 1; m >= 2; --m) {
    double q1 = 1.0;
    for (int j = 2; j <= m; ++j)  // the m-1 largest at in-subset ranks 2..m
      q1 = std::min(q1, (static_cast<double>(m) / j) * q[n - m + j - 1]);
    for (int i = 0; i <= n - m; ++i)
      qq[i] = std::min(static_cast<double>(m) * q[i], q1);
    for (int i = n - m + 1; i < n; ++i) qq[i] = qq[n - m];
    for (int i = 0; i < n; ++i) pa[i] = std::max(pa[i], qq[i]);
  }
  for (int i = 0; i < n; ++i)
    out.adjusted[out.ordering[i]] = std::max(pa[i], q[i]);
  return out;
}

AdjustedPValues fact_generic(const std::function<double(std::span<const double>)>& F,
                             std::span<const double> p) {
  if (p.empty()) throw std::invalid_argument("fact_generic: empty input");
  require_pvector(p);
  int K = static_cast<int>(p.size());
  AdjustedPValues out;
  out.original.assign(p.begin(), p.end());
  out.adjusted.resize(K);
  out.ordering = ascending_order(p);

  std::vector<double> sorted(K);
  for (int i = 0; i < K; ++i) sorted[i] = p[out.ordering[i]];

  // P[i] = F over the suffix starting at sorted rank i
  std::vector<double> suffix_val(K);
  for (int i = 0; i < K; ++i)
    suffix_val[i] = F(std::span<const double>(sorted).subspan(i));

  std::vector<double> buf;
  buf.reserve(K + 1);
  for (int k = 0; k < K; ++k) {
    double pk = sorted[k];
    buf.assign(1, pk);
    double best = F(buf);
    for (int i = K - 1; i > k; --i) {
      // buf holds {p_k} u suffix(i); grown from the right end inward
      buf.push_back(sorted[i]);
      best = std::max(best, F(buf));
    }
    for (int i = 0; i <= k; ++i) best = std::max(best, suffix_val[i]);
    out.adjusted[out.ordering[k]] = best;
  }
  return out;
}

AdjustedPValues fact_fisher(std::span<const double> p) {
  if (p.empty()) throw std::invalid_argument("fact_fisher: empty input");
  require_pvector(p);
  for (double x : p)
    if (x == 0.0) throw std::invalid_argument("fact_fisher: zero p-values are not supported");
  int K = static_cast<int>(p.size());
  AdjustedPValues out;
  out.original.assign(p.begin(), p.end());
  out.adjusted.resize(K);
  out.ordering = ascending_order(p);

  std::vector<double> sorted(K);
  for (int i = 0; i < K; ++i) sorted[i] = p[out.ordering[i]];

  // suffix statistics S[i] = -2 sum_{j >= i} log p_(j) and their p-values
  std::vector<double> S(K + 1, 0.0);
  for (int i = K - 1; i >= 0; --i) S[i] = S[i + 1] - 2.0 * std::log(sorted[i]);
  std::vector<double> suffix_val(K);
  for (int i = 0; i < K; ++i)
    suffix_val[i] = chi2_survival_even(2 * (K - i), S[i]);

  for (int k = 0; k < K; ++k) {
    double best = sorted[k];  // 1 - F_2(-2 log p) = p
    double lk = -2.0 * std::log(sorted[k]);
    for (int i = k + 1; i < K; ++i)
      best = std::max(best, chi2_survival_even(2 * (K - i + 1), lk + S[i]));
    for (int i = 0; i <= k; ++i) best = std::max(best, suffix_val[i]);
    out.adjusted[out.ordering[k]] = best;
  }
  return out;
}

}  // namespace evalues
