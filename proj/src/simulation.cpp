#include "evalues/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "evalues/calibration.hpp"
#include "evalues/multiple_testing.hpp"
#include "evalues/numerics.hpp"
#include "evalues/rng.hpp"

namespace evalues {

double lr_evalue(double x, double delta) {
  if (!std::isfinite(x) || !std::isfinite(delta))
    throw std::invalid_argument("lr_evalue: arguments must be finite");
  return std::exp(x * delta - delta * delta / 2.0);
}

double neyman_pearson_pvalue(double x) { return std_normal_cdf(x); }

double mixture_evalue(double x, double delta) {
  if (!std::isfinite(x) || !std::isfinite(delta))
    throw std::invalid_argument("mixture_evalue: arguments must be finite");
  return 0.5 * std::exp(x * delta - delta * delta / 2.0) + 0.5;
}

namespace {

constexpr double kLn2 = 0.6931471805599453094;

double log_lr(double x, double delta) { return x * delta - delta * delta / 2.0; }

// log(exp(m)/2 + 1/2) without overflow
double log_mixture_lr(double x, double delta) {
  double m = log_lr(x, delta);
  if (m > 0.0) return m + std::log1p(std::exp(-m)) - kLn2;
  return std::log1p(std::exp(m)) - kLn2;
}

double universal_log(double sum, int K) {
  return -0.5 * std::log(static_cast<double>(K) + 1.0) +
         sum * sum / (2.0 * (static_cast<double>(K) + 1.0));
}

// VS bound from log p, stable when p itself underflows
double vs_from_log_p(double lp) {
  if (lp >= -1.0) return 1.0;
  return std::exp(-1.0 - lp) / (-lp);
}

double lower_median(std::vector<double>& v) {
  size_t m = (v.size() - 1) / 2;
  std::nth_element(v.begin(), v.begin() + m, v.end());
  return v[m];
}

void parallel_over_seeds(int n_seeds, const std::function<void(int)>& body) {
  unsigned hw = std::thread::hardware_concurrency();
  int workers = std::max(1, std::min<int>(n_seeds, hw ? static_cast<int>(hw) : 1));
  if (workers == 1) {
    for (int s = 0; s < n_seeds; ++s) body(s);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int s = w; s < n_seeds; s += workers) body(s);
    });
  for (auto& t : pool) t.join();
}

const std::vector<std::string> kCombiningMethods = {
    "product-lr", "wrong-lr",  "universal",        "average",  "fisher-recip",
    "fisher-vs",  "simes-recip", "simes-vs", "bonferroni-recip"};

const std::vector<std::string> kMultipleMethods = {
    "avg-adjust", "product-adjust", "holm", "hommel", "fact-fisher"};

void validate_methods(const std::vector<std::string>& methods,
                      const std::vector<std::string>& known) {
  if (methods.empty()) throw std::invalid_argument("no methods requested");
  for (const auto& m : methods)
    if (std::find(known.begin(), known.end(), m) == known.end())
      throw std::invalid_argument("unknown method: " + m);
}

// log Phi(x) with an underflow-proof branch; the simulation only needs it for
// Fisher sums
double safe_log_p(double x) { return log_std_normal_cdf(x); }

}  // namespace

double universal_martingale(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) {
    if (!std::isfinite(x))
      throw std::invalid_argument("universal_martingale: entries must be finite");
    sum += x;
  }
  return std::exp(universal_log(sum, static_cast<int>(xs.size())));
}

double SeriesTable::at(int idx, const std::string& column) const {
  auto cit = std::find(columns.begin(), columns.end(), column);
  if (cit == columns.end()) throw std::invalid_argument("no column " + column);
  auto rit = std::find(index.begin(), index.end(), idx);
  if (rit == index.end()) throw std::invalid_argument("no row " + std::to_string(idx));
  return values[rit - index.begin()][cit - columns.begin()];
}

void write_csv(const SeriesTable& table, std::ostream& out) {
  out << "index";
  for (const auto& c : table.columns) out << ',' << c;
  out << '\n';
  char buf[64];
  for (size_t r = 0; r < table.index.size(); ++r) {
    out << table.index[r];
    for (double v : table.values[r]) {
      std::snprintf(buf, sizeof buf, "%.6g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

std::string to_csv(const SeriesTable& table) {
  std::ostringstream ss;
  write_csv(table, ss);
  return ss.str();
}

SeriesTable run_combining_experiment(const CombiningConfig& cfg, uint64_t seed_base) {
  if (cfg.n_obs < 1 || cfg.n_seeds < 1)
    throw std::invalid_argument("combining experiment: n_obs and n_seeds must be positive");
  if (!(cfg.fraction_alternative >= 0.0 && cfg.fraction_alternative <= 1.0))
    throw std::invalid_argument("combining experiment: fraction_alternative must lie in [0,1]");
  validate_methods(cfg.methods, kCombiningMethods);

  int n = cfg.n_obs;
  int n_alt = static_cast<int>(std::ceil(cfg.fraction_alternative * n));
  bool pure_alternative = cfg.fraction_alternative == 1.0;
  size_t M = cfg.methods.size();

  bool want_simes = false, want_fisher = false, want_bonf = false;
  for (const auto& m : cfg.methods) {
    if (m.rfind("simes", 0) == 0) want_simes = true;
    if (m.rfind("fisher", 0) == 0) want_fisher = true;
    if (m.rfind("bonferroni", 0) == 0) want_bonf = true;
  }
  bool want_p = want_simes || want_fisher || want_bonf;

  // per_seed[m] is an n_seeds x n matrix of trajectories
  std::vector<std::vector<std::vector<double>>> per_seed(
      M, std::vector<std::vector<double>>(cfg.n_seeds));

  parallel_over_seeds(cfg.n_seeds, [&](int s) {
    GaussianStream g(seed_base + static_cast<uint64_t>(s));
    std::vector<double> xs(n);
    for (int k = 0; k < n; ++k) xs[k] = g.next(k < n_alt ? cfg.delta : 0.0);

    std::vector<double> cum_lr(n), cum_wrong(n), cum_sum(n), cum_avg(n);
    std::vector<double> fisher_lp(n), simes_p(n), minp(n);
    {
      double lr = 0.0, wr = 0.0, sm = 0.0, av = 0.0, lp = 0.0, mp = 1.0;
      std::vector<double> sorted;
      if (want_simes) sorted.reserve(n);
      for (int k = 0; k < n; ++k) {
        double base_log = pure_alternative ? log_lr(xs[k], cfg.delta)
                                           : log_mixture_lr(xs[k], cfg.delta);
        lr += base_log;
        wr += log_lr(xs[k], cfg.delta);
        sm += xs[k];
        av += std::exp(base_log);
        cum_lr[k] = lr;
        cum_wrong[k] = wr;
        cum_sum[k] = sm;
        cum_avg[k] = av / (k + 1);
        if (want_p) {
          double p = neyman_pearson_pvalue(xs[k]);
          mp = std::min(mp, p);
          minp[k] = mp;
          lp += (p > 0.0) ? std::log(p) : safe_log_p(xs[k]);
          fisher_lp[k] = lp;
          if (want_simes) {
            sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), p), p);
            double best = 1.0;
            int K = k + 1;
            for (int j = 0; j < K; ++j)
              best = std::min(best, (static_cast<double>(K) / (j + 1)) * sorted[j]);
            simes_p[k] = best;
          }
        }
      }
    }

    for (size_t m = 0; m < M; ++m) {
      const std::string& name = cfg.methods[m];
      std::vector<double> series(n);
      if (name == "product-lr") {
        for (int k = 0; k < n; ++k) series[k] = std::exp(cum_lr[k]);
      } else if (name == "wrong-lr") {
        for (int k = 0; k < n; ++k) series[k] = std::exp(cum_wrong[k]);
      } else if (name == "universal") {
        for (int k = 0; k < n; ++k) series[k] = std::exp(universal_log(cum_sum[k], k + 1));
      } else if (name == "average") {
        series = cum_avg;
      } else if (name == "fisher-recip" || name == "fisher-vs") {
        bool vs = name == "fisher-vs";
        for (int k = 0; k < n; ++k) {
          double lsurv = chi2_log_survival_even(2 * (k + 1), -2.0 * fisher_lp[k]);
          series[k] = vs ? vs_from_log_p(lsurv) : std::exp(-lsurv);
        }
      } else if (name == "simes-recip") {
        for (int k = 0; k < n; ++k) series[k] = 1.0 / simes_p[k];
      } else if (name == "simes-vs") {
        for (int k = 0; k < n; ++k) series[k] = vs_bound(simes_p[k]);
      } else if (name == "bonferroni-recip") {
        for (int k = 0; k < n; ++k)
          series[k] = 1.0 / std::min(1.0, (k + 1) * minp[k]);
      }
      per_seed[m][s] = std::move(series);
    }
  });

  SeriesTable table;
  table.columns = cfg.methods;
  table.index.resize(n);
  table.values.assign(n, std::vector<double>(M));
  std::vector<double> slice(cfg.n_seeds);
  for (int k = 0; k < n; ++k) {
    table.index[k] = k + 1;
    for (size_t m = 0; m < M; ++m) {
      for (int s = 0; s < cfg.n_seeds; ++s) slice[s] = per_seed[m][s][k];
      table.values[k][m] = lower_median(slice);
    }
  }
  return table;
}

SeriesTable run_multiple_experiment(const MultipleConfig& cfg, uint64_t seed_base) {
  if (cfg.n_hypotheses < 1 || cfg.n_seeds < 1)
    throw std::invalid_argument("multiple experiment: sizes must be positive");
  if (cfg.n_false < 0 || cfg.n_false > cfg.n_hypotheses)
    throw std::invalid_argument("multiple experiment: n_false must lie in [0, n_hypotheses]");
  validate_methods(cfg.methods, kMultipleMethods);

  int K = cfg.n_hypotheses;
  std::vector<std::string> columns;
  for (const auto& m : cfg.methods) {
    if (m == "avg-adjust" || m == "product-adjust") {
      columns.push_back(m);
    } else {
      columns.push_back(m + "-recip");
      columns.push_back(m + "-vs");
    }
  }
  size_t C = columns.size();

  std::vector<std::vector<std::vector<double>>> per_seed(
      C, std::vector<std::vector<double>>(cfg.n_seeds));

  parallel_over_seeds(cfg.n_seeds, [&](int s) {
    GaussianStream g(seed_base + static_cast<uint64_t>(s));
    std::vector<double> e(K), p(K);
    for (int k = 0; k < K; ++k) {
      double x = g.next(k < cfg.n_false ? cfg.delta : 0.0);
      e[k] = mixture_evalue(x, cfg.delta);
      p[k] = neyman_pearson_pvalue(x);
    }
    size_t c = 0;
    for (const auto& m : cfg.methods) {
      if (m == "avg-adjust") {
        per_seed[c++][s] = adjust_e_average(e).adjusted;
      } else if (m == "product-adjust") {
        per_seed[c++][s] = adjust_e_product(e).adjusted;
      } else {
        AdjustedPValues adj = (m == "holm")     ? holm_adjust(p)
                              : (m == "hommel") ? hommel_adjust(p)
                                                : fact_fisher(p);
        std::vector<double> recip(K), vsb(K);
        for (int k = 0; k < K; ++k) {
          recip[k] = 1.0 / adj.adjusted[k];
          vsb[k] = vs_bound(adj.adjusted[k]);
        }
        per_seed[c++][s] = std::move(recip);
        per_seed[c++][s] = std::move(vsb);
      }
    }
  });

  SeriesTable table;
  table.columns = columns;
  table.index.resize(K);
  table.values.assign(K, std::vector<double>(C));
  std::vector<double> slice(cfg.n_seeds);
  for (int k = 0; k < K; ++k) {
    table.index[k] = k;
    for (size_t c = 0; c < C; ++c) {
      for (int s = 0; s < cfg.n_seeds; ++s) slice[s] = per_seed[c][s][k];
      table.values[k][c] = lower_median(slice);
    }
  }
  return table;
}

}  // namespace evalues
