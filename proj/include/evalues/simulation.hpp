#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace evalues {

// Gaussian mean-shift testing kernels. The null is N(0,1), the alternative
// N(delta,1).

// Likelihood ratio exp(x delta - delta^2/2) of the alternative density to the
// null density; an e-variable under the null.
double lr_evalue(double x, double delta);

// Neyman-Pearson p-value Phi(x) for the one-sided alternative delta < 0.
double neyman_pearson_pvalue(double x);

// Likelihood ratio of the half-half mixture density to the null:
// exp(x delta - delta^2/2)/2 + 1/2.
double mixture_evalue(double x, double delta);

// (K+1)^(-1/2) exp((sum x)^2 / (2(K+1))): the product e-value integrated over
// delta ~ N(0,1); evaluated in log space.
double universal_martingale(std::span<const double> xs);

// Tabular experiment output: one row per index (prefix length K or hypothesis
// id), one column per method series, entries are medians across seeds.
struct SeriesTable {
  std::vector<std::string> columns;
  std::vector<int> index;
  std::vector<std::vector<double>> values;  // values[row][column]

  double at(int idx, const std::string& column) const;
};

// CSV with header "index,<method>..." and 6 significant digits; byte-stable
// across runs with the same inputs.
void write_csv(const SeriesTable& table, std::ostream& out);
std::string to_csv(const SeriesTable& table);

// Multiple testing of a single hypothesis on one growing Gaussian sample.
// Observation k is drawn from N(delta,1) for k <= ceil(fraction_alternative*n)
// and from N(0,1) after that. Methods:
//   product-lr       product of the likelihood ratios of the generating
//                    process (lr_evalue when fraction_alternative = 1,
//                    mixture_evalue otherwise)
//   wrong-lr         product of lr_evalue regardless of the data composition
//   universal        the universal test martingale
//   average          running mean of the product-lr base e-values
//   fisher-recip     1/p for Fisher's combination of the prefix p-values
//   fisher-vs        VS bound of the same
//   simes-recip      1/p for Simes's combination
//   simes-vs         VS bound of the same
//   bonferroni-recip 1/p for the Bonferroni combination
struct CombiningConfig {
  double delta = -0.1;
  int n_obs = 1000;
  int n_seeds = 100;
  double fraction_alternative = 1.0;
  std::vector<std::string> methods;
};

// Testing n_hypotheses hypotheses from one observation each; the first
// n_false are drawn from N(delta,1), the rest from N(0,1). Base e-values are
// mixture_evalue, base p-values neyman_pearson_pvalue. Methods avg-adjust and
// product-adjust yield one column; holm, hommel, and fact-fisher yield
// <name>-recip and <name>-vs columns of the adjusted p-values.
struct MultipleConfig {
  int n_hypotheses = 20;
  int n_false = 10;
  double delta = -4.0;
  int n_seeds = 100;
  std::vector<std::string> methods;
};

// Seed s in {0,...,n_seeds-1} uses the stream seeded with seed_base + s; the
// reported value is the lower median across seeds. Unknown method names are
// rejected.
SeriesTable run_combining_experiment(const CombiningConfig& cfg, uint64_t seed_base);
SeriesTable run_multiple_experiment(const MultipleConfig& cfg, uint64_t seed_base);

}  // namespace evalues
