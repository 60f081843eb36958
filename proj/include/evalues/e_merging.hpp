#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "evalues/numerics.hpp"

namespace evalues {

using EVector = std::vector<double>;

// Validity class of a merging function: valid for arbitrarily dependent,
// sequential, or independent e-values. arbitrary implies sequential implies
// independent.
enum class MergeClass { arbitrary, sequential, independent };

// Throws unless every entry is nonnegative (NaN rejected; +inf allowed).
void require_evector(std::span<const double> e);

// All merging functions below propagate +inf: if any input is +inf the result
// is +inf, the canonical extension of a finite merging function to the
// extended orthant. In particular product(0, inf) = inf.

// M_K, the essentially dominant symmetric e-merging function.
double arithmetic_mean(std::span<const double> e);

// lambda + (1 - lambda) M_K, lambda in [0, 1].
double convex_mixture(double lambda, std::span<const double> e);

// U_n: average of products over all n-subsets; n = 0 gives 1, n = 1 the
// mean, n = K the product. Valid for sequential inputs when n >= 2.
double u_statistic(int n, std::span<const double> e);

// Convex mixture of U_0..U_K with the given K+1 simplex weights.
double u_mixture(std::span<const double> weights, std::span<const double> e);

// e_1 * ... * e_K; sequential-class.
double product(std::span<const double> e);

// (k/K) e_[k] with e_[k] the k-th largest entry, 1 <= k <= K.
double ruger_e(int k, std::span<const double> e);

// max_k (k/K) e_[k]. Dominated by the arithmetic mean, so of documentation
// interest only.
double e_simes(std::span<const double> e);

// (K^(1/r-1) and 1) M_{r,K}(e) for the power mean M_{r,K}; the coefficient is
// K^(1/r-1) for r > 1 and 1 for r <= 1. r = 0, +-inf give the geometric mean,
// max/K, and min. A zero entry with r <= 0 yields 0 (continuity convention;
// the choice is ours, the limit is not pinned down for e-values).
double m_family_e(double r, std::span<const double> e);

// Named merging function with its validity class; the catalogue drives the
// validity oracle and the CLI.
struct MergeFunction {
  std::string name;
  MergeClass merge_class;
  std::function<double(std::span<const double>)> fn;
};

// Parameterized functions cap their index at K so every entry accepts any
// input length.
std::vector<MergeFunction> merge_catalogue();

// Lookup by name; throws std::invalid_argument for unknown names.
const MergeFunction& find_merge_function(const std::string& name);

}  // namespace evalues
