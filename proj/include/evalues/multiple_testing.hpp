#pragma once

#include <functional>
#include <span>
#include <vector>

namespace evalues {

// Per-hypothesis adjusted e-values; adjusted[k] <= original[k] everywhere.
// ordering sorts the originals ascending, ties broken by original index.
struct AdjustedEValues {
  std::vector<double> original;
  std::vector<double> adjusted;
  std::vector<int> ordering;
};

// Per-hypothesis adjusted p-values; adjusted[k] >= original[k], all in [0,1].
struct AdjustedPValues {
  std::vector<double> original;
  std::vector<double> adjusted;
  std::vector<int> ordering;
};

// Closure of the arithmetic mean: e*_k = min over subsets I containing k of
// the average of e_i over I, computed in O(K^2) from the sorted prefix sums.
AdjustedEValues adjust_e_average(std::span<const double> e);

// Closure of the product for sequential e-values:
// e*_k = e_k * prod_{i != k, e_i < 1} e_i, in O(K). With pseudocode_literal
// the multiplier includes e_k itself when e_k < 1, which is smaller than the
// closure value but still family-wise valid.
AdjustedEValues adjust_e_product(std::span<const double> e,
                                 bool pseudocode_literal = false);

// Step-down Bonferroni closure (Holm 1979).
AdjustedPValues holm_adjust(std::span<const double> p);

// Closure of Simes's method in O(K^2) (Wright 1992, appendix scheme);
// family-wise validity needs independent base p-values.
AdjustedPValues hommel_adjust(std::span<const double> p);

// Fast closed testing for any symmetric p-merging function F that increases
// in each argument: evaluates F only on the sets {k} u {largest j} and the
// top-j sets, which carry the closure maxima.
AdjustedPValues fact_generic(const std::function<double(std::span<const double>)>& F,
                             std::span<const double> p);

// Fast closed testing on top of Fisher's method, using suffix sums of
// -2 log p and the even-dof chi-square survival; rejects zero p-values.
AdjustedPValues fact_fisher(std::span<const double> p);

}  // namespace evalues
