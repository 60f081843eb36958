#pragma once

#include <span>
#include <vector>

namespace evalues {

using PVector = std::vector<double>;

// Throws unless every entry lies in [0, 1].
void require_pvector(std::span<const double> p);

// min(1, K min(p)); valid under arbitrary dependence.
double bonferroni(std::span<const double> p);

// min(1, (K/k) p_(k)) with p_(k) the k-th smallest; Bonferroni at k = 1,
// the maximum at k = K. Valid under arbitrary dependence.
double ruger_p(int k, std::span<const double> p);

// min_k (K/k) p_(k); requires independent inputs for validity.
double simes(std::span<const double> p);

// Survival of chi2 with 2K dof at -2 sum log p_k; requires independence.
// A zero input gives 0 (limit of the statistic).
double fisher(std::span<const double> p);

// max(p); valid but inadmissible, kept as the final Ruger element.
double maximum(std::span<const double> p);

}  // namespace evalues
