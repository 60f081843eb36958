#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evalues/e_merging.hpp"

namespace evalues {

// Finite-support joint distribution of K e-variables. Marginal expectations
// must not exceed 1 (every coordinate is a genuine e-variable).
struct DiscreteJointSpec {
  enum class Coupling { independent_product, exchangeable_permutation, explicit_spec };

  std::vector<std::vector<double>> support;  // atoms, each of length K
  std::vector<double> probs;                 // nonnegative, sum to 1 +- 1e-12
  Coupling coupling = Coupling::explicit_spec;

  int dimension() const { return support.empty() ? 0 : static_cast<int>(support[0].size()); }
};

// Throws std::invalid_argument when the spec is malformed or a marginal
// expectation exceeds 1.
void validate_spec(const DiscreteJointSpec& spec);

// E[F(E_1,...,E_K)] summed exactly over the finite support.
double exact_expectation(const std::function<double(std::span<const double>)>& F,
                         const DiscreteJointSpec& spec);

struct ValidityResult {
  bool pass = true;
  double worst_excess = -1.0;                 // max over trials of E[F] - 1
  std::optional<DiscreteJointSpec> witness;   // a violating spec when !pass
  double witness_expectation = 0.0;
  std::string describe() const;
};

// Randomized-exact validity check of a merging function. For
// MergeClass::arbitrary the trials draw the scaled exchangeable-permutation
// couplings from the essential-domination proof, comonotone two-point
// couplings (the extremal dependence), and explicit adversarial point masses.
// For sequential/independent the trials draw independent two-point marginals
// with unit means. Fails on the first exact expectation above 1 + 1e-9.
ValidityResult check_e_merging_validity(
    const std::function<double(std::span<const double>)>& F, MergeClass merge_class,
    int trials, uint64_t seed);

// Exchangeable-permutation coupling scaled by an event of probability
// 1/max(mean(e), 1); exposed for tests and witnesses.
DiscreteJointSpec exchangeable_scaled_spec(std::span<const double> e);

// Comonotone coupling of two-point marginals {0, v_k} driven by a single
// uniform; each level v_k must be >= 1.
DiscreteJointSpec comonotone_two_point_spec(std::span<const double> levels);

// Independent product of two-point marginals {lo_k, hi_k} with mean exactly 1.
DiscreteJointSpec independent_two_point_spec(std::span<const double> lo,
                                             std::span<const double> hi);

// For each k, the min over subsets containing k of `merge` applied to the
// subvector; K is capped at 20 (exponential enumeration).
std::vector<double> brute_closure_e(
    const std::function<double(std::span<const double>)>& merge,
    std::span<const double> e);

// Same with max, for p-merging closures.
std::vector<double> brute_closure_p(
    const std::function<double(std::span<const double>)>& merge,
    std::span<const double> p);

struct DominationResult {
  bool dominated = true;
  std::vector<double> counterexample;  // point with F > G when !dominated
  double f_value = 0.0;
  double g_value = 0.0;
};

// Exhaustive check of F <= G + slack over the grid^K lattice.
DominationResult check_domination_grid(
    const std::function<double(std::span<const double>)>& F,
    const std::function<double(std::span<const double>)>& G, int K,
    std::span<const double> grid, double slack = 1e-12);

}  // namespace evalues
