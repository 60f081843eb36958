#include "evalues/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "evalues/rng.hpp"

namespace evalues {

namespace {

constexpr double kExcessTol = 1e-9;  // separates violations from float noise

void append_permutations(std::vector<double> e, double atom_prob,
                         DiscreteJointSpec& spec) {
  std::sort(e.begin(), e.end());
  do {
    spec.support.push_back(e);
    spec.probs.push_back(atom_prob);
  } while (std::next_permutation(e.begin(), e.end()));
}

}  // namespace

void validate_spec(const DiscreteJointSpec& spec) {
  if (spec.support.empty()) throw std::invalid_argument("spec: empty support");
  if (spec.support.size() != spec.probs.size())
    throw std::invalid_argument("spec: support/probs size mismatch");
  size_t K = spec.support[0].size();
  if (K == 0) throw std::invalid_argument("spec: zero-dimensional support");
  double total = 0.0;
  for (double p : spec.probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("spec: negative probability");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw std::invalid_argument("spec: probabilities must sum to 1");
  std::vector<double> marginal(K, 0.0);
  for (size_t i = 0; i < spec.support.size(); ++i) {
    if (spec.support[i].size() != K)
      throw std::invalid_argument("spec: ragged support");
    for (size_t k = 0; k < K; ++k) {
      double x = spec.support[i][k];
      if (std::isnan(x) || x < 0.0)
        throw std::invalid_argument("spec: support entries must be nonnegative");
      marginal[k] += spec.probs[i] * x;
    }
  }
  for (double m : marginal)
    if (m > 1.0 + kExcessTol)
      throw std::invalid_argument("spec: a marginal expectation exceeds 1");
}

double exact_expectation(const std::function<double(std::span<const double>)>& F,
                         const DiscreteJointSpec& spec) {
  validate_spec(spec);
  double total = 0.0;
  for (size_t i = 0; i < spec.support.size(); ++i) {
    if (spec.probs[i] == 0.0) continue;
    total += spec.probs[i] * F(spec.support[i]);
  }
  return total;
}

DiscreteJointSpec exchangeable_scaled_spec(std::span<const double> e) {
  require_evector(e);
  if (e.empty() || e.size() > 8)
    throw std::invalid_argument("exchangeable spec: need 1 <= K <= 8");
  double mean = std::accumulate(e.begin(), e.end(), 0.0) / e.size();
  double a = std::max(mean, 1.0);
  DiscreteJointSpec spec;
  spec.coupling = DiscreteJointSpec::Coupling::exchangeable_permutation;
  std::vector<double> base(e.begin(), e.end());
  std::sort(base.begin(), base.end());
  size_t n_perm = 0;
  {
    auto tmp = base;
    do { ++n_perm; } while (std::next_permutation(tmp.begin(), tmp.end()));
  }
  append_permutations(base, (1.0 / a) / n_perm, spec);
  if (a > 1.0) {
    spec.support.push_back(std::vector<double>(e.size(), 0.0));
    spec.probs.push_back(1.0 - 1.0 / a);
  }
  return spec;
}

DiscreteJointSpec comonotone_two_point_spec(std::span<const double> levels) {
  size_t K = levels.size();
  if (K == 0) throw std::invalid_argument("comonotone spec: empty levels");
  for (double v : levels)
    if (!(v >= 1.0) || std::isinf(v))
      throw std::invalid_argument("comonotone spec: levels must be finite and >= 1");
  // coordinate k is active while the driving uniform is below 1/v_k
  std::vector<size_t> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return 1.0 / levels[a] < 1.0 / levels[b]; });
  DiscreteJointSpec spec;
  spec.coupling = DiscreteJointSpec::Coupling::explicit_spec;
  // with thresholds 1/v ascending, the atom between consecutive thresholds
  // has exactly the coordinates with larger thresholds still active
  double prev = 0.0;
  for (size_t j = 0; j < K; ++j) {
    double upper = 1.0 / levels[order[j]];
    double width = upper - prev;
    if (width > 0.0) {
      std::vector<double> atom(K, 0.0);
      for (size_t m = j; m < K; ++m) atom[order[m]] = levels[order[m]];
      spec.support.push_back(std::move(atom));
      spec.probs.push_back(width);
    }
    prev = std::max(prev, upper);
  }
  // the all-zero atom absorbs the remaining mass
  double used = std::accumulate(spec.probs.begin(), spec.probs.end(), 0.0);
  spec.support.push_back(std::vector<double>(K, 0.0));
  spec.probs.push_back(std::max(0.0, 1.0 - used));
  return spec;
}

DiscreteJointSpec independent_two_point_spec(std::span<const double> lo,
                                             std::span<const double> hi) {
  size_t K = lo.size();
  if (K == 0 || hi.size() != K)
    throw std::invalid_argument("independent spec: lo/hi must be non-empty and equal length");
  std::vector<double> p_hi(K);
  for (size_t k = 0; k < K; ++k) {
    if (!(lo[k] >= 0.0 && lo[k] < 1.0) || !(hi[k] >= 1.0) || std::isinf(hi[k]))
      throw std::invalid_argument("independent spec: need 0 <= lo < 1 <= hi < inf");
    p_hi[k] = (hi[k] > lo[k]) ? (1.0 - lo[k]) / (hi[k] - lo[k]) : 1.0;  // mean exactly 1
  }
  DiscreteJointSpec spec;
  spec.coupling = DiscreteJointSpec::Coupling::independent_product;
  size_t atoms = size_t{1} << K;
  for (size_t mask = 0; mask < atoms; ++mask) {
    std::vector<double> atom(K);
    double prob = 1.0;
    for (size_t k = 0; k < K; ++k) {
      bool high = (mask >> k) & 1;
      atom[k] = high ? hi[k] : lo[k];
      prob *= high ? p_hi[k] : 1.0 - p_hi[k];
    }
    spec.support.push_back(std::move(atom));
    spec.probs.push_back(prob);
  }
  return spec;
}

std::string ValidityResult::describe() const {
  char buf[256];
  if (pass) {
    std::snprintf(buf, sizeof buf, "pass (worst E[F] - 1 = %.3g)", worst_excess);
    return buf;
  }
  std::string s;
  std::snprintf(buf, sizeof buf, "FAIL: E[F] = %.12g on witness spec with atoms:",
                witness_expectation);
  s = buf;
  if (witness) {
    for (size_t i = 0; i < witness->support.size() && i < 10; ++i) {
      s += "\n  p=";
      std::snprintf(buf, sizeof buf, "%-10.4g (", witness->probs[i]);
      s += buf;
      for (size_t k = 0; k < witness->support[i].size(); ++k) {
        std::snprintf(buf, sizeof buf, "%s%.6g", k ? ", " : "", witness->support[i][k]);
        s += buf;
      }
      s += ")";
    }
    if (witness->support.size() > 10) s += "\n  ...";
  }
  return s;
}

ValidityResult check_e_merging_validity(
    const std::function<double(std::span<const double>)>& F, MergeClass merge_class,
    int trials, uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("check_e_merging_validity: trials >= 1");
  Xoshiro256pp rng(seed);
  ValidityResult result;

  auto consider = [&](const DiscreteJointSpec& spec) {
    double ev = exact_expectation(F, spec);
    result.worst_excess = std::max(result.worst_excess, ev - 1.0);
    if (ev > 1.0 + kExcessTol && result.pass) {
      result.pass = false;
      result.witness = spec;
      result.witness_expectation = ev;
    }
    return result.pass;
  };

  auto rand_evalue = [&]() {
    double u = rng.next_open01();
    if (u < 0.15) return 0.0;
    if (u < 0.30) return 1.0;
    // log-uniform over [0.05, 20]
    return std::exp(std::log(0.05) + rng.next_open01() * std::log(20.0 / 0.05));
  };

  if (merge_class == MergeClass::arbitrary) {
    // explicit adversarial point masses at (c,...,c), c <= 1: any precise
    // merging function sits exactly at E[F] = c + headroom there
    for (int K = 1; K <= 5 && result.pass; ++K) {
      for (double c : {1.0, 0.999, 0.75})
        if (!consider(DiscreteJointSpec{{std::vector<double>(K, c)}, {1.0},
                                        DiscreteJointSpec::Coupling::explicit_spec}))
          break;
    }
    for (int t = 0; t < trials && result.pass; ++t) {
      int K = 1 + static_cast<int>(rng.next_u64() % 5);
      if (t % 2 == 0) {
        std::vector<double> e(K);
        for (double& x : e) x = rand_evalue();
        consider(exchangeable_scaled_spec(e));
      } else {
        std::vector<double> v(K);
        for (double& x : v)
          x = std::exp(rng.next_open01() * std::log(50.0));  // in [1, 50]
        consider(comonotone_two_point_spec(v));
      }
    }
  } else {
    // independent implies sequential, so independent two-point couplings are
    // fair adversaries for both classes
    for (int t = 0; t < trials && result.pass; ++t) {
      int K = 1 + static_cast<int>(rng.next_u64() % 8);
      std::vector<double> lo(K), hi(K);
      for (int k = 0; k < K; ++k) {
        lo[k] = (rng.next_open01() < 0.5) ? 0.0 : rng.next_open01() * 0.99;
        hi[k] = std::exp(rng.next_open01() * std::log(20.0));
      }
      consider(independent_two_point_spec(lo, hi));
    }
  }
  return result;
}

std::vector<double> brute_closure_e(
    const std::function<double(std::span<const double>)>& merge,
    std::span<const double> e) {
  int K = static_cast<int>(e.size());
  if (K == 0 || K > 20)
    throw std::invalid_argument("brute_closure_e: need 1 <= K <= 20");
  std::vector<double> out(K, kInf);
  std::vector<double> sub;
  sub.reserve(K);
  for (uint32_t mask = 1; mask < (uint32_t{1} << K); ++mask) {
    sub.clear();
    for (int k = 0; k < K; ++k)
      if ((mask >> k) & 1) sub.push_back(e[k]);
    double v = merge(sub);
    for (int k = 0; k < K; ++k)
      if ((mask >> k) & 1) out[k] = std::min(out[k], v);
  }
  return out;
}

std::vector<double> brute_closure_p(
    const std::function<double(std::span<const double>)>& merge,
    std::span<const double> p) {
  int K = static_cast<int>(p.size());
  if (K == 0 || K > 20)
    throw std::invalid_argument("brute_closure_p: need 1 <= K <= 20");
  std::vector<double> out(K, -kInf);
  std::vector<double> sub;
  sub.reserve(K);
  for (uint32_t mask = 1; mask < (uint32_t{1} << K); ++mask) {
    sub.clear();
    for (int k = 0; k < K; ++k)
      if ((mask >> k) & 1) sub.push_back(p[k]);
    double v = merge(sub);
    for (int k = 0; k < K; ++k)
      if ((mask >> k) & 1) out[k] = std::max(out[k], v);
  }
  return out;
}

DominationResult check_domination_grid(
    const std::function<double(std::span<const double>)>& F,
    const std::function<double(std::span<const double>)>& G, int K,
    std::span<const double> grid, double slack) {
  if (K < 1 || grid.empty())
    throw std::invalid_argument("check_domination_grid: need K >= 1 and a non-empty grid");
  std::vector<size_t> odo(K, 0);
  std::vector<double> point(K, grid[0]);
  DominationResult res;
  while (true) {
    double f = F(point);
    double g = G(point);
    if (f > g + slack) {
      res.dominated = false;
      res.counterexample = point;
      res.f_value = f;
      res.g_value = g;
      return res;
    }
    int pos = 0;
    while (pos < K) {
      if (++odo[pos] < grid.size()) {
        point[pos] = grid[odo[pos]];
        break;
      }
      odo[pos] = 0;
      point[pos] = grid[0];
      ++pos;
    }
    if (pos == K) break;
  }
  return res;
}

}  // namespace evalues
