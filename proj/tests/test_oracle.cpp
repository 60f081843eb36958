#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "evalues/e_merging.hpp"
#include "evalues/oracle.hpp"
#include "test_oracles.hpp"

using namespace evalues;

namespace {

auto mean_fn = [](std::span<const double> e) { return arithmetic_mean(e); };
auto product_fn = [](std::span<const double> e) { return product(e); };

}  // namespace

TEST_CASE("exact_expectation examples") {
  DiscreteJointSpec point{{{1.0, 1.0, 1.0}}, {1.0},
                          DiscreteJointSpec::Coupling::explicit_spec};
  CHECK(exact_expectation(mean_fn, point) == 1.0);

  // independent two-point marginals at (2, 5): E[product] = 1
  auto spec = independent_two_point_spec(std::vector<double>{0.0, 0.0},
                                         std::vector<double>{2.0, 5.0});
  CHECK(exact_expectation(product_fn, spec) == doctest::Approx(1.0).epsilon(1e-14));

  // exchangeable scaled coupling at (8, 2): any function below the mean stays
  // below 1 in expectation
  auto exch = exchangeable_scaled_spec(std::vector<double>{8.0, 2.0});
  CHECK(exact_expectation([](std::span<const double> e) { return e_simes(e); }, exch) <=
        1.0 + 1e-12);
  CHECK(exact_expectation(mean_fn, exch) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact_expectation is linear in probs and order-invariant") {
  DiscreteJointSpec a{{{1.2, 0.0}, {0.0, 1.0}, {1.0, 1.5}},
                      {0.25, 0.5, 0.25},
                      DiscreteJointSpec::Coupling::explicit_spec};
  DiscreteJointSpec b = a;
  std::swap(b.support[0], b.support[2]);
  std::swap(b.probs[0], b.probs[2]);
  CHECK(exact_expectation(mean_fn, a) == exact_expectation(mean_fn, b));

  // mixing two prob vectors mixes the expectations
  DiscreteJointSpec c = a;
  c.probs = {0.5, 0.25, 0.25};
  DiscreteJointSpec half = a;
  for (size_t i = 0; i < 3; ++i) half.probs[i] = 0.5 * (a.probs[i] + c.probs[i]);
  CHECK(exact_expectation(mean_fn, half) ==
        doctest::Approx(0.5 * exact_expectation(mean_fn, a) +
                        0.5 * exact_expectation(mean_fn, c))
            .epsilon(1e-15));
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(validate_spec(DiscreteJointSpec{}), std::invalid_argument);
  CHECK_THROWS_AS(
      validate_spec(DiscreteJointSpec{{{1.0}}, {0.5},
                                      DiscreteJointSpec::Coupling::explicit_spec}),
      std::invalid_argument);
  // marginal expectation 2 > 1: not a vector of e-variables
  CHECK_THROWS_AS(
      validate_spec(DiscreteJointSpec{{{2.0, 1.0}}, {1.0},
                                      DiscreteJointSpec::Coupling::explicit_spec}),
      std::invalid_argument);
}

TEST_CASE("validity checker accepts the mean for every seed") {
  for (uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    auto r = check_e_merging_validity(mean_fn, MergeClass::arbitrary, 2000, seed);
    CHECK(r.pass);
  }
}

TEST_CASE("validity checker rejects scaled means for every seed") {
  auto twice = [](std::span<const double> e) { return 2.0 * arithmetic_mean(e); };
  auto hair = [](std::span<const double> e) { return 1.01 * arithmetic_mean(e); };
  for (uint64_t seed : {11ull, 12ull, 13ull, 14ull, 15ull}) {
    auto r2 = check_e_merging_validity(twice, MergeClass::arbitrary, 100, seed);
    CHECK_FALSE(r2.pass);
    CHECK(r2.witness.has_value());
    auto r101 = check_e_merging_validity(hair, MergeClass::arbitrary, 100, seed);
    CHECK_FALSE(r101.pass);
    CHECK(r101.witness_expectation > 1.0 + 1e-9);
  }
}

TEST_CASE("product fails under dependence and passes under independence") {
  auto dependent = check_e_merging_validity(product_fn, MergeClass::arbitrary, 5000, 21);
  CHECK_FALSE(dependent.pass);
  REQUIRE(dependent.witness.has_value());
  // the witness is a genuine certificate: recomputing reproduces the excess
  CHECK(exact_expectation(product_fn, *dependent.witness) ==
        doctest::Approx(dependent.witness_expectation));

  auto independent = check_e_merging_validity(product_fn, MergeClass::independent, 5000, 21);
  CHECK(independent.pass);
  auto sequential = check_e_merging_validity(product_fn, MergeClass::sequential, 5000, 21);
  CHECK(sequential.pass);
}

TEST_CASE("every catalogue function is valid for its own class") {
  for (const auto& fn : merge_catalogue()) {
    auto r = check_e_merging_validity(fn.fn, fn.merge_class, 1500, 2025);
    INFO("function ", fn.name);
    CHECK(r.pass);
  }
}

TEST_CASE("brute_closure examples") {
  auto avg_cl = brute_closure_e(mean_fn, std::vector<double>{8, 1, 0.2});
  CHECK(avg_cl[0] == doctest::Approx(9.2 / 3.0));
  CHECK(avg_cl[1] == doctest::Approx(0.6));
  CHECK(avg_cl[2] == doctest::Approx(0.2));
  auto prod_cl = brute_closure_e(product_fn, std::vector<double>{4, 0.5});
  CHECK(prod_cl[0] == 2.0);
  CHECK(prod_cl[1] == 0.5);
  auto one = brute_closure_e(mean_fn, std::vector<double>{3.7});
  CHECK(one[0] == 3.7);
  CHECK_THROWS_AS(brute_closure_e(mean_fn, std::vector<double>(21, 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(brute_closure_p(mean_fn, std::vector<double>(21, 0.5)),
                  std::invalid_argument);
}

TEST_CASE("domination grid examples") {
  std::vector<double> grid;
  for (double v = 0.0; v <= 10.0; v += 0.5) grid.push_back(v);

  auto ruger1 = [](std::span<const double> e) { return ruger_e(1, e); };
  auto res = check_domination_grid(ruger1, mean_fn, 3, grid);
  CHECK(res.dominated);

  // the mean and a strict mixture are non-comparable
  auto mix = [](std::span<const double> e) { return convex_mixture(0.5, e); };
  auto res2 = check_domination_grid(mean_fn, mix, 2, grid);
  CHECK_FALSE(res2.dominated);
  auto res3 = check_domination_grid(mix, mean_fn, 2, grid);
  CHECK_FALSE(res3.dominated);

  auto self = check_domination_grid(mean_fn, mean_fn, 2, grid);
  CHECK(self.dominated);
}
