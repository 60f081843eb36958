#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "evalues/cross_merging.hpp"
#include "evalues/e_merging.hpp"
#include "test_oracles.hpp"

using namespace evalues;

TEST_CASE("e_to_p_merge examples") {
  CHECK(e_to_p_merge(std::vector<double>{4, 0.5}) == doctest::Approx(2.0 / 4.5));
  CHECK(e_to_p_merge(std::vector<double>{1, 1}) == 1.0);
  CHECK(e_to_p_merge(std::vector<double>{0, 0}) == 1.0);
  CHECK(e_to_p_merge(std::vector<double>{kInf, 0.1}) == 0.0);
}

TEST_CASE("e_to_p_merge equals e_to_p after averaging") {
  auto rng = test_oracle::seeded_rng(5);
  std::uniform_real_distribution<double> unif(0.0, 10.0);
  for (int t = 0; t < 300; ++t) {
    int K = 1 + static_cast<int>(rng() % 6);
    std::vector<double> e(K);
    for (double& x : e) x = unif(rng);
    CHECK(e_to_p_merge(e) == e_to_p(arithmetic_mean(e)));
  }
}

TEST_CASE("p_to_e_merge examples") {
  CHECK(p_to_e_merge(0.5, std::vector<double>{0.25, 0.01}) == doctest::Approx(3.0));
  CHECK(p_to_e_merge(0.3, std::vector<double>{1, 1, 1}) == doctest::Approx(0.3));
  CHECK(std::isinf(p_to_e_merge(0.5, std::vector<double>{0.0, 0.5})));
  CHECK_THROWS_AS(p_to_e_merge(1.0, std::vector<double>{0.5}), std::invalid_argument);
}

TEST_CASE("p_to_e_merge equals averaging the power calibrator") {
  auto rng = test_oracle::seeded_rng(6);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    int K = 1 + static_cast<int>(rng() % 6);
    double kappa = 0.05 + 0.9 * unif(rng);
    std::vector<double> p(K), cal(K);
    for (int k = 0; k < K; ++k) {
      p[k] = unif(rng);
      cal[k] = calibrate_power(p[k], kappa);
    }
    CHECK(p_to_e_merge(kappa, p) == arithmetic_mean(cal));
  }
}

TEST_CASE("p_to_e_mixture reductions") {
  std::vector<double> p{0.25, std::exp(-1.0)};
  std::vector<CalibratorSpec> both_power{CalibratorSpec::power(0.5),
                                         CalibratorSpec::power(0.5)};
  CHECK(p_to_e_mixture(std::vector<double>{0.5, 0.5}, both_power, p) ==
        doctest::Approx(p_to_e_merge(0.5, p)).epsilon(1e-15));

  std::vector<CalibratorSpec> mixed{CalibratorSpec::power(0.5),
                                    CalibratorSpec::integrated()};
  CHECK(p_to_e_mixture(std::vector<double>{1.0, 0.0}, mixed, p) == doctest::Approx(1.0));
  CHECK(p_to_e_mixture(std::vector<double>{0.5, 0.5}, mixed, p) ==
        doctest::Approx(0.859140914229523).epsilon(1e-12));
  CHECK_THROWS_AS(p_to_e_mixture(std::vector<double>{0.4, 0.4}, mixed, p),
                  std::invalid_argument);
}

TEST_CASE("ville_se_to_p examples") {
  CHECK(ville_se_to_p(std::vector<double>{2, 0.5, 4}) == doctest::Approx(0.25));
  CHECK(ville_se_to_p(std::vector<double>{1, 1, 1}) == 1.0);
  CHECK(ville_se_to_p(std::vector<double>{0.5}) == 1.0);
  CHECK(ville_se_to_p(std::vector<double>{kInf, 0.0}) == 0.0);
  CHECK(ville_se_to_p(std::vector<double>{0.0, 100.0}) == 1.0);
}

TEST_CASE("ville beats the final-product calibration") {
  auto rng = test_oracle::seeded_rng(7);
  std::uniform_real_distribution<double> unif(0.0, 4.0);
  for (int t = 0; t < 300; ++t) {
    int K = 1 + static_cast<int>(rng() % 6);
    std::vector<double> e(K);
    for (double& x : e) x = unif(rng);
    CHECK(ville_se_to_p(e) <= e_to_p(product(e)) * (1.0 + 1e-12));
  }
}
