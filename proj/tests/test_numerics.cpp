#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "evalues/numerics.hpp"
#include "test_oracles.hpp"

using namespace evalues;

TEST_CASE("std_normal_cdf anchors") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  // high-precision reference values (30-digit erfc evaluation)
  CHECK(std_normal_cdf(1.0) == doctest::Approx(0.841344746068542948585).epsilon(1e-14));
  CHECK(std_normal_cdf(-3.0) == doctest::Approx(0.00134989803163009452665).epsilon(1e-13));
  CHECK(std_normal_cdf(5.0) == doctest::Approx(0.999999713348428120806).epsilon(1e-14));
  CHECK(std_normal_cdf(-1.959964) == doctest::Approx(0.025).epsilon(4e-5));  // +-1e-6 absolute
  CHECK(std::fabs(std_normal_cdf(-1.959964) - 0.025) < 1e-6);
  CHECK(std::fabs(std_normal_cdf(10.0) - 1.0) < 1e-12);
}

TEST_CASE("std_normal_cdf symmetry and monotonicity") {
  double prev = -1.0;
  for (double x = -37.0; x <= 37.0; x += 0.37) {
    CHECK(std::fabs(std_normal_cdf(x) + std_normal_cdf(-x) - 1.0) < 1e-12);
    double v = std_normal_cdf(x);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(std_normal_cdf(std::nan("")), std::invalid_argument);
}

TEST_CASE("log_std_normal_cdf deep tail") {
  CHECK(log_std_normal_cdf(-8.0) ==
        doctest::Approx(std::log(6.22096057427178412e-16)).epsilon(1e-12));
  // both branches agree where Phi is still representable
  CHECK(log_std_normal_cdf(-8.1) ==
        doctest::Approx(std::log(std_normal_cdf(-8.1))).epsilon(1e-12));
  // far below double range for Phi itself
  double lp = log_std_normal_cdf(-40.0);
  CHECK(lp == doctest::Approx(-804.608442013754).epsilon(1e-10));
}

TEST_CASE("chi2_survival_even closed forms") {
  for (double x : {0.0, 0.5, 1.0, 3.0, 10.0, 40.0})
    CHECK(chi2_survival_even(2, x) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-15));
  CHECK(chi2_survival_even(4, 0.0) == 1.0);
  // Poisson-sum oracle at -2 log(0.0025): exp(-x/2) (1 + x/2)
  double x = -2.0 * std::log(0.0025);
  CHECK(chi2_survival_even(4, x) ==
        doctest::Approx(0.0174786613677699550).epsilon(1e-12));
  // windowed large-dof branch against a 30-digit regularized-gamma reference
  CHECK(chi2_survival_even(2000, 2100.0) ==
        doctest::Approx(0.0586711113773180771).epsilon(1e-11));
  CHECK(chi2_survival_even(100, 250.0) ==
        doctest::Approx(7.76693640353917707e-15).epsilon(1e-11));
}

TEST_CASE("chi2_survival_even monotonicity") {
  for (double x = 0.5; x < 30.0; x += 0.5) {
    CHECK(chi2_survival_even(4, x) < chi2_survival_even(4, x - 0.5));
    CHECK(chi2_survival_even(6, x) > chi2_survival_even(4, x));
  }
  CHECK_THROWS_AS(chi2_survival_even(3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(chi2_survival_even(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(chi2_survival_even(4, -1.0), std::invalid_argument);
}

TEST_CASE("lower_incomplete_gamma closed forms") {
  for (double z : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    CHECK(lower_incomplete_gamma(1.0, z) ==
          doctest::Approx(1.0 - std::exp(-z)).epsilon(1e-12));
    CHECK(lower_incomplete_gamma(2.0, z) ==
          doctest::Approx(1.0 - (1.0 + z) * std::exp(-z)).epsilon(1e-12));
  }
  CHECK(lower_incomplete_gamma(0.5, 0.0) == 0.0);
}

TEST_CASE("lower_incomplete_gamma vs quadrature oracle") {
  // int_0^z t^(a-1) e^-t dt with t = u^2 to remove the a = 0.5 singularity
  auto oracle = [](double z) {
    return test_oracle::integrate([](double u) { return 2.0 * std::exp(-u * u); },
                                  0.0, std::sqrt(z));
  };
  CHECK(lower_incomplete_gamma(0.5, 0.25) == doctest::Approx(oracle(0.25)).epsilon(1e-10));
  CHECK(lower_incomplete_gamma(0.5, 0.25) ==
        doctest::Approx(0.922562012825584898).epsilon(1e-10));
  CHECK(lower_incomplete_gamma(0.5, 4.0) == doctest::Approx(oracle(4.0)).epsilon(1e-10));
}

TEST_CASE("lower_incomplete_gamma limit and errors") {
  for (double a : {0.5, 1.0, 2.5, 7.0})
    CHECK(lower_incomplete_gamma(a, 50.0 * a) ==
          doctest::Approx(std::tgamma(a)).epsilon(1e-8));
  CHECK_THROWS_AS(lower_incomplete_gamma(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lower_incomplete_gamma(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lower_incomplete_gamma(1.0, -0.5), std::invalid_argument);
}

TEST_CASE("integrate_unit_interval basics") {
  auto one = [](double) { return 1.0; };
  auto two = [](double) { return 2.0; };
  QuadratureResult q1 = integrate_unit_interval(one, 1e-8);
  CHECK(q1.value == doctest::Approx(1.0).epsilon(1e-7));
  QuadratureResult q2 = integrate_unit_interval(two, 1e-8);
  CHECK(q2.value == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("integrate_unit_interval power singularity") {
  for (double kappa : {0.1, 0.5, 0.9}) {
    auto f = [kappa](double p) { return kappa * std::pow(p, kappa - 1.0); };
    QuadratureResult q = integrate_unit_interval(f, 1e-7);
    CHECK(std::fabs(q.value - 1.0) < 1e-6);
    CHECK(q.error < 1e-6);
  }
}

TEST_CASE("integrate_unit_interval jump integrand") {
  auto f = [](double p) { return p <= 0.1 ? 10.0 : 0.0; };
  QuadratureResult q = integrate_unit_interval(f, 1e-7);
  CHECK(std::fabs(q.value - 1.0) < 1e-6);
}

TEST_CASE("integrate_unit_interval flags a non-integrable singularity") {
  auto f = [](double p) { return 1.0 / p; };
  CHECK_THROWS_AS(integrate_unit_interval(f, 1e-6), QuadratureError);
}

TEST_CASE("integrate_unit_interval log-type tail is reported in error") {
  // integral is exactly 1 but ~1.4e-3 of the mass lies below the subdivision
  // floor; the value must undershoot, never overshoot
  auto f = [](double p) {
    if (p >= 1.0) return 0.5;
    double lp = std::log(p);
    return (1.0 - p + p * lp) / (p * lp * lp);
  };
  QuadratureResult q = integrate_unit_interval(f, 1e-7);
  CHECK(q.value < 1.0);
  CHECK(q.value > 0.99);
  CHECK(q.value + q.error == doctest::Approx(1.0).epsilon(5e-3));
}
