#include "dualband/analytics.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.h"

namespace dualband {
namespace {

TEST(OutageProbability, CountsMissedDeadlines) {
  std::vector<UserApp> apps(10);
  for (int i = 0; i < 10; ++i) {
    apps[i].id = i;
    apps[i].qos_class = 1;
    apps[i].total_bits = 1.0;
    apps[i].received_log = {i < 7 ? 1.0 : 0.0};
  }
  EXPECT_NEAR(outage_probability(apps), 0.3, 1e-15);
  EXPECT_THROW(outage_probability(std::vector<UserApp>{}),
               std::invalid_argument);
}

TEST(PoissonOutageCdf, WorkedExample) {
  std::vector<double> rhos = {1.0, 1.0};
  // floor(0.7 * 10 - 5) = 2, mean 2: 1 - e^-2 (1 + 2 + 2).
  double v = poisson_outage_cdf(0.3, 10, 5.0, rhos);
  EXPECT_NEAR(v, 1.0 - 5.0 * std::exp(-2.0), 1e-12);
  EXPECT_NEAR(v, 0.3233, 1e-4);
}

TEST(PoissonOutageCdf, MatchesDirectSummation) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    int a_t = 5 + rep % 40;
    std::vector<double> rhos(1 + rep % 25);
    for (double& r : rhos) r = u(rng);
    double mean = 0.0;
    for (double r : rhos) mean += r;
    double lambda1 = std::floor(u(rng) * a_t * 0.5);
    double p_max = 1.0 - lambda1 / a_t;
    double p_th = u(rng) * p_max * 0.999;
    int k = static_cast<int>(std::floor((1.0 - p_th) * a_t - lambda1 + 1e-9));
    EXPECT_NEAR(poisson_outage_cdf(p_th, a_t, lambda1, rhos),
                1.0 - oracle::poisson_cdf_direct(k, mean), 1e-10);
  }
}

TEST(PoissonOutageCdf, RejectsOutOfDomain) {
  std::vector<double> rhos = {0.5};
  EXPECT_THROW(poisson_outage_cdf(0.5, 10, 5.0, rhos), std::domain_error);
  EXPECT_THROW(poisson_outage_cdf(-0.1, 10, 0.0, rhos), std::domain_error);
}

TEST(LeCam, Example) {
  std::vector<double> rhos = {0.1, 0.2};
  EXPECT_NEAR(lecam_bound(rhos), 0.1, 1e-15);
}

TEST(PoissonBinomial, MatchesEnumeration) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n <= 12; ++n) {
    std::vector<double> p(n);
    for (double& x : p) x = u(rng);
    auto ours = poisson_binomial_pmf(p);
    auto ref = oracle::enumerate_bernoulli_sum(p);
    ASSERT_EQ(ours.size(), ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) {
      EXPECT_NEAR(ours[k], ref[k], 1e-13);
    }
  }
}

TEST(PoissonBinomial, L1DistanceMatchesDirect) {
  std::vector<double> p = {0.1, 0.3, 0.05, 0.2};
  auto pmf = poisson_binomial_pmf(p);
  EXPECT_NEAR(l1_to_poisson(pmf, 0.65), oracle::l1_poisson_direct(pmf, 0.65),
              1e-12);
}

TEST(Ecdf, StepFunction) {
  std::vector<double> s = {0.1, 0.2, 0.2, 0.5};
  EXPECT_EQ(ecdf(s, 0.0), 0.0);
  EXPECT_EQ(ecdf(s, 0.2), 0.75);
  EXPECT_EQ(ecdf(s, 1.0), 1.0);
}

TEST(MeanCi, NormalApproximation) {
  std::vector<double> s = {1.0, 2.0, 3.0, 4.0};
  MeanCi ci = mean_ci95(s);
  EXPECT_DOUBLE_EQ(ci.mean, 2.5);
  double half = 1.96 * std::sqrt((1.25 * 4.0 / 3.0) / 4.0);
  EXPECT_NEAR(ci.high - ci.mean, half, 1e-12);
  EXPECT_NEAR(ci.mean - ci.low, half, 1e-12);
}

TEST(PoissonPmf, Basics) {
  EXPECT_NEAR(poisson_pmf(2, 2.0), 2.0 * std::exp(-2.0), 1e-15);
  EXPECT_EQ(poisson_pmf(0, 0.0), 1.0);
  EXPECT_EQ(poisson_cdf(-1, 1.0), 0.0);
}

TEST(PoissonOutageCdf, NonDecreasingInThreshold) {
  std::vector<double> rhos = {0.9, 0.4, 0.7, 0.2, 1.0, 0.55};
  double prev = 0.0;
  for (double p = 0.0; p < 1.0 - 3.0 / 20.0; p += 0.01) {
    double v = poisson_outage_cdf(p, 20, 3.0, rhos);
    EXPECT_GE(v, prev - 1e-15);
    prev = v;
  }
}

TEST(MmwSuccesses, MonteCarloMeanIsSumOfRho) {
  std::vector<double> rhos = {0.9, 0.15, 0.6, 0.35, 0.8};
  std::mt19937_64 rng(17);
  const int n = 100000;
  double sum = 0.0, expected = 0.0, var = 0.0;
  for (double p : rhos) {
    expected += p;
    var += p * (1.0 - p);
  }
  for (int i = 0; i < n; ++i) {
    for (double p : rhos) sum += std::bernoulli_distribution(p)(rng);
  }
  EXPECT_LE(std::abs(sum / n - expected), 3.0 * std::sqrt(var / n));
}

}  // namespace
}  // namespace dualband
