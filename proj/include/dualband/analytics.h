#pragma once

#include <span>
#include <vector>

#include "dualband/core_model.h"

namespace dualband {

// Fraction of UAs that missed their deadline. Every UA must have reached its
// deadline slot.
double outage_probability(std::span<const UserApp> apps);

// Probability that outage stays at or below p_th when the mmW successes of
// the slot are approximated by a Poisson law with mean sum(rhos).
double poisson_outage_cdf(double p_th, int a_t, double lambda_t1,
                          std::span<const double> rhos);

// Upper bound on the L1 distance between a Poisson-binomial law and the
// Poisson law of equal mean.
double lecam_bound(std::span<const double> rhos);

// Exact Poisson-binomial pmf over 0..n.
std::vector<double> poisson_binomial_pmf(std::span<const double> rhos);
double poisson_pmf(int k, double mean);
double poisson_cdf(int k, double mean);

// sum_k |p(k) - Poisson(k; mean)| over all k >= 0.
double l1_to_poisson(std::span<const double> pmf, double mean);

// Empirical CDF of `samples` evaluated at `x`.
double ecdf(std::span<const double> samples, double x);

struct MeanCi {
  double mean = 0.0;
  double low = 0.0;
  double high = 0.0;
};

// Normal-approximation 95% interval of the mean.
MeanCi mean_ci95(std::span<const double> samples);

}  // namespace dualband
