#include "dualband/analytics.h"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dualband {

double outage_probability(std::span<const UserApp> apps) {
  if (apps.empty()) throw std::invalid_argument("no applications");
  int ok = 0;
  for (const UserApp& ua : apps) ok += qos_indicator(ua);
  return 1.0 - static_cast<double>(ok) / static_cast<double>(apps.size());
}

double poisson_pmf(int k, double mean) {
  if (k < 0) return 0.0;
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
}

double poisson_cdf(int k, double mean) {
  if (k < 0) return 0.0;
  if (mean == 0.0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(k) + 1.0, mean);
}

double poisson_outage_cdf(double p_th, int a_t, double lambda_t1,
                          std::span<const double> rhos) {
  if (a_t <= 0) throw std::invalid_argument("A_t must be positive");
  double slack = (1.0 - p_th) * a_t - lambda_t1;
  if (p_th < 0.0 || !(slack > 0.0)) {
    throw std::domain_error("P_th outside [0, 1 - lambda1/A_t)");
  }
  double mean = std::accumulate(rhos.begin(), rhos.end(), 0.0);
  int k = static_cast<int>(std::floor(slack + 1e-9));
  return 1.0 - poisson_cdf(k, mean);
}

double lecam_bound(std::span<const double> rhos) {
  double s = 0.0;
  for (double p : rhos) s += p * p;
  return 2.0 * s;
}

std::vector<double> poisson_binomial_pmf(std::span<const double> rhos) {
  std::vector<double> pmf{1.0};
  for (double p : rhos) {
    std::vector<double> next(pmf.size() + 1, 0.0);
    for (std::size_t k = 0; k < pmf.size(); ++k) {
      next[k] += pmf[k] * (1.0 - p);
      next[k + 1] += pmf[k] * p;
    }
    pmf = std::move(next);
  }
  return pmf;
}

double l1_to_poisson(std::span<const double> pmf, double mean) {
  double d = 0.0;
  double covered = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    double q = poisson_pmf(static_cast<int>(k), mean);
    d += std::abs(pmf[k] - q);
    covered += q;
  }
  // Poisson mass beyond the support of `pmf`.
  return d + std::max(0.0, 1.0 - covered);
}

double ecdf(std::span<const double> samples, double x) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  auto n = std::count_if(samples.begin(), samples.end(),
                         [x](double v) { return v <= x; });
  return static_cast<double>(n) / static_cast<double>(samples.size());
}

MeanCi mean_ci95(std::span<const double> samples) {
  MeanCi out;
  if (samples.empty()) return out;
  double n = static_cast<double>(samples.size());
  out.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : samples) ss += (v - out.mean) * (v - out.mean);
  double half = samples.size() > 1 ? 1.96 * std::sqrt(ss / (n - 1.0) / n) : 0.0;
  out.low = out.mean - half;
  out.high = out.mean + half;
  return out;
}

}  // namespace dualband
