#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace nsinfer {

/// One-sample Kolmogorov-Smirnov statistic of `sample` against the
/// distribution with CDF `cdf` (sup-norm distance of the empirical CDF).
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Approximate critical value of the KS statistic at significance `alpha`
/// (Stephens' small-sample adjustment of the asymptotic quantile).
double ks_critical(std::size_t n, double alpha);

/// P(Bin(n, p) <= k), exact summation in log space.
double binomial_cdf(int k, int n, double p);

/// Equal-tailed exact acceptance band for an observed count out of n trials
/// at success probability p: counts k with P(X <= k) > tail and
/// P(X >= k) > tail. Returned as {lo, hi} inclusive.
std::pair<int, int> binomial_accept_band(int n, double p, double tail);

}  // namespace nsinfer
