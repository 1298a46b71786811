#include "nsinfer/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nsinfer {

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

double ks_critical(std::size_t n, double alpha) {
  const double k = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double rn = std::sqrt(static_cast<double>(n));
  return k / (rn + 0.12 + 0.11 / rn);
}

double binomial_cdf(int k, int n, double p) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("binomial_cdf: bad parameters");
  }
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double lgn = std::lgamma(n + 1.0);
  double acc = 0.0;
  for (int i = 0; i <= k; ++i) {
    const double lterm =
        lgn - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) + i * lp + (n - i) * lq;
    acc += std::exp(lterm);
  }
  return std::min(acc, 1.0);
}

std::pair<int, int> binomial_accept_band(int n, double p, double tail) {
  int lo = 0;
  while (lo < n && binomial_cdf(lo, n, p) <= tail) ++lo;
  int hi = n;
  while (hi > 0 && 1.0 - binomial_cdf(hi - 1, n, p) <= tail) --hi;
  return {lo, hi};
}

}  // namespace nsinfer
