#include "nsinfer/normal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nsinfer {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * std::numbers::sqrt2_v<double> / 2.0);
}

double normal_pdf(double x) {
  constexpr double inv_sqrt_2pi = 0.3989422804014327;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("normal_quantile: argument must lie in (0, 1)");
  }
  if (q == 0.5) return 0.0;

  // Rational lower-tail approximation (Abramowitz & Stegun 26.2.23),
  // |error| < 4.5e-4, then Newton refinement against the erfc-based CDF.
  const double qt = q < 0.5 ? q : 1.0 - q;
  const double t = std::sqrt(-2.0 * std::log(qt));
  double x = t - (2.30753 + 0.27061 * t) / (1.0 + t * (0.99229 + 0.04481 * t));
  x = q < 0.5 ? -x : x;

  for (int it = 0; it < 3; ++it) {
    const double err = normal_cdf(x) - q;
    const double d = normal_pdf(x);
    if (d <= 0.0) break;
    x -= err / d;
  }
  return x;
}

}  // namespace nsinfer
