#pragma once

namespace nsinfer {

/// Standard normal CDF via erfc.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Inverse standard normal CDF for q in (0, 1); absolute error below 1e-12.
/// Rational initial guess refined by Newton steps against normal_cdf.
double normal_quantile(double q);

}  // namespace nsinfer
