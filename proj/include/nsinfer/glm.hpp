#pragma once

#include "nsinfer/dataset.hpp"

namespace nsinfer {

/// Logistic link e^u / (1 + e^u), stable over the whole double range.
double sigmoid(double u);

/// Derivative of the logistic link; in (0, 0.25].
double dsigmoid(double u);

/// log(1 + e^u) without overflow.
double softplus(double u);

/// Average negative log-likelihood (1/n) sum_i [-y_i u_i + log(1 + e^{u_i})]
/// with u = X beta.
double neg_log_likelihood(const Dataset& ds, const Vector& beta);

/// Gradient of neg_log_likelihood: (1/n) X^T (f(X beta) - y).
Vector nll_gradient(const Dataset& ds, const Vector& beta);

}  // namespace nsinfer
