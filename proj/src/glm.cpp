#include "nsinfer/glm.hpp"

#include <cmath>
#include <string>

#include "nsinfer/errors.hpp"

namespace nsinfer {

double sigmoid(double u) {
  // tanh formulation: symmetric (f(u) + f(-u) == 1 exactly) and saturates
  // without touching exp of a large argument.
  return 0.5 + 0.5 * std::tanh(0.5 * u);
}

double dsigmoid(double u) {
  const double e = std::exp(-std::abs(u));
  return e / ((1.0 + e) * (1.0 + e));
}

double softplus(double u) {
  if (u > 0.0) return u + std::log1p(std::exp(-u));
  return std::log1p(std::exp(u));
}

namespace {

void check_dims(const Dataset& ds, const Vector& beta) {
  if (beta.size() != ds.p()) {
    throw DataError("coefficient length " + std::to_string(beta.size()) +
                    " does not match p = " + std::to_string(ds.p()));
  }
}

}  // namespace

double neg_log_likelihood(const Dataset& ds, const Vector& beta) {
  check_dims(ds, beta);
  const Vector u = ds.x * beta;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    acc += softplus(u[i]) - ds.y[i] * u[i];
  }
  return acc / static_cast<double>(ds.n());
}

Vector nll_gradient(const Dataset& ds, const Vector& beta) {
  check_dims(ds, beta);
  const Vector u = ds.x * beta;
  Vector resid(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    resid[i] = sigmoid(u[i]) - ds.y[i];
  }
  return ds.x.transpose() * resid / static_cast<double>(ds.n());
}

}  // namespace nsinfer
