#pragma once

#include "nsinfer/dataset.hpp"

namespace nsinfer {

struct LassoConfig {
  double lambda = 0.0;
  int max_iters = 10000;
  double tol = 1e-7;        // stationarity residual target
  double step_init = 1.0;
  bool accelerate = false;  // momentum with restart on objective increase
};

struct LassoFit {
  Vector beta_hat;
  double objective = 0.0;
  int iters = 0;
  double kkt_residual = 0.0;
  bool converged = false;
};

// scale * sqrt(log(p) / n), the usual penalty level for the pilot fit.
double default_lambda(Eigen::Index n, Eigen::Index p, double scale);

double soft_threshold(double z, double threshold);

// Mean logistic deviance plus lambda * l1 norm.
double lasso_objective(const Dataset& ds, const Vector& beta, double lambda);

// Max over coordinates of the subgradient optimality violation: for a zero
// coordinate the excess of |grad| over lambda, otherwise |grad + lambda sign|.
double lasso_kkt_residual(const Dataset& ds, const Vector& beta, double lambda);

// Proximal gradient descent with backtracking line search from beta = 0.
LassoFit fit_logistic_lasso(const Dataset& ds, const LassoConfig& config);

}  // namespace nsinfer
