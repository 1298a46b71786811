#include "nsinfer/lasso.hpp"

#include <cmath>

#include "nsinfer/errors.hpp"
#include "nsinfer/glm.hpp"

namespace nsinfer {

namespace {

double kkt_from_gradient(const Vector& grad, const Vector& beta, double lambda) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    double v;
    if (beta(j) == 0.0)
      v = std::max(0.0, std::abs(grad(j)) - lambda);
    else
      v = std::abs(grad(j) + lambda * (beta(j) > 0.0 ? 1.0 : -1.0));
    worst = std::max(worst, v);
  }
  return worst;
}

Vector prox_step(const Vector& base, const Vector& grad, double step, double lambda) {
  Vector out(base.size());
  for (Eigen::Index j = 0; j < base.size(); ++j)
    out(j) = soft_threshold(base(j) - step * grad(j), step * lambda);
  return out;
}

}  // namespace

double default_lambda(Eigen::Index n, Eigen::Index p, double scale) {
  if (n < 1 || p < 1) throw ConfigError("default_lambda needs n >= 1 and p >= 1");
  if (!(scale >= 0.0) || !std::isfinite(scale))
    throw ConfigError("default_lambda scale must be finite and nonnegative");
  return scale * std::sqrt(std::log(static_cast<double>(p)) / static_cast<double>(n));
}

double soft_threshold(double z, double threshold) {
  if (z > threshold) return z - threshold;
  if (z < -threshold) return z + threshold;
  return 0.0;
}

double lasso_objective(const Dataset& ds, const Vector& beta, double lambda) {
  return neg_log_likelihood(ds, beta) + lambda * beta.lpNorm<1>();
}

double lasso_kkt_residual(const Dataset& ds, const Vector& beta, double lambda) {
  return kkt_from_gradient(nll_gradient(ds, beta), beta, lambda);
}

LassoFit fit_logistic_lasso(const Dataset& ds, const LassoConfig& config) {
  validate(ds);
  if (!(config.lambda >= 0.0) || !std::isfinite(config.lambda))
    throw ConfigError("lasso lambda must be finite and nonnegative");
  if (config.max_iters < 1) throw ConfigError("lasso max_iters must be positive");
  if (!(config.tol > 0.0)) throw ConfigError("lasso tol must be positive");
  if (!(config.step_init > 0.0)) throw ConfigError("lasso step_init must be positive");

  const Eigen::Index p = ds.p();
  Vector beta = Vector::Zero(p);
  Vector point = beta;
  double momentum = 1.0;
  double step = config.step_init;
  double obj = lasso_objective(ds, beta, config.lambda);
  double kkt = 0.0;

  LassoFit fit;
  int iter = 0;
  for (; iter < config.max_iters; ++iter) {
    Vector grad_beta = nll_gradient(ds, beta);
    kkt = kkt_from_gradient(grad_beta, beta, config.lambda);
    if (kkt <= config.tol) {
      fit.converged = true;
      break;
    }

    bool from_point = config.accelerate && (point - beta).lpNorm<Eigen::Infinity>() > 0.0;
    const Vector& base = from_point ? point : beta;
    Vector grad = from_point ? nll_gradient(ds, point) : grad_beta;
    double f_base = neg_log_likelihood(ds, base);
    step = std::min(step * 2.0, config.step_init);

    Vector next;
    while (true) {
      next = prox_step(base, grad, step, config.lambda);
      Vector d = next - base;
      double f_next = neg_log_likelihood(ds, next);
      double bound = f_base + grad.dot(d) + d.squaredNorm() / (2.0 * step);
      if (f_next <= bound + 1e-12) break;
      step *= 0.5;
      if (step < 1e-18)
        throw NumericalError(Stage::lasso, "line search step underflow");
    }

    double obj_next = lasso_objective(ds, next, config.lambda);
    if (config.accelerate) {
      // A momentum candidate must strictly improve; otherwise it can cycle
      // through equal-objective states near the optimum.  Plain steps from
      // beta always move downhill and are kept unconditionally.
      if (from_point && obj_next >= obj) {
        momentum = 1.0;
        point = beta;
        continue;
      }
      double momentum_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
      point = next + ((momentum - 1.0) / momentum_next) * (next - beta);
      momentum = momentum_next;
    }
    beta = next;
    obj = obj_next;
  }

  fit.beta_hat = beta;
  fit.objective = obj;
  fit.iters = iter;
  fit.kkt_residual = fit.converged ? kkt : lasso_kkt_residual(ds, beta, config.lambda);
  return fit;
}

}  // namespace nsinfer
