#include "nsinfer/inference.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nsinfer/errors.hpp"
#include "nsinfer/normal.hpp"
#include "nsinfer/parallel.hpp"

namespace nsinfer {

namespace {

void validate_pipeline(const PipelineConfig& cfg) {
  if (!(cfg.split_fraction > 0.0 && cfg.split_fraction < 1.0))
    throw ConfigError("split_fraction must lie in (0, 1)");
  if (!(cfg.lambda_scale >= 0.0) || !std::isfinite(cfg.lambda_scale))
    throw ConfigError("lambda_scale must be finite and nonnegative");
  if (!(cfg.eta_scale > 0.0) || !std::isfinite(cfg.eta_scale))
    throw ConfigError("eta_scale must be finite and positive");
  if (!(cfg.rho0 > 0.0 && cfg.rho0 < 1.0))
    throw ConfigError("rho0 must lie in (0, 1)");
  if (cfg.threads < 1) throw ConfigError("threads must be at least 1");
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ConfigError("alpha must lie in (0, 1)");
}

void require_usable(const MdsFit& fit, Stage stage) {
  if (fit.status == MdsStatus::infeasible)
    throw InfeasibleError(stage, "moment program has no feasible point");
  if (fit.status != MdsStatus::optimal)
    throw NumericalError(stage, "moment program solver failed");
}

TestOutcome statistic_from(const MdsFit& theta_fit, const MdsFit& pi_fit,
                           Eigen::Index n, double beta0, double alpha) {
  require_alpha(alpha);
  require_usable(theta_fit, Stage::mds_theta);
  require_usable(pi_fit, Stage::mds_pi);

  TestOutcome out;
  out.alpha = alpha;
  out.beta0 = beta0;
  out.diagnostics.theta_status = theta_fit.status;
  out.diagnostics.pi_status = pi_fit.status;
  out.diagnostics.sigma_hat = theta_fit.sigma_hat;

  const double nd = static_cast<double>(n);
  out.q_hat = pi_fit.residual.squaredNorm() / nd;
  if (!(theta_fit.sigma_hat > 0.0))
    throw NumericalError(Stage::statistic, "residual scale sigma_hat is zero");
  if (!(out.q_hat > 0.0))
    throw NumericalError(Stage::statistic, "variance estimate q_hat is zero");

  out.t_n = pi_fit.residual.dot(theta_fit.residual) / (std::sqrt(nd) * theta_fit.sigma_hat);
  out.z_score = out.t_n / std::sqrt(out.q_hat);
  out.p_value = 2.0 * (1.0 - normal_cdf(std::abs(out.z_score)));
  out.reject = std::abs(out.t_n) > std::sqrt(out.q_hat) * normal_quantile(1.0 - alpha / 2.0);
  return out;
}

}  // namespace

PreparedInference prepare_inference(const Dataset& ds, Eigen::Index tested_index,
                                    const PipelineConfig& cfg) {
  validate_pipeline(cfg);
  validate(ds);
  if (tested_index < 0 || tested_index >= ds.p())
    throw ConfigError("tested_index out of range");

  PreparedInference prep;
  prep.tested_index = tested_index;
  prep.split = split_samples(ds, cfg.split_fraction, cfg.seed);

  LassoConfig lasso = cfg.lasso;
  lasso.lambda = default_lambda(prep.split.d1.n(), ds.p(), cfg.lambda_scale);
  prep.pilot = fit_logistic_lasso(prep.split.d1, lasso);

  prep.ld = linearize(prep.split.d2, prep.pilot.beta_hat, tested_index, 0.0);

  prep.mds.eta = default_eta(prep.split.d2.n(), ds.p(), cfg.eta_scale);
  prep.mds.rho0 = cfg.rho0;
  prep.mds.feas_tol = cfg.feas_tol;
  prep.mds.lp = cfg.lp;
  prep.pi_fit = fit_pi(prep.ld, prep.mds);
  return prep;
}

TestOutcome test_statistic(const LinearizedData& ld, const MdsFit& theta_fit,
                           const MdsFit& pi_fit, double alpha) {
  return statistic_from(theta_fit, pi_fit, ld.v.size(), ld.beta0, alpha);
}

TestOutcome test_at(const PreparedInference& prep, double beta0, double alpha) {
  Vector v = prep.ld.y_new - beta0 * prep.ld.z;
  MdsFit theta_fit = solve_mds(v, prep.ld.w, prep.mds);
  return statistic_from(theta_fit, prep.pi_fit, v.size(), beta0, alpha);
}

TestOutcome run_test(const Dataset& ds, Eigen::Index tested_index, double beta0,
                     double alpha, const PipelineConfig& cfg) {
  PreparedInference prep = prepare_inference(ds, tested_index, cfg);
  return test_at(prep, beta0, alpha);
}

GridSpec default_grid(const PreparedInference& prep) {
  const Eigen::Index p = prep.ld.w.cols() + 1;
  const Eigen::Index n2 = prep.split.d2.n();
  const double center = prep.pilot.beta_hat(prep.tested_index);
  const double half =
      10.0 * std::sqrt(std::log(static_cast<double>(p)) / static_cast<double>(n2));
  return GridSpec{center - half, center + half, 81};
}

ConfidenceInterval invert_grid(const PreparedInference& prep, double level,
                               const GridSpec& grid, int threads) {
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("level must lie in (0, 1)");
  if (grid.steps < 3) throw ConfigError("grid needs at least 3 steps");
  if (!(grid.lo < grid.hi)) throw ConfigError("grid lo must be below hi");
  const double alpha = 1.0 - level;

  struct PointResult {
    bool accepted = false;
    double p_value = 0.0;
  };
  std::vector<PointResult> points(grid.steps);
  const double step = (grid.hi - grid.lo) / static_cast<double>(grid.steps - 1);
  parallel_for(grid.steps, threads, [&](int k) {
    const double beta0 = grid.lo + step * k;
    try {
      TestOutcome out = test_at(prep, beta0, alpha);
      points[k].accepted = !out.reject;
      points[k].p_value = out.p_value;
    } catch (const InfeasibleError&) {
      // No moment-compatible residual exists at this hypothesized value, so
      // the grid point cannot enter the acceptance region.
      points[k].accepted = false;
      points[k].p_value = 0.0;
    }
  });

  ConfidenceInterval ci;
  ci.level = level;
  ci.grid = grid;
  ci.point_estimate = prep.pilot.beta_hat(prep.tested_index);

  int first = -1, last = -1, count = 0;
  bool contiguous = true;
  for (int k = 0; k < grid.steps; ++k) {
    if (!points[k].accepted) continue;
    if (first < 0) first = k;
    if (last >= 0 && k > last + 1) contiguous = false;
    last = k;
    ++count;
  }
  ci.accepted_count = count;
  if (count == 0) {
    int best = 0;
    for (int k = 1; k < grid.steps; ++k)
      if (points[k].p_value > points[best].p_value) best = k;
    ci.degenerate = true;
    ci.contiguous = true;
    ci.lower = ci.upper = grid.lo + step * best;
  } else {
    ci.degenerate = false;
    ci.contiguous = contiguous;
    ci.lower = grid.lo + step * first;
    ci.upper = grid.lo + step * last;
  }
  ci.contains_point_estimate =
      !ci.degenerate && ci.lower <= ci.point_estimate && ci.point_estimate <= ci.upper;
  return ci;
}

ConfidenceInterval confidence_interval(const Dataset& ds, Eigen::Index tested_index,
                                       double level, const GridSpec& grid,
                                       const PipelineConfig& cfg) {
  PreparedInference prep = prepare_inference(ds, tested_index, cfg);
  return invert_grid(prep, level, grid, cfg.threads);
}

}  // namespace nsinfer
