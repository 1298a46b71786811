#include "nsinfer/mds.hpp"

#include <cmath>

#include "nsinfer/errors.hpp"

namespace nsinfer {

namespace {

void validate_inputs(const Vector& response, const Matrix& design, const MdsConfig& cfg) {
  if (!(cfg.eta > 0.0) || !std::isfinite(cfg.eta))
    throw ConfigError("mds eta must be finite and positive");
  if (!(cfg.rho0 > 0.0 && cfg.rho0 < 1.0))
    throw ConfigError("mds rho0 must lie in (0, 1)");
  if (!(cfg.feas_tol > 0.0)) throw ConfigError("mds feas_tol must be positive");
  if (design.rows() < 2) throw DataError("mds design needs at least 2 rows");
  if (design.cols() < 1) throw DataError("mds design needs at least 1 column");
  if (response.size() != design.rows())
    throw DataError("mds response length does not match design");
  if (!response.allFinite() || !design.allFinite())
    throw DataError("mds inputs must be finite");
  if (response.norm() == 0.0) throw DataError("mds response has zero norm");
}

}  // namespace

const char* mds_status_name(MdsStatus status) {
  switch (status) {
    case MdsStatus::optimal: return "optimal";
    case MdsStatus::infeasible: return "infeasible";
    case MdsStatus::solver_failure: return "solver_failure";
  }
  return "unknown";
}

double default_eta(Eigen::Index n, Eigen::Index p, double scale) {
  if (n < 1 || p < 2) throw ConfigError("default_eta needs n >= 1 and p >= 2");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw ConfigError("default_eta scale must be finite and positive");
  return scale * std::sqrt(std::log(static_cast<double>(p)) / static_cast<double>(n));
}

MdsProgram build_mds_lp(const Vector& response, const Matrix& design,
                        const MdsConfig& cfg) {
  validate_inputs(response, design, cfg);
  const Eigen::Index n = design.rows();
  const Eigen::Index p1 = design.cols();
  const double s = response.norm();
  const double s2 = s * s;
  const double corr_unit = cfg.eta * std::sqrt(static_cast<double>(n)) * s;

  Vector g = design.transpose() * response;
  Matrix m = design.transpose() * design;

  MdsProgram prog;
  prog.p1 = p1;
  const Eigen::Index nrows = 2 * p1 + 2;
  const Eigen::Index ncols = 2 * p1 + 1;
  prog.lp.a = Matrix::Zero(nrows, ncols);
  prog.lp.b.resize(nrows);
  prog.lp.c = Vector::Zero(ncols);
  prog.lp.c.head(2 * p1).setOnes();

  for (Eigen::Index j = 0; j < p1; ++j) {
    // g_j - (M theta)_j <= eta rho sqrt(n) s, written with rho = rho0 + r'.
    prog.lp.a.row(2 * j).head(p1) = -m.row(j);
    prog.lp.a.row(2 * j).segment(p1, p1) = m.row(j);
    prog.lp.a(2 * j, 2 * p1) = -corr_unit;
    prog.lp.b(2 * j) = cfg.rho0 * corr_unit - g(j);
    // (M theta)_j - g_j <= eta rho sqrt(n) s.
    prog.lp.a.row(2 * j + 1).head(p1) = m.row(j);
    prog.lp.a.row(2 * j + 1).segment(p1, p1) = -m.row(j);
    prog.lp.a(2 * j + 1, 2 * p1) = -corr_unit;
    prog.lp.b(2 * j + 1) = cfg.rho0 * corr_unit + g(j);
  }
  // r' (r - D theta) >= rho0 rho s^2 / 2  becomes  g' theta + (rho0 s^2/2) r' <= s^2 (1 - rho0^2/2).
  const Eigen::Index er = 2 * p1;
  prog.lp.a.row(er).head(p1) = g.transpose();
  prog.lp.a.row(er).segment(p1, p1) = -g.transpose();
  prog.lp.a(er, 2 * p1) = cfg.rho0 * s2 / 2.0;
  prog.lp.b(er) = s2 * (1.0 - cfg.rho0 * cfg.rho0 / 2.0);
  // rho <= 1.
  prog.lp.a(er + 1, 2 * p1) = 1.0;
  prog.lp.b(er + 1) = 1.0 - cfg.rho0;
  return prog;
}

MdsFit solve_mds(const Vector& response, const Matrix& design, const MdsConfig& cfg) {
  MdsProgram prog = build_mds_lp(response, design, cfg);
  LpSolution lp = solve_lp(prog.lp, cfg.lp);

  MdsFit fit;
  fit.lp_iterations = lp.iterations;
  if (lp.status == LpStatus::infeasible) {
    fit.status = MdsStatus::infeasible;
    return fit;
  }
  if (lp.status != LpStatus::optimal) {
    fit.status = MdsStatus::solver_failure;
    return fit;
  }

  const Eigen::Index p1 = prog.p1;
  const Eigen::Index n = design.rows();
  fit.coef = lp.x.head(p1) - lp.x.segment(p1, p1);
  fit.rho = std::clamp(cfg.rho0 + lp.x(2 * p1), cfg.rho0, 1.0);
  fit.residual = response - design * fit.coef;
  fit.sigma_hat = fit.residual.norm() / std::sqrt(static_cast<double>(n));
  fit.l1_norm = fit.coef.lpNorm<1>();

  // Re-verify both constraints directly, independent of the LP tableau.
  const double s = response.norm();
  const double corr_bound = cfg.eta * fit.rho * std::sqrt(static_cast<double>(n)) * s;
  fit.corr_gap = corr_bound - (design.transpose() * fit.residual).lpNorm<Eigen::Infinity>();
  fit.energy_gap = response.dot(fit.residual) - cfg.rho0 * fit.rho * s * s / 2.0;
  fit.energy_floor_gap =
      fit.residual.squaredNorm() - cfg.rho0 * cfg.rho0 * s * s / 4.0;
  const double corr_tol = cfg.feas_tol * (1.0 + corr_bound);
  const double energy_tol = cfg.feas_tol * (1.0 + s * s);
  if (fit.corr_gap < -corr_tol || fit.energy_gap < -energy_tol) {
    fit.status = MdsStatus::solver_failure;
    return fit;
  }
  fit.status = MdsStatus::optimal;
  return fit;
}

MdsFit fit_theta(const LinearizedData& ld, const MdsConfig& cfg) {
  return solve_mds(ld.v, ld.w, cfg);
}

MdsFit fit_pi(const LinearizedData& ld, const MdsConfig& cfg) {
  return solve_mds(ld.z, ld.w, cfg);
}

}  // namespace nsinfer
