#pragma once

#include "nsinfer/dataset.hpp"
#include "nsinfer/linearize.hpp"
#include "nsinfer/lp.hpp"

namespace nsinfer {

struct MdsConfig {
  double eta = 0.0;
  double rho0 = 0.01;
  double feas_tol = 1e-8;
  SimplexOptions lp;
};

enum class MdsStatus { optimal, infeasible, solver_failure };

const char* mds_status_name(MdsStatus status);

// Output of one modified Dantzig selector program: minimize the l1 norm of
// the coefficient subject to a sup-norm bound on the design-residual
// correlation and a lower bound on the response-residual inner product, with
// the slack ratio rho optimized jointly over [rho0, 1].
struct MdsFit {
  Vector coef;
  double rho = 0.0;
  Vector residual;
  double sigma_hat = 0.0;  // ||residual||_2 / sqrt(n)
  double l1_norm = 0.0;
  MdsStatus status = MdsStatus::solver_failure;
  double corr_gap = 0.0;          // slack left in the sup-norm constraint
  double energy_gap = 0.0;        // slack left in the inner-product constraint
  double energy_floor_gap = 0.0;  // soft diagnostic: ||residual||^2 - rho0^2 ||r||^2 / 4
  int lp_iterations = 0;
};

// scale * sqrt(log(p) / n) with p the ambient dimension.
double default_eta(Eigen::Index n, Eigen::Index p, double scale);

// The LP behind solve_mds, exposed for oracle tests.  Variable layout:
// [theta_plus (p1) | theta_minus (p1) | rho - rho0 (1)].
struct MdsProgram {
  LpProblem lp;
  Eigen::Index p1 = 0;
};

MdsProgram build_mds_lp(const Vector& response, const Matrix& design,
                        const MdsConfig& cfg);

// Solve min ||theta||_1 over (theta, rho), rho in [rho0, 1], subject to
//   ||D' (r - D theta)||_inf <= eta * rho * sqrt(n) * ||r||_2
//   r' (r - D theta) >= rho0 * rho * ||r||_2^2 / 2.
// Infeasibility is reported through the status, never silently relaxed.
MdsFit solve_mds(const Vector& response, const Matrix& design, const MdsConfig& cfg);

// Program for the working residual: response v, design w.
MdsFit fit_theta(const LinearizedData& ld, const MdsConfig& cfg);

// Program for the tested column: response z, design w.
MdsFit fit_pi(const LinearizedData& ld, const MdsConfig& cfg);

}  // namespace nsinfer
