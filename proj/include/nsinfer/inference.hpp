#pragma once

#include <cstdint>

#include "nsinfer/dataset.hpp"
#include "nsinfer/lasso.hpp"
#include "nsinfer/linearize.hpp"
#include "nsinfer/mds.hpp"

namespace nsinfer {

// Everything the split-sample pipeline needs besides the data itself.  The
// pilot lasso penalty is lambda_scale * sqrt(log p / n1); the correlation
// bound uses eta_scale * sqrt(log p / n2).
struct PipelineConfig {
  double split_fraction = 0.5;
  std::uint64_t seed = 0;
  double lambda_scale = 1.0;
  double eta_scale = 0.5;
  double rho0 = 0.01;
  double feas_tol = 1e-8;
  int threads = 1;
  LassoConfig lasso;  // lambda is derived, not read from here
  SimplexOptions lp;
};

struct FitDiagnostics {
  MdsStatus theta_status = MdsStatus::solver_failure;
  MdsStatus pi_status = MdsStatus::solver_failure;
  double sigma_hat = 0.0;
};

struct TestOutcome {
  double t_n = 0.0;
  double q_hat = 0.0;
  double z_score = 0.0;
  double p_value = 1.0;
  bool reject = false;
  double alpha = 0.0;
  double beta0 = 0.0;
  FitDiagnostics diagnostics;
};

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
};

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0;
  GridSpec grid;
  bool contains_point_estimate = false;
  double point_estimate = 0.0;    // pilot coefficient of the tested column
  bool degenerate = false;        // every grid point rejected
  bool contiguous = true;         // accepted grid points form one run
  int accepted_count = 0;
};

// Stages shared by every hypothesized value: split, pilot lasso fit,
// linearization, and the tested-column program.  Only the residual response
// and the theta program depend on beta0.
struct PreparedInference {
  SplitDataset split;
  LassoFit pilot;
  LinearizedData ld;
  MdsFit pi_fit;
  MdsConfig mds;
  Eigen::Index tested_index = 0;
};

PreparedInference prepare_inference(const Dataset& ds, Eigen::Index tested_index,
                                    const PipelineConfig& cfg);

// t_n = residual correlation scaled by sigma_hat; q_hat = mean square of the
// tested-column residual; reject iff |t_n| > sqrt(q_hat) * Phi^{-1}(1 - alpha/2).
TestOutcome test_statistic(const LinearizedData& ld, const MdsFit& theta_fit,
                           const MdsFit& pi_fit, double alpha);

TestOutcome test_at(const PreparedInference& prep, double beta0, double alpha);

TestOutcome run_test(const Dataset& ds, Eigen::Index tested_index, double beta0,
                     double alpha, const PipelineConfig& cfg);

// 81 points spanning the pilot estimate plus or minus 10 sqrt(log p / n2).
GridSpec default_grid(const PreparedInference& prep);

// Accept/reject the test at every grid point; the interval is the hull of the
// accepted points.  An empty acceptance region yields a degenerate interval
// collapsed onto the least-rejected grid point.
ConfidenceInterval invert_grid(const PreparedInference& prep, double level,
                               const GridSpec& grid, int threads);

ConfidenceInterval confidence_interval(const Dataset& ds, Eigen::Index tested_index,
                                       double level, const GridSpec& grid,
                                       const PipelineConfig& cfg);

}  // namespace nsinfer
