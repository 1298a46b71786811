#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nsinfer/dataset.hpp"
#include "nsinfer/inference.hpp"

namespace nsinfer {

enum class DesignKind { identity, toeplitz, equicorrelation };

struct DesignSpec {
  DesignKind kind = DesignKind::identity;
  double rho = 0.0;
  Eigen::Index n = 0;
  Eigen::Index p = 0;
  std::string label() const;  // "identity", "toeplitz:0.4", "equicorr:0.01"
};

void validate(const DesignSpec& spec);

// Coefficients: signal on the first `sparsity` coordinates, zero elsewhere,
// then h added to the tested coordinate.
struct ModelSpec {
  Eigen::Index sparsity = 1;
  double signal = 0.0;
  double h = 0.0;
  Eigen::Index tested_index = 0;
  Vector coefficients(Eigen::Index p) const;
};

// 3 / sqrt(p), the per-coordinate magnitude used throughout the simulations.
double default_signal(Eigen::Index p);

Matrix covariance(const DesignSpec& spec);

// Plain lower-triangular factorization; reports the pivot index on failure.
Matrix cholesky_lower(const Matrix& sigma);

// n x p matrix with rows drawn i.i.d. from N(0, covariance(spec)).
Matrix sample_design(const DesignSpec& spec, std::uint64_t seed);

// Draw the design, then y_i ~ Bernoulli(f(beta' x_i)).
Dataset generate_dataset(const DesignSpec& design, const ModelSpec& model,
                         std::uint64_t seed);

struct CellResult {
  std::string design;
  Eigen::Index s = 0;
  double h = 0.0;
  int replications = 0;
  int completed = 0;
  int infeasible = 0;
  int failures = 0;
  int rejections = 0;
  double rejection_rate = 0.0;
  double se = 0.0;
  int covered = 0;
  double coverage = 0.0;
  double mean_ci_length = 0.0;
  int degenerate_intervals = 0;
  std::vector<double> z_scores;  // completed test replications, in seed order
};

struct ExperimentReport {
  std::string kind;  // "size", "power", or "coverage"
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<CellResult> cells;
};

struct ExperimentConfig {
  PipelineConfig pipeline;  // pipeline.threads drives replication parallelism
  Eigen::Index tested_index = 0;
  double signal_scale = 3.0;  // signal = signal_scale / sqrt(p)
};

// One cell per (design, sparsity); the null holds, so beta0 is the true
// tested coefficient and rejection_rate estimates the size.
ExperimentReport run_size_experiment(const std::vector<DesignSpec>& designs,
                                     const std::vector<Eigen::Index>& sparsities,
                                     int reps, double alpha,
                                     const ExperimentConfig& cfg, std::uint64_t seed);

// One cell per h: the tested coefficient is shifted by h while beta0 stays at
// the null value, so rejection_rate estimates the power.
ExperimentReport run_power_experiment(const DesignSpec& design, Eigen::Index s,
                                      const std::vector<double>& h_grid, int reps,
                                      double alpha, const ExperimentConfig& cfg,
                                      std::uint64_t seed);

// One cell per (design, sparsity); each replication inverts the test on a
// grid.  Pass a grid with lo >= hi to center it on the pilot estimate per
// replication; a nonpositive steps count falls back to the default 81.
ExperimentReport run_coverage_experiment(const std::vector<DesignSpec>& designs,
                                         const std::vector<Eigen::Index>& sparsities,
                                         int reps, double level, const GridSpec& grid,
                                         const ExperimentConfig& cfg,
                                         std::uint64_t seed);

}  // namespace nsinfer
