#include "nsinfer/montecarlo.hpp"

#include <cmath>
#include <cstdio>

#include "nsinfer/errors.hpp"
#include "nsinfer/glm.hpp"
#include "nsinfer/parallel.hpp"
#include "nsinfer/rng.hpp"

namespace nsinfer {

namespace {

std::string short_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string full_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void validate_model(const ModelSpec& model, Eigen::Index p) {
  if (model.sparsity < 1 || model.sparsity > p)
    throw ConfigError("model sparsity must lie in [1, p]");
  if (model.tested_index < 0 || model.tested_index >= p)
    throw ConfigError("model tested_index out of range");
  if (!std::isfinite(model.signal) || !std::isfinite(model.h))
    throw ConfigError("model signal and h must be finite");
}

enum class RepStatus { ok, infeasible, failed };

struct RepOutcome {
  RepStatus status = RepStatus::failed;
  bool reject = false;
  double z_score = 0.0;
  bool covered = false;
  bool degenerate = false;
  double length = 0.0;
};

// Test one synthetic replication; shared by the size and power harnesses.
RepOutcome run_test_rep(const DesignSpec& design, const ModelSpec& model,
                        double beta0, double alpha, const ExperimentConfig& cfg,
                        std::uint64_t rep_seed) {
  RepOutcome out;
  try {
    Dataset ds = generate_dataset(design, model, rep_seed);
    PipelineConfig pcfg = cfg.pipeline;
    pcfg.seed = rep_seed;
    pcfg.threads = 1;
    TestOutcome t = run_test(ds, model.tested_index, beta0, alpha, pcfg);
    out.status = RepStatus::ok;
    out.reject = t.reject;
    out.z_score = t.z_score;
  } catch (const InfeasibleError&) {
    out.status = RepStatus::infeasible;
  } catch (const Error&) {
    out.status = RepStatus::failed;
  }
  return out;
}

RepOutcome run_coverage_rep(const DesignSpec& design, const ModelSpec& model,
                            double truth, double level, const GridSpec& grid,
                            const ExperimentConfig& cfg, std::uint64_t rep_seed) {
  RepOutcome out;
  try {
    Dataset ds = generate_dataset(design, model, rep_seed);
    PipelineConfig pcfg = cfg.pipeline;
    pcfg.seed = rep_seed;
    pcfg.threads = 1;
    PreparedInference prep = prepare_inference(ds, model.tested_index, pcfg);
    GridSpec g = grid;
    if (g.steps < 3) g.steps = 81;
    if (!(g.lo < g.hi)) {
      GridSpec fallback = default_grid(prep);
      g.lo = fallback.lo;
      g.hi = fallback.hi;
    }
    ConfidenceInterval ci = invert_grid(prep, level, g, 1);
    out.status = RepStatus::ok;
    out.degenerate = ci.degenerate;
    out.covered = !ci.degenerate && ci.lower <= truth && truth <= ci.upper;
    out.length = ci.degenerate ? 0.0 : ci.upper - ci.lower;
  } catch (const InfeasibleError&) {
    out.status = RepStatus::infeasible;
  } catch (const Error&) {
    out.status = RepStatus::failed;
  }
  return out;
}

void reduce_test_cell(CellResult& cell, const std::vector<RepOutcome>& reps) {
  cell.replications = static_cast<int>(reps.size());
  for (const RepOutcome& r : reps) {
    switch (r.status) {
      case RepStatus::ok:
        ++cell.completed;
        if (r.reject) ++cell.rejections;
        cell.z_scores.push_back(r.z_score);
        break;
      case RepStatus::infeasible: ++cell.infeasible; break;
      case RepStatus::failed: ++cell.failures; break;
    }
  }
  if (cell.completed > 0) {
    cell.rejection_rate = static_cast<double>(cell.rejections) / cell.completed;
    cell.se = std::sqrt(cell.rejection_rate * (1.0 - cell.rejection_rate) /
                        cell.completed);
  }
}

void reduce_coverage_cell(CellResult& cell, const std::vector<RepOutcome>& reps) {
  cell.replications = static_cast<int>(reps.size());
  double length_sum = 0.0;
  int length_count = 0;
  for (const RepOutcome& r : reps) {
    switch (r.status) {
      case RepStatus::ok:
        ++cell.completed;
        if (r.covered) ++cell.covered;
        if (r.degenerate) {
          ++cell.degenerate_intervals;
        } else {
          length_sum += r.length;
          ++length_count;
        }
        break;
      case RepStatus::infeasible: ++cell.infeasible; break;
      case RepStatus::failed: ++cell.failures; break;
    }
  }
  if (cell.completed > 0) {
    cell.coverage = static_cast<double>(cell.covered) / cell.completed;
    cell.se = std::sqrt(cell.coverage * (1.0 - cell.coverage) / cell.completed);
  }
  if (length_count > 0) cell.mean_ci_length = length_sum / length_count;
}

void echo_common(ExperimentReport& report, const ExperimentConfig& cfg,
                 std::uint64_t seed) {
  const PipelineConfig& p = cfg.pipeline;
  report.config.emplace_back("seed", std::to_string(seed));
  report.config.emplace_back("tested_index", std::to_string(cfg.tested_index));
  report.config.emplace_back("signal_scale", full_double(cfg.signal_scale));
  report.config.emplace_back("split_fraction", full_double(p.split_fraction));
  report.config.emplace_back("lambda_scale", full_double(p.lambda_scale));
  report.config.emplace_back("eta_scale", full_double(p.eta_scale));
  report.config.emplace_back("rho0", full_double(p.rho0));
}

}  // namespace

std::string DesignSpec::label() const {
  switch (kind) {
    case DesignKind::identity: return "identity";
    case DesignKind::toeplitz: return "toeplitz:" + short_double(rho);
    case DesignKind::equicorrelation: return "equicorr:" + short_double(rho);
  }
  return "unknown";
}

void validate(const DesignSpec& spec) {
  if (spec.n < 2 || spec.p < 2) throw ConfigError("design needs n >= 2 and p >= 2");
  if (spec.kind == DesignKind::toeplitz && !(spec.rho > -1.0 && spec.rho < 1.0))
    throw ConfigError("toeplitz rho must lie in (-1, 1)");
  if (spec.kind == DesignKind::equicorrelation &&
      !(spec.rho >= 0.0 && spec.rho < 1.0))
    throw ConfigError("equicorrelation rho must lie in [0, 1)");
}

Vector ModelSpec::coefficients(Eigen::Index p) const {
  validate_model(*this, p);
  Vector beta = Vector::Zero(p);
  beta.head(sparsity).setConstant(signal);
  beta(tested_index) += h;
  return beta;
}

double default_signal(Eigen::Index p) {
  if (p < 1) throw ConfigError("default_signal needs p >= 1");
  return 3.0 / std::sqrt(static_cast<double>(p));
}

Matrix covariance(const DesignSpec& spec) {
  validate(spec);
  Matrix sigma = Matrix::Identity(spec.p, spec.p);
  switch (spec.kind) {
    case DesignKind::identity:
      break;
    case DesignKind::toeplitz:
      for (Eigen::Index i = 0; i < spec.p; ++i)
        for (Eigen::Index j = 0; j < spec.p; ++j)
          sigma(i, j) = std::pow(spec.rho, std::abs(static_cast<double>(i - j)));
      break;
    case DesignKind::equicorrelation:
      for (Eigen::Index i = 0; i < spec.p; ++i)
        for (Eigen::Index j = 0; j < spec.p; ++j)
          if (i != j) sigma(i, j) = spec.rho;
      break;
  }
  return sigma;
}

Matrix cholesky_lower(const Matrix& sigma) {
  const Eigen::Index p = sigma.rows();
  if (sigma.cols() != p) throw DataError("cholesky needs a square matrix");
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (std::abs(sigma(i, j) - sigma(j, i)) > 1e-12 * scale)
        throw DataError("cholesky input is not symmetric");

  Matrix l = Matrix::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    double d = sigma(j, j) - l.row(j).head(j).squaredNorm();
    if (d <= 0.0)
      throw NumericalError(Stage::experiment,
                           "covariance pivot " + std::to_string(j) +
                               " is not positive");
    l(j, j) = std::sqrt(d);
    for (Eigen::Index i = j + 1; i < p; ++i) {
      double v = sigma(i, j) - l.row(i).head(j).dot(l.row(j).head(j));
      l(i, j) = v / l(j, j);
    }
  }
  return l;
}

Matrix sample_design(const DesignSpec& spec, std::uint64_t seed) {
  validate(spec);
  CounterRng rng(seed, 0);
  Matrix x(spec.n, spec.p);
  for (Eigen::Index i = 0; i < spec.n; ++i)
    for (Eigen::Index j = 0; j < spec.p; ++j) x(i, j) = rng.next_normal();
  if (spec.kind == DesignKind::identity) return x;
  Matrix l = cholesky_lower(covariance(spec));
  return x * l.transpose();
}

Dataset generate_dataset(const DesignSpec& design, const ModelSpec& model,
                         std::uint64_t seed) {
  validate(design);
  Vector beta = model.coefficients(design.p);
  Dataset ds;
  ds.x = sample_design(design, seed);
  Vector u = ds.x * beta;
  CounterRng rng(seed, 1);
  ds.y.resize(design.n);
  for (Eigen::Index i = 0; i < design.n; ++i)
    ds.y(i) = rng.next_bernoulli(sigmoid(u(i))) ? 1.0 : 0.0;
  return ds;
}

ExperimentReport run_size_experiment(const std::vector<DesignSpec>& designs,
                                     const std::vector<Eigen::Index>& sparsities,
                                     int reps, double alpha,
                                     const ExperimentConfig& cfg, std::uint64_t seed) {
  if (designs.empty() || sparsities.empty())
    throw ConfigError("size experiment needs at least one design and sparsity");
  if (reps < 1) throw ConfigError("reps must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");

  ExperimentReport report;
  report.kind = "size";
  report.seed = seed;
  echo_common(report, cfg, seed);
  report.config.emplace_back("reps", std::to_string(reps));
  report.config.emplace_back("alpha", full_double(alpha));

  std::uint64_t cell_index = 0;
  for (const DesignSpec& design : designs) {
    for (Eigen::Index s : sparsities) {
      ModelSpec model;
      model.sparsity = s;
      model.signal = cfg.signal_scale / std::sqrt(static_cast<double>(design.p));
      model.h = 0.0;
      model.tested_index = cfg.tested_index;
      validate_model(model, design.p);
      const double beta0 = model.coefficients(design.p)(model.tested_index);

      const std::uint64_t cell_seed = CounterRng::mix(seed, cell_index++);
      std::vector<RepOutcome> outs(reps);
      parallel_for(reps, cfg.pipeline.threads, [&](int r) {
        outs[r] = run_test_rep(design, model, beta0, alpha, cfg,
                               CounterRng::mix(cell_seed, r));
      });

      CellResult cell;
      cell.design = design.label();
      cell.s = s;
      cell.h = 0.0;
      reduce_test_cell(cell, outs);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

ExperimentReport run_power_experiment(const DesignSpec& design, Eigen::Index s,
                                      const std::vector<double>& h_grid, int reps,
                                      double alpha, const ExperimentConfig& cfg,
                                      std::uint64_t seed) {
  if (h_grid.empty()) throw ConfigError("power experiment needs at least one h");
  if (reps < 1) throw ConfigError("reps must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  validate(design);

  ExperimentReport report;
  report.kind = "power";
  report.seed = seed;
  echo_common(report, cfg, seed);
  report.config.emplace_back("reps", std::to_string(reps));
  report.config.emplace_back("alpha", full_double(alpha));
  report.config.emplace_back("design", design.label());
  report.config.emplace_back("s", std::to_string(s));

  std::uint64_t cell_index = 0;
  for (double h : h_grid) {
    ModelSpec model;
    model.sparsity = s;
    model.signal = cfg.signal_scale / std::sqrt(static_cast<double>(design.p));
    model.h = h;
    model.tested_index = cfg.tested_index;
    validate_model(model, design.p);
    ModelSpec null_model = model;
    null_model.h = 0.0;
    const double beta0 = null_model.coefficients(design.p)(model.tested_index);

    const std::uint64_t cell_seed = CounterRng::mix(seed, cell_index++);
    std::vector<RepOutcome> outs(reps);
    parallel_for(reps, cfg.pipeline.threads, [&](int r) {
      outs[r] = run_test_rep(design, model, beta0, alpha, cfg,
                             CounterRng::mix(cell_seed, r));
    });

    CellResult cell;
    cell.design = design.label();
    cell.s = s;
    cell.h = h;
    reduce_test_cell(cell, outs);
    report.cells.push_back(std::move(cell));
  }
  return report;
}

ExperimentReport run_coverage_experiment(const std::vector<DesignSpec>& designs,
                                         const std::vector<Eigen::Index>& sparsities,
                                         int reps, double level, const GridSpec& grid,
                                         const ExperimentConfig& cfg,
                                         std::uint64_t seed) {
  if (designs.empty() || sparsities.empty())
    throw ConfigError("coverage experiment needs at least one design and sparsity");
  if (reps < 1) throw ConfigError("reps must be at least 1");
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("level must lie in (0, 1)");

  ExperimentReport report;
  report.kind = "coverage";
  report.seed = seed;
  echo_common(report, cfg, seed);
  report.config.emplace_back("reps", std::to_string(reps));
  report.config.emplace_back("level", full_double(level));
  report.config.emplace_back("grid_lo", full_double(grid.lo));
  report.config.emplace_back("grid_hi", full_double(grid.hi));
  report.config.emplace_back("grid_steps", std::to_string(grid.steps));

  std::uint64_t cell_index = 0;
  for (const DesignSpec& design : designs) {
    for (Eigen::Index s : sparsities) {
      ModelSpec model;
      model.sparsity = s;
      model.signal = cfg.signal_scale / std::sqrt(static_cast<double>(design.p));
      model.h = 0.0;
      model.tested_index = cfg.tested_index;
      validate_model(model, design.p);
      const double truth = model.coefficients(design.p)(model.tested_index);

      const std::uint64_t cell_seed = CounterRng::mix(seed, cell_index++);
      std::vector<RepOutcome> outs(reps);
      parallel_for(reps, cfg.pipeline.threads, [&](int r) {
        outs[r] = run_coverage_rep(design, model, truth, level, grid, cfg,
                                   CounterRng::mix(cell_seed, r));
      });

      CellResult cell;
      cell.design = design.label();
      cell.s = s;
      cell.h = 0.0;
      reduce_coverage_cell(cell, outs);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

}  // namespace nsinfer
