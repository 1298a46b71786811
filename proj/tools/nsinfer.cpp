#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsinfer/csv.hpp"
#include "nsinfer/errors.hpp"
#include "nsinfer/inference.hpp"
#include "nsinfer/montecarlo.hpp"
#include "nsinfer/report.hpp"

namespace {

using namespace nsinfer;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitNumerical = 5;

struct PipelineOpts {
  double eta_scale = 0.5;
  double rho0 = 0.01;
  double lambda_scale = 1.0;
  double split_fraction = 0.5;
  std::uint64_t seed = 0;
  int threads = 1;

  PipelineConfig to_config() const {
    PipelineConfig cfg;
    cfg.eta_scale = eta_scale;
    cfg.rho0 = rho0;
    cfg.lambda_scale = lambda_scale;
    cfg.split_fraction = split_fraction;
    cfg.seed = seed;
    cfg.threads = threads;
    return cfg;
  }
};

struct DataOpts {
  std::string path;
  std::string response_col = "y";
  bool standardize = false;
};

struct OutputOpts {
  std::string out;  // file stem; empty writes nothing
  std::string format = "both";
};

void add_pipeline_flags(CLI::App* cmd, PipelineOpts& o) {
  cmd->add_option("--eta-scale", o.eta_scale,
                  "Scale on sqrt(log p / n) for the correlation bound")
      ->capture_default_str();
  cmd->add_option("--rho0", o.rho0, "Lower bound for the slack ratio rho")
      ->capture_default_str();
  cmd->add_option("--lambda-scale", o.lambda_scale,
                  "Scale on sqrt(log p / n) for the pilot lasso penalty")
      ->capture_default_str();
  cmd->add_option("--split-fraction", o.split_fraction,
                  "Fraction of rows assigned to the pilot half")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  cmd->add_option("--threads", o.threads, "Worker thread count")
      ->capture_default_str();
}

void add_data_flags(CLI::App* cmd, DataOpts& o) {
  cmd->add_option("--data", o.path, "CSV file with a header row")->required();
  cmd->add_option("--response-col", o.response_col, "Name of the binary response column")
      ->capture_default_str();
  cmd->add_flag("--standardize", o.standardize,
                "Center covariates and scale to unit variance");
}

void add_output_flags(CLI::App* cmd, OutputOpts& o) {
  cmd->add_option("--out", o.out, "Output file stem (writes <stem>.csv / <stem>.json)");
  cmd->add_option("--format", o.format, "Report format: csv, json, or both")
      ->check(CLI::IsMember({"csv", "json", "both"}))
      ->capture_default_str();
}

DesignSpec parse_design(const std::string& token, Eigen::Index n, Eigen::Index p) {
  DesignSpec spec;
  spec.n = n;
  spec.p = p;
  std::string name = token;
  std::string arg;
  if (auto pos = token.find(':'); pos != std::string::npos) {
    name = token.substr(0, pos);
    arg = token.substr(pos + 1);
  }
  if (name == "identity") {
    if (!arg.empty()) throw ConfigError("design 'identity' takes no parameter");
    spec.kind = DesignKind::identity;
  } else if (name == "toeplitz" || name == "equicorr") {
    spec.kind = name == "toeplitz" ? DesignKind::toeplitz : DesignKind::equicorrelation;
    try {
      std::size_t used = 0;
      spec.rho = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      throw ConfigError("design '" + token + "' needs a numeric parameter, e.g. " +
                        name + ":0.4");
    }
  } else {
    throw ConfigError("unknown design '" + token +
                      "' (expected identity, toeplitz:RHO, or equicorr:RHO)");
  }
  validate(spec);
  return spec;
}

Eigen::Index parse_sparsity(const std::string& token, Eigen::Index n, Eigen::Index p) {
  if (token == "n") return n;
  if (token == "p") return p;
  try {
    std::size_t used = 0;
    long v = std::stol(token, &used);
    if (used != token.size() || v < 1) throw std::invalid_argument(token);
    return static_cast<Eigen::Index>(v);
  } catch (const std::exception&) {
    throw ConfigError("bad sparsity '" + token + "' (expected a positive integer, n, or p)");
  }
}

void write_files(const ExperimentReport& report, const OutputOpts& out) {
  if (out.out.empty()) return;
  if (out.format == "csv" || out.format == "both")
    write_report(report, out.out + ".csv", "csv");
  if (out.format == "json" || out.format == "both")
    write_report(report, out.out + ".json", "json");
}

void write_single(const nlohmann::ordered_json& json_doc, const std::string& csv_body,
                  const OutputOpts& out) {
  if (out.out.empty()) return;
  if (out.format == "csv" || out.format == "both") {
    std::ofstream f(out.out + ".csv", std::ios::binary);
    if (!f) throw DataError("cannot open output file: " + out.out + ".csv");
    f << csv_body;
  }
  if (out.format == "json" || out.format == "both") {
    std::ofstream f(out.out + ".json", std::ios::binary);
    if (!f) throw DataError("cannot open output file: " + out.out + ".json");
    f << json_doc.dump(2) << "\n";
  }
}

void print_summary(const ExperimentReport& report) {
  std::printf("%s experiment, seed %llu\n", report.kind.c_str(),
              static_cast<unsigned long long>(report.seed));
  if (report.kind == "coverage") {
    std::printf("%-16s %6s %6s %6s %10s %10s %8s\n", "design", "s", "reps", "done",
                "coverage", "length", "se");
    for (const CellResult& c : report.cells)
      std::printf("%-16s %6lld %6d %6d %10.4f %10.4f %8.4f\n", c.design.c_str(),
                  static_cast<long long>(c.s), c.replications, c.completed,
                  c.coverage, c.mean_ci_length, c.se);
  } else {
    std::printf("%-16s %6s %8s %6s %6s %10s %8s\n", "design", "s", "h", "reps",
                "done", "rate", "se");
    for (const CellResult& c : report.cells)
      std::printf("%-16s %6lld %8.3f %6d %6d %10.4f %8.4f\n", c.design.c_str(),
                  static_cast<long long>(c.s), c.h, c.replications, c.completed,
                  c.rejection_rate, c.se);
  }
  for (const CellResult& c : report.cells)
    if (c.infeasible > 0 || c.failures > 0)
      std::printf("note: %s s=%lld h=%g had %d infeasible and %d failed replications\n",
                  c.design.c_str(), static_cast<long long>(c.s), c.h, c.infeasible,
                  c.failures);
}

int simulate_exit_code(const ExperimentReport& report) {
  int completed = 0, infeasible = 0, failures = 0;
  for (const CellResult& c : report.cells) {
    completed += c.completed;
    infeasible += c.infeasible;
    failures += c.failures;
  }
  if (completed > 0) return kExitOk;
  return infeasible >= failures ? kExitInfeasible : kExitNumerical;
}

const char* status_label(MdsStatus s) { return mds_status_name(s); }

int cmd_test(const DataOpts& data, const PipelineOpts& pipe, const OutputOpts& out,
             Eigen::Index tested_index, double beta0, double alpha) {
  Dataset ds = ingest_csv(data.path, {data.response_col, data.standardize});
  TestOutcome t = run_test(ds, tested_index, beta0, alpha, pipe.to_config());

  std::printf("test of coefficient %lld against %s\n",
              static_cast<long long>(tested_index), format_double(beta0).c_str());
  std::printf("  t_n       = %s\n", format_double(t.t_n).c_str());
  std::printf("  q_hat     = %s\n", format_double(t.q_hat).c_str());
  std::printf("  z_score   = %s\n", format_double(t.z_score).c_str());
  std::printf("  p_value   = %s\n", format_double(t.p_value).c_str());
  std::printf("  reject    = %s (alpha = %s)\n", t.reject ? "true" : "false",
              format_double(alpha).c_str());
  std::printf("  sigma_hat = %s\n", format_double(t.diagnostics.sigma_hat).c_str());
  std::printf("  theta fit = %s, pi fit = %s\n",
              status_label(t.diagnostics.theta_status),
              status_label(t.diagnostics.pi_status));

  nlohmann::ordered_json j;
  j["tested_index"] = tested_index;
  j["beta0"] = t.beta0;
  j["alpha"] = t.alpha;
  j["t_n"] = t.t_n;
  j["q_hat"] = t.q_hat;
  j["z_score"] = t.z_score;
  j["p_value"] = t.p_value;
  j["reject"] = t.reject;
  j["diagnostics"] = {{"theta_status", status_label(t.diagnostics.theta_status)},
                      {"pi_status", status_label(t.diagnostics.pi_status)},
                      {"sigma_hat", t.diagnostics.sigma_hat}};
  std::string csv =
      "tested_index,beta0,alpha,t_n,q_hat,z_score,p_value,reject,theta_status,"
      "pi_status,sigma_hat\n" +
      std::to_string(tested_index) + "," + format_double(t.beta0) + "," +
      format_double(t.alpha) + "," + format_double(t.t_n) + "," +
      format_double(t.q_hat) + "," + format_double(t.z_score) + "," +
      format_double(t.p_value) + "," + (t.reject ? "1" : "0") + "," +
      status_label(t.diagnostics.theta_status) + "," +
      status_label(t.diagnostics.pi_status) + "," +
      format_double(t.diagnostics.sigma_hat) + "\n";
  write_single(j, csv, out);
  return kExitOk;
}

int cmd_ci(const DataOpts& data, const PipelineOpts& pipe, const OutputOpts& out,
           Eigen::Index tested_index, double level, double grid_lo, double grid_hi,
           int grid_steps) {
  Dataset ds = ingest_csv(data.path, {data.response_col, data.standardize});
  PipelineConfig cfg = pipe.to_config();
  PreparedInference prep = prepare_inference(ds, tested_index, cfg);
  GridSpec grid{grid_lo, grid_hi, grid_steps};
  if (!(grid.lo < grid.hi)) {
    GridSpec fallback = default_grid(prep);
    grid.lo = fallback.lo;
    grid.hi = fallback.hi;
  }
  if (grid.steps < 3) grid.steps = 81;
  ConfidenceInterval ci = invert_grid(prep, level, grid, cfg.threads);

  std::printf("confidence interval for coefficient %lld at level %s\n",
              static_cast<long long>(tested_index), format_double(level).c_str());
  if (ci.degenerate)
    std::printf("  degenerate: every grid point rejected; least-rejected point %s\n",
                format_double(ci.lower).c_str());
  else
    std::printf("  [%s, %s]\n", format_double(ci.lower).c_str(),
                format_double(ci.upper).c_str());
  std::printf("  grid      = [%s, %s] with %d steps\n", format_double(grid.lo).c_str(),
              format_double(grid.hi).c_str(), grid.steps);
  std::printf("  estimate  = %s (%scontained)\n", format_double(ci.point_estimate).c_str(),
              ci.contains_point_estimate ? "" : "not ");
  if (!ci.contiguous)
    std::printf("  note: acceptance region is not contiguous on this grid\n");

  nlohmann::ordered_json j;
  j["tested_index"] = tested_index;
  j["level"] = ci.level;
  j["lower"] = ci.lower;
  j["upper"] = ci.upper;
  j["grid"] = {{"lo", ci.grid.lo}, {"hi", ci.grid.hi}, {"steps", ci.grid.steps}};
  j["point_estimate"] = ci.point_estimate;
  j["contains_point_estimate"] = ci.contains_point_estimate;
  j["degenerate"] = ci.degenerate;
  j["contiguous"] = ci.contiguous;
  j["accepted_count"] = ci.accepted_count;
  std::string csv =
      "tested_index,level,lower,upper,grid_lo,grid_hi,grid_steps,point_estimate,"
      "contains_point_estimate,degenerate,contiguous,accepted_count\n" +
      std::to_string(tested_index) + "," + format_double(ci.level) + "," +
      format_double(ci.lower) + "," + format_double(ci.upper) + "," +
      format_double(ci.grid.lo) + "," + format_double(ci.grid.hi) + "," +
      std::to_string(ci.grid.steps) + "," + format_double(ci.point_estimate) + "," +
      (ci.contains_point_estimate ? "1" : "0") + "," + (ci.degenerate ? "1" : "0") +
      "," + (ci.contiguous ? "1" : "0") + "," + std::to_string(ci.accepted_count) +
      "\n";
  write_single(j, csv, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment-based tests and confidence intervals for one coefficient "
               "of a high-dimensional logistic regression"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");
  bool print_config = false;
  app.add_flag("--print-config", print_config,
               "Print the effective configuration and exit");

  // test
  auto* test_cmd = app.add_subcommand("test", "Test one coefficient on a CSV dataset");
  DataOpts test_data;
  PipelineOpts test_pipe;
  OutputOpts test_out;
  Eigen::Index test_index = 0;
  double test_beta0 = 0.0, test_alpha = 0.05;
  add_data_flags(test_cmd, test_data);
  add_pipeline_flags(test_cmd, test_pipe);
  add_output_flags(test_cmd, test_out);
  test_cmd->add_option("--tested-index", test_index, "Zero-based coefficient index")
      ->capture_default_str();
  test_cmd->add_option("--beta0", test_beta0, "Hypothesized coefficient value")
      ->capture_default_str();
  test_cmd->add_option("--alpha", test_alpha, "Test size")->capture_default_str();

  // ci
  auto* ci_cmd = app.add_subcommand("ci", "Confidence interval for one coefficient");
  DataOpts ci_data;
  PipelineOpts ci_pipe;
  OutputOpts ci_out;
  Eigen::Index ci_index = 0;
  double ci_level = 0.95;
  double ci_grid_lo = 0.0, ci_grid_hi = 0.0;
  int ci_grid_steps = 81;
  add_data_flags(ci_cmd, ci_data);
  add_pipeline_flags(ci_cmd, ci_pipe);
  add_output_flags(ci_cmd, ci_out);
  ci_cmd->add_option("--tested-index", ci_index, "Zero-based coefficient index")
      ->capture_default_str();
  ci_cmd->add_option("--level", ci_level, "Coverage level")->capture_default_str();
  ci_cmd->add_option("--grid-lo", ci_grid_lo,
                     "Lower grid bound (default: centered on the pilot estimate)");
  ci_cmd->add_option("--grid-hi", ci_grid_hi, "Upper grid bound");
  ci_cmd->add_option("--grid-steps", ci_grid_steps, "Number of grid points")
      ->capture_default_str();

  // shared simulation options
  struct SimOpts {
    PipelineOpts pipe;
    OutputOpts out;
    Eigen::Index n = 200, p = 500, tested_index = 0;
    int reps = 100;
    std::vector<std::string> designs;
    std::vector<std::string> sparsities;
  };
  auto add_sim_flags = [](CLI::App* cmd, SimOpts& o, bool multi_design) {
    add_pipeline_flags(cmd, o.pipe);
    add_output_flags(cmd, o.out);
    cmd->add_option("--n", o.n, "Sample size")->capture_default_str();
    cmd->add_option("--p", o.p, "Number of covariates")->capture_default_str();
    cmd->add_option("--reps", o.reps, "Replications per cell")->capture_default_str();
    cmd->add_option("--tested-index", o.tested_index, "Zero-based coefficient index")
        ->capture_default_str();
    cmd->add_option("--design", o.designs,
                    multi_design
                        ? "Designs (default: toeplitz:0.4 identity equicorr:0.01)"
                        : "Design (default: toeplitz:0.4; first entry used)")
        ->delimiter(',');
    cmd->add_option("--sparsity", o.sparsities,
                    multi_design ? "Sparsity levels (default: 10 20 50 100 n p)"
                                 : "Sparsity level (default: 10; first entry used)")
        ->delimiter(',');
  };

  auto* size_cmd = app.add_subcommand("simulate-size", "Null rejection rate campaign");
  SimOpts size_opts;
  double size_alpha = 0.05;
  add_sim_flags(size_cmd, size_opts, true);
  size_cmd->add_option("--alpha", size_alpha, "Test size")->capture_default_str();

  auto* power_cmd = app.add_subcommand("simulate-power", "Power curve campaign");
  SimOpts power_opts;
  double power_alpha = 0.05;
  std::vector<double> h_grid;
  add_sim_flags(power_cmd, power_opts, false);
  power_cmd->add_option("--alpha", power_alpha, "Test size")->capture_default_str();
  power_cmd
      ->add_option("--h-grid", h_grid,
                   "Offsets added to the tested coefficient (default: 0 0.2 0.4 "
                   "0.6 0.8 1)")
      ->delimiter(',');

  auto* cov_cmd = app.add_subcommand("simulate-coverage", "Interval coverage campaign");
  SimOpts cov_opts;
  double cov_level = 0.95;
  double cov_grid_lo = 0.0, cov_grid_hi = 0.0;
  int cov_grid_steps = 81;
  add_sim_flags(cov_cmd, cov_opts, true);
  cov_cmd->add_option("--level", cov_level, "Coverage level")->capture_default_str();
  cov_cmd->add_option("--grid-lo", cov_grid_lo,
                      "Lower grid bound (default: centered on the pilot estimate)");
  cov_cmd->add_option("--grid-hi", cov_grid_hi, "Upper grid bound");
  cov_cmd->add_option("--grid-steps", cov_grid_steps, "Number of grid points")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (print_config) {
    std::cout << app.config_to_str(true, false);
    return kExitOk;
  }

  try {
    if (app.got_subcommand(test_cmd))
      return cmd_test(test_data, test_pipe, test_out, test_index, test_beta0,
                      test_alpha);

    if (app.got_subcommand(ci_cmd))
      return cmd_ci(ci_data, ci_pipe, ci_out, ci_index, ci_level, ci_grid_lo,
                    ci_grid_hi, ci_grid_steps);

    if (app.got_subcommand(size_cmd) || app.got_subcommand(cov_cmd)) {
      SimOpts& o = app.got_subcommand(size_cmd) ? size_opts : cov_opts;
      if (o.designs.empty())
        o.designs = {"toeplitz:0.4", "identity", "equicorr:0.01"};
      if (o.sparsities.empty()) o.sparsities = {"10", "20", "50", "100", "n", "p"};
      std::vector<DesignSpec> designs;
      for (const std::string& d : o.designs)
        designs.push_back(parse_design(d, o.n, o.p));
      std::vector<Eigen::Index> sparsities;
      for (const std::string& s : o.sparsities)
        sparsities.push_back(parse_sparsity(s, o.n, o.p));

      ExperimentConfig cfg;
      cfg.pipeline = o.pipe.to_config();
      cfg.tested_index = o.tested_index;

      ExperimentReport report;
      if (app.got_subcommand(size_cmd)) {
        report = run_size_experiment(designs, sparsities, o.reps, size_alpha, cfg,
                                     o.pipe.seed);
      } else {
        GridSpec grid{cov_grid_lo, cov_grid_hi, cov_grid_steps};
        report = run_coverage_experiment(designs, sparsities, o.reps, cov_level,
                                         grid, cfg, o.pipe.seed);
      }
      report.config.emplace_back("n", std::to_string(o.n));
      report.config.emplace_back("p", std::to_string(o.p));
      print_summary(report);
      write_files(report, o.out);
      return simulate_exit_code(report);
    }

    if (app.got_subcommand(power_cmd)) {
      SimOpts& o = power_opts;
      if (o.designs.empty()) o.designs = {"toeplitz:0.4"};
      if (o.sparsities.empty()) o.sparsities = {"10"};
      if (h_grid.empty()) h_grid = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
      DesignSpec design = parse_design(o.designs.front(), o.n, o.p);
      Eigen::Index s = parse_sparsity(o.sparsities.front(), o.n, o.p);

      ExperimentConfig cfg;
      cfg.pipeline = o.pipe.to_config();
      cfg.tested_index = o.tested_index;
      ExperimentReport report =
          run_power_experiment(design, s, h_grid, o.reps, power_alpha, cfg, o.pipe.seed);
      report.config.emplace_back("n", std::to_string(o.n));
      report.config.emplace_back("p", std::to_string(o.p));
      print_summary(report);
      write_files(report, o.out);
      return simulate_exit_code(report);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
