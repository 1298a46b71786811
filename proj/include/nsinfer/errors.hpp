#pragma once

#include <stdexcept>
#include <string>

namespace nsinfer {

/// Pipeline stages, used to label errors and map CLI exit codes.
enum class Stage {
  config,
  data,
  lasso,
  linearize,
  mds_theta,
  mds_pi,
  statistic,
  experiment,
};

const char* stage_name(Stage s);

struct Error : std::runtime_error {
  Stage stage;
  Error(Stage s, const std::string& msg);
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(Stage::config, msg) {}
};

struct DataError : Error {
  explicit DataError(const std::string& msg) : Error(Stage::data, msg) {}
};

/// An MDS program (or its LP) had no feasible point; a first-class outcome,
/// thrown only when a caller needs a test statistic and cannot have one.
struct InfeasibleError : Error {
  InfeasibleError(Stage s, const std::string& msg) : Error(s, msg) {}
};

struct NumericalError : Error {
  NumericalError(Stage s, const std::string& msg) : Error(s, msg) {}
};

}  // namespace nsinfer
