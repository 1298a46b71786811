#include "nsinfer/errors.hpp"

namespace nsinfer {

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::config: return "config";
    case Stage::data: return "data";
    case Stage::lasso: return "lasso";
    case Stage::linearize: return "linearize";
    case Stage::mds_theta: return "mds-theta";
    case Stage::mds_pi: return "mds-pi";
    case Stage::statistic: return "statistic";
    case Stage::experiment: return "experiment";
  }
  return "unknown";
}

Error::Error(Stage s, const std::string& msg)
    : std::runtime_error(std::string("[") + stage_name(s) + "] " + msg), stage(s) {}

}  // namespace nsinfer
