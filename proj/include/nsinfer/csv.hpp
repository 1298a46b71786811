#pragma once

#include <string>

#include "nsinfer/dataset.hpp"

namespace nsinfer {

struct IngestOptions {
  std::string response_col = "y";
  bool standardize = false;  // center covariates and scale to unit variance
};

// Read a comma-separated file with a header row.  The named response column
// must be binary; every other column is a numeric covariate.
Dataset ingest_csv(const std::string& path, const IngestOptions& opts);

}  // namespace nsinfer
