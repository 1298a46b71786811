#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace nsinfer {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Design matrix plus binary response. Covariates are unitless; no intercept
/// column is modeled or prepended.
struct Dataset {
  Matrix x;  // n x p
  Vector y;  // entries exactly 0 or 1

  Eigen::Index n() const { return x.rows(); }
  Eigen::Index p() const { return x.cols(); }
};

/// Throws DataError unless n >= 2, p >= 2, y is exactly 0/1 and x is finite.
void validate(const Dataset& ds);

/// Index-disjoint halves of a parent dataset: d1 for estimation, d2 for
/// inference.
struct SplitDataset {
  Dataset d1;
  Dataset d2;
  std::vector<Eigen::Index> idx1;
  std::vector<Eigen::Index> idx2;
  std::uint64_t split_seed = 0;
};

/// Uniform random partition without replacement; d1 receives
/// floor(fraction * n) rows. Deterministic given seed.
SplitDataset split_samples(const Dataset& ds, double fraction, std::uint64_t seed);

}  // namespace nsinfer
