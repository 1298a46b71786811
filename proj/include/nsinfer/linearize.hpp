#pragma once

#include "nsinfer/dataset.hpp"

namespace nsinfer {

// Working response and design after a first-order expansion of the logistic
// mean around the pilot fit.  z is the tested column of the rescaled design,
// w holds the remaining columns, and v = y_new - beta0 * z is the residual
// response under the hypothesized coefficient value.
struct LinearizedData {
  Vector v;
  Vector z;
  Vector y_new;
  Matrix w;
  double beta0 = 0.0;
  Eigen::Index tested_index = 0;
};

// Expand around u = X beta_hat on the inference half:
//   y_new = y - f(u) + f'(u) u,   x_new = f'(u) (row-scaled X).
LinearizedData linearize(const Dataset& ds, const Vector& beta_hat,
                         Eigen::Index tested_index, double beta0);

// Copy of the linearized data with v recomputed for a different hypothesized
// value; z, w, and y_new carry over untouched.
LinearizedData rebuild_v(const LinearizedData& data, double beta0);

}  // namespace nsinfer
