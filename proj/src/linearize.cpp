#include "nsinfer/linearize.hpp"

#include <cmath>

#include "nsinfer/errors.hpp"
#include "nsinfer/glm.hpp"

namespace nsinfer {

LinearizedData linearize(const Dataset& ds, const Vector& beta_hat,
                         Eigen::Index tested_index, double beta0) {
  validate(ds);
  const Eigen::Index n = ds.n();
  const Eigen::Index p = ds.p();
  if (beta_hat.size() != p)
    throw DataError("linearize: pilot coefficient length does not match design");
  if (!beta_hat.allFinite())
    throw DataError("linearize: pilot coefficients must be finite");
  if (tested_index < 0 || tested_index >= p)
    throw ConfigError("linearize: tested index out of range");
  if (!std::isfinite(beta0))
    throw ConfigError("linearize: hypothesized value must be finite");

  Vector u = ds.x * beta_hat;
  Vector slope(n);
  LinearizedData out;
  out.y_new.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    slope(i) = dsigmoid(u(i));
    out.y_new(i) = ds.y(i) - sigmoid(u(i)) + slope(i) * u(i);
  }

  out.z = slope.cwiseProduct(ds.x.col(tested_index));
  out.w.resize(n, p - 1);
  Eigen::Index col = 0;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (j == tested_index) continue;
    out.w.col(col++) = slope.cwiseProduct(ds.x.col(j));
  }
  out.beta0 = beta0;
  out.tested_index = tested_index;
  out.v = out.y_new - beta0 * out.z;
  return out;
}

LinearizedData rebuild_v(const LinearizedData& data, double beta0) {
  if (!std::isfinite(beta0))
    throw ConfigError("rebuild_v: hypothesized value must be finite");
  LinearizedData out = data;
  out.beta0 = beta0;
  out.v = data.y_new - beta0 * data.z;
  return out;
}

}  // namespace nsinfer
