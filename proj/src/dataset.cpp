#include "nsinfer/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nsinfer/errors.hpp"
#include "nsinfer/rng.hpp"

namespace nsinfer {

void validate(const Dataset& ds) {
  if (ds.n() < 2 || ds.p() < 2) {
    throw DataError("need n >= 2 and p >= 2, got n = " + std::to_string(ds.n()) +
                    ", p = " + std::to_string(ds.p()));
  }
  if (ds.y.size() != ds.n()) {
    throw DataError("response length " + std::to_string(ds.y.size()) +
                    " does not match n = " + std::to_string(ds.n()));
  }
  for (Eigen::Index i = 0; i < ds.y.size(); ++i) {
    if (ds.y[i] != 0.0 && ds.y[i] != 1.0) {
      throw DataError("response entry " + std::to_string(i) + " is not 0 or 1");
    }
  }
  if (!ds.x.allFinite()) {
    throw DataError("design matrix contains non-finite entries");
  }
}

namespace {

Dataset take_rows(const Dataset& ds, const std::vector<Eigen::Index>& rows) {
  Dataset out;
  out.x.resize(static_cast<Eigen::Index>(rows.size()), ds.p());
  out.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.x.row(static_cast<Eigen::Index>(i)) = ds.x.row(rows[i]);
    out.y[static_cast<Eigen::Index>(i)] = ds.y[rows[i]];
  }
  return out;
}

}  // namespace

SplitDataset split_samples(const Dataset& ds, double fraction, std::uint64_t seed) {
  validate(ds);
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ConfigError("split fraction must lie in (0, 1)");
  }
  const auto n = ds.n();
  const auto n1 = static_cast<Eigen::Index>(std::floor(fraction * static_cast<double>(n)));
  const auto n2 = n - n1;
  if (n1 < 2 || n2 < 2) {
    throw ConfigError("degenerate split: halves of size " + std::to_string(n1) + " and " +
                      std::to_string(n2));
  }

  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  CounterRng rng(seed, /*stream=*/2);
  for (Eigen::Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint32_t>(i + 1)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }

  SplitDataset out;
  out.split_seed = seed;
  out.idx1.assign(perm.begin(), perm.begin() + n1);
  out.idx2.assign(perm.begin() + n1, perm.end());
  std::sort(out.idx1.begin(), out.idx1.end());
  std::sort(out.idx2.begin(), out.idx2.end());
  out.d1 = take_rows(ds, out.idx1);
  out.d2 = take_rows(ds, out.idx2);
  return out;
}

}  // namespace nsinfer
