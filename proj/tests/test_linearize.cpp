#include "nsinfer/linearize.hpp"

#include <doctest.h>

#include "nsinfer/dataset.hpp"
#include "nsinfer/errors.hpp"
#include "nsinfer/glm.hpp"
#include "nsinfer/rng.hpp"

using namespace nsinfer;

namespace {

Dataset random_dataset(std::uint64_t seed, Eigen::Index n, Eigen::Index p) {
  CounterRng xs(seed, 0);
  CounterRng ys(seed, 1);
  Dataset ds;
  ds.x.resize(n, p);
  ds.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) ds.x(i, j) = xs.next_normal();
    ds.y(i) = ys.next_bernoulli(0.5) ? 1.0 : 0.0;
  }
  return ds;
}

Vector random_coef(std::uint64_t seed, Eigen::Index p, double scale) {
  CounterRng rng(seed, 3);
  Vector beta(p);
  for (Eigen::Index j = 0; j < p; ++j) beta(j) = scale * rng.next_normal();
  return beta;
}

// Puts the tested column back among the nuisance columns, undoing the split
// performed by linearize.
Matrix reassemble(const LinearizedData& ld) {
  const Eigen::Index n = ld.z.size();
  const Eigen::Index p = ld.w.cols() + 1;
  Matrix x_new(n, p);
  Eigen::Index col = 0;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (j == ld.tested_index)
      x_new.col(j) = ld.z;
    else
      x_new.col(j) = ld.w.col(col++);
  }
  return x_new;
}

}  // namespace

TEST_CASE("a zero pilot fit scales the design by a quarter and shifts y") {
  Dataset ds = random_dataset(11, 12, 5);
  Vector beta = Vector::Zero(5);
  LinearizedData ld = linearize(ds, beta, 2, 0.0);

  for (Eigen::Index i = 0; i < ds.n(); ++i) {
    CHECK(ld.y_new(i) == doctest::Approx(ds.y(i) - 0.5).epsilon(1e-15));
    CHECK(ld.z(i) == doctest::Approx(0.25 * ds.x(i, 2)).epsilon(1e-15));
  }
  Matrix x_new = reassemble(ld);
  CHECK((x_new - 0.25 * ds.x).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("the linearized model reproduces the raw residual at the pilot fit") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    Dataset ds = random_dataset(seed, 10, 4);
    Vector beta = random_coef(seed, 4, 0.8);
    LinearizedData ld = linearize(ds, beta, 1, 0.0);

    Vector u = ds.x * beta;
    Matrix x_new = reassemble(ld);
    Vector lhs = ld.y_new - x_new * beta;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < ds.n(); ++i)
      worst = std::max(worst, std::abs(lhs(i) - (ds.y(i) - sigmoid(u(i)))));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("the residual identity holds on larger random instances") {
  for (std::uint64_t seed : {21u, 22u, 23u}) {
    Dataset ds = random_dataset(seed, 50, 20);
    Vector beta = random_coef(seed, 20, 0.4);
    LinearizedData ld = linearize(ds, beta, 7, 0.3);

    Vector u = ds.x * beta;
    Matrix x_new = reassemble(ld);
    Vector lhs = ld.y_new - x_new * beta;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < ds.n(); ++i)
      worst = std::max(worst, std::abs(lhs(i) - (ds.y(i) - sigmoid(u(i)))));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("v equals y_new when the hypothesized value is zero") {
  Dataset ds = random_dataset(31, 15, 6);
  Vector beta = random_coef(31, 6, 0.5);
  LinearizedData ld = linearize(ds, beta, 0, 0.0);
  CHECK((ld.v - ld.y_new).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("v plus beta0 times z reconstructs y_new") {
  Dataset ds = random_dataset(41, 20, 5);
  Vector beta = random_coef(41, 5, 0.6);
  for (double b0 : {-1.3, -0.2, 0.7, 2.5}) {
    LinearizedData ld = linearize(ds, beta, 3, b0);
    CHECK((ld.v + b0 * ld.z - ld.y_new).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("rebuild_v swaps the hypothesized value and nothing else") {
  Dataset ds = random_dataset(51, 18, 4);
  Vector beta = random_coef(51, 4, 0.5);
  LinearizedData ld = linearize(ds, beta, 1, 0.4);

  SUBCASE("same value is a no-op") {
    LinearizedData same = rebuild_v(ld, ld.beta0);
    CHECK((same.v - ld.v).cwiseAbs().maxCoeff() == 0.0);
    CHECK(same.beta0 == ld.beta0);
  }
  SUBCASE("zero recovers y_new") {
    LinearizedData zero = rebuild_v(ld, 0.0);
    CHECK((zero.v - ld.y_new).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("difference of two rebuilds is linear in beta0") {
    LinearizedData a = rebuild_v(ld, 0.3);
    LinearizedData b = rebuild_v(ld, -0.2);
    Vector expect = (-0.2 - 0.3) * ld.z;
    CHECK((a.v - b.v - expect).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("carried fields are untouched") {
    LinearizedData moved = rebuild_v(ld, 1.7);
    CHECK((moved.z - ld.z).cwiseAbs().maxCoeff() == 0.0);
    CHECK((moved.w - ld.w).cwiseAbs().maxCoeff() == 0.0);
    CHECK((moved.y_new - ld.y_new).cwiseAbs().maxCoeff() == 0.0);
    CHECK(moved.tested_index == ld.tested_index);
  }
}

TEST_CASE("column extraction keeps every nuisance column in order") {
  Dataset ds = random_dataset(61, 9, 6);
  Vector beta = random_coef(61, 6, 0.5);
  for (Eigen::Index t = 0; t < 6; ++t) {
    LinearizedData ld = linearize(ds, beta, t, 0.0);
    Vector u = ds.x * beta;
    Matrix x_new = reassemble(ld);
    for (Eigen::Index i = 0; i < ds.n(); ++i)
      for (Eigen::Index j = 0; j < 6; ++j)
        CHECK(x_new(i, j) ==
              doctest::Approx(dsigmoid(u(i)) * ds.x(i, j)).epsilon(1e-14));
  }
}

TEST_CASE("invalid linearization inputs are rejected") {
  Dataset ds = random_dataset(71, 8, 3);
  Vector beta = Vector::Zero(3);

  CHECK_THROWS_AS(linearize(ds, Vector::Zero(4), 0, 0.0), DataError);
  CHECK_THROWS_AS(linearize(ds, beta, -1, 0.0), ConfigError);
  CHECK_THROWS_AS(linearize(ds, beta, 3, 0.0), ConfigError);
  CHECK_THROWS_AS(
      linearize(ds, beta, 0, std::numeric_limits<double>::quiet_NaN()),
      ConfigError);

  Vector bad = beta;
  bad(1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(linearize(ds, bad, 0, 0.0), DataError);

  LinearizedData ld = linearize(ds, beta, 0, 0.0);
  CHECK_THROWS_AS(rebuild_v(ld, std::numeric_limits<double>::quiet_NaN()),
                  ConfigError);
}
