#include <cmath>

#include <doctest.h>

#include "nsinfer/errors.hpp"
#include "nsinfer/glm.hpp"
#include "nsinfer/lasso.hpp"
#include "nsinfer/rng.hpp"
#include "support/oracles.hpp"

using namespace nsinfer;

namespace {

Dataset random_dataset(CounterRng& rng, Eigen::Index n, Eigen::Index p,
                       const Vector& beta) {
  Dataset ds;
  ds.x.resize(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) ds.x(i, j) = rng.next_normal();
  Vector u = ds.x * beta;
  ds.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    ds.y(i) = rng.next_bernoulli(sigmoid(u(i))) ? 1.0 : 0.0;
  return ds;
}

}  // namespace

TEST_CASE("default penalty level matches direct evaluation") {
  CHECK(default_lambda(3, 3, 1.0) == doctest::Approx(0.6051479953058617).epsilon(1e-14));
  CHECK(default_lambda(200, 500, 1.0) ==
        doctest::Approx(0.17627546764116372).epsilon(1e-14));
  CHECK(default_lambda(100, 100, 0.5) ==
        doctest::Approx(0.5 * std::sqrt(std::log(100.0) / 100.0)).epsilon(1e-14));
  CHECK_THROWS_AS(default_lambda(0, 5, 1.0), ConfigError);
  CHECK_THROWS_AS(default_lambda(5, 5, -1.0), ConfigError);
}

TEST_CASE("soft threshold shrinks toward zero") {
  CHECK(soft_threshold(3.0, 1.0) == 2.0);
  CHECK(soft_threshold(-3.0, 1.0) == -2.0);
  CHECK(soft_threshold(0.5, 1.0) == 0.0);
  CHECK(soft_threshold(-0.5, 1.0) == 0.0);
  CHECK(soft_threshold(1.0, 1.0) == 0.0);
  CHECK(soft_threshold(2.0, 0.0) == 2.0);
}

TEST_CASE("penalty at the null gradient bound keeps beta at zero") {
  CounterRng rng(21, 0);
  Vector beta_true = Vector::Zero(5);
  beta_true(0) = 1.0;
  Dataset ds = random_dataset(rng, 60, 5, beta_true);

  double g0 = nll_gradient(ds, Vector::Zero(5)).lpNorm<Eigen::Infinity>();
  LassoConfig cfg;
  cfg.lambda = g0 * 1.0001;
  LassoFit fit = fit_logistic_lasso(ds, cfg);
  CHECK(fit.converged);
  CHECK(fit.iters == 0);
  CHECK(fit.beta_hat.lpNorm<Eigen::Infinity>() == 0.0);

  cfg.lambda = std::max(g0 - 0.02, g0 * 0.5);
  LassoFit active = fit_logistic_lasso(ds, cfg);
  CHECK(active.converged);
  CHECK(active.beta_hat.lpNorm<Eigen::Infinity>() > 0.0);
}

TEST_CASE("one-dimensional fits agree with a golden-section oracle") {
  CounterRng rng(33, 0);
  for (int trial = 0; trial < 5; ++trial) {
    Vector beta_true(2);
    beta_true << (trial - 2.0) * 0.6, 0.0;
    Dataset ds = random_dataset(rng, 50, 2, beta_true);
    ds.x.col(1).setZero();  // second column inert, so the problem is scalar

    const double lambda = 0.05 + 0.03 * trial;
    LassoConfig cfg;
    cfg.lambda = lambda;
    cfg.tol = 1e-9;
    LassoFit fit = fit_logistic_lasso(ds, cfg);
    REQUIRE(fit.converged);
    CHECK(fit.beta_hat(1) == 0.0);

    auto scalar_objective = [&](double t) {
      Vector b(2);
      b << t, 0.0;
      return lasso_objective(ds, b, lambda);
    };
    double ref = oracles::golden_section_minimize(scalar_objective, -10.0, 10.0, 1e-10);
    CHECK(fit.beta_hat(0) == doctest::Approx(ref).epsilon(1e-5).scale(1.0));
    CHECK(fit.objective <= scalar_objective(ref) + 1e-10);
  }
}

TEST_CASE("stationarity residual meets the tolerance on random fits") {
  CounterRng rng(55, 0);
  for (int trial = 0; trial < 8; ++trial) {
    Eigen::Index p = 6 + rng.next_below(8);
    Vector beta_true = Vector::Zero(p);
    beta_true.head(3).setConstant(0.8);
    Dataset ds = random_dataset(rng, 50, p, beta_true);

    LassoConfig cfg;
    cfg.lambda = default_lambda(ds.n(), p, 1.0);
    LassoFit fit = fit_logistic_lasso(ds, cfg);
    REQUIRE(fit.converged);
    CHECK(fit.kkt_residual <= 1e-7);
    CHECK(lasso_kkt_residual(ds, fit.beta_hat, cfg.lambda) <= 1e-7);
    CHECK(fit.objective ==
          doctest::Approx(lasso_objective(ds, fit.beta_hat, cfg.lambda)).epsilon(1e-12));
  }
}

TEST_CASE("duplicated columns leave the optimal objective unchanged") {
  CounterRng rng(77, 0);
  Vector beta_true(4);
  beta_true << 1.0, -0.5, 0.0, 0.3;
  Dataset ds = random_dataset(rng, 60, 4, beta_true);

  Dataset dup = ds;
  dup.x.resize(ds.n(), 5);
  dup.x.leftCols(4) = ds.x;
  dup.x.col(4) = ds.x.col(0);

  LassoConfig cfg;
  cfg.lambda = 0.08;
  cfg.tol = 1e-10;
  LassoFit base = fit_logistic_lasso(ds, cfg);
  LassoFit wide = fit_logistic_lasso(dup, cfg);
  REQUIRE(base.converged);
  REQUIRE(wide.converged);
  CHECK(base.objective == doctest::Approx(wide.objective).epsilon(1e-8));
}

TEST_CASE("the accelerated mode reaches the same optimum") {
  CounterRng rng(99, 0);
  Vector beta_true = Vector::Zero(10);
  beta_true.head(2).setConstant(1.2);
  Dataset ds = random_dataset(rng, 80, 10, beta_true);

  LassoConfig plain;
  plain.lambda = 0.05;
  plain.tol = 1e-9;
  LassoConfig fast = plain;
  fast.accelerate = true;
  LassoFit a = fit_logistic_lasso(ds, plain);
  LassoFit b = fit_logistic_lasso(ds, fast);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-8));
  CHECK(b.kkt_residual <= 1e-7);
}

TEST_CASE("bad lasso configuration is rejected") {
  Dataset ds;
  ds.x = Matrix::Identity(4, 2);
  ds.y.resize(4);
  ds.y << 1, 0, 1, 0;
  LassoConfig cfg;
  cfg.lambda = -0.1;
  CHECK_THROWS_AS(fit_logistic_lasso(ds, cfg), ConfigError);
  cfg.lambda = 0.1;
  cfg.tol = 0.0;
  CHECK_THROWS_AS(fit_logistic_lasso(ds, cfg), ConfigError);
  cfg.tol = 1e-7;
  cfg.max_iters = 0;
  CHECK_THROWS_AS(fit_logistic_lasso(ds, cfg), ConfigError);
}

TEST_CASE("tightening the tolerance never worsens the objective") {
  CounterRng rng(123, 0);
  Vector beta_true = Vector::Zero(6);
  beta_true(0) = 2.0;
  Dataset ds = random_dataset(rng, 40, 6, beta_true);
  LassoConfig loose;
  loose.lambda = 0.07;
  loose.tol = 1e-4;
  LassoConfig tight = loose;
  tight.tol = 1e-10;
  LassoFit a = fit_logistic_lasso(ds, loose);
  LassoFit b = fit_logistic_lasso(ds, tight);
  CHECK(b.objective <= a.objective + 1e-12);
}
