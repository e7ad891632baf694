#include <doctest.h>

#include "cvpi/functions.hpp"
#include "cvpi/risk.hpp"
#include "oracles.hpp"

using namespace cvpi;

TEST_SUITE("functions") {

TEST_CASE("family values and bounds") {
  CHECK(MonotoneFunction::hinge()(-2) == 0);
  CHECK(MonotoneFunction::squared_hinge()(3) == 9);
  CHECK(MonotoneFunction::indicator_ge(1)(1) == 1);
  CHECK(MonotoneFunction::indicator_ge(1)(0.999) == 0);
  CHECK(MonotoneFunction::clipped_linear(0, 2)(1) == 0.5);
  const auto t = MonotoneFunction::table({0, 1, 3}, {0, 2, 3});
  CHECK(t(0.5) == 1);
  CHECK(t(2) == 2.5);
  CHECK(t(-9) == 0);
  CHECK(t(9) == 3);
  CHECK(t.bounds()->second == 3);
  CHECK(*t.lipschitz() == 2);
  CHECK_FALSE(MonotoneFunction::hinge().bounds());
}

TEST_CASE("monotonicity probe") {
  CHECK_NOTHROW(MonotoneFunction::squared_hinge().check_monotone());
  CHECK_THROWS_AS(MonotoneFunction::table({0, 1, 2}, {0, 1, 0.5}).check_monotone(), NonMonotoneLoss);
  CHECK_THROWS_AS(MonotoneFunction::clipped_linear(1, 1), InvalidParameter);
}

TEST_CASE("unbounded loss rejected by transfer") {
  const auto F = uniform_ecdf(Eigen::Vector2d(0, 1));
  CHECK_THROWS_AS(expectation_transfer(MonotoneFunction::hinge(), F, F, 0.1), UnboundedLoss);
}

TEST_CASE("transfer with F = G and an indicator") {
  const auto F = uniform_ecdf(Eigen::Vector4d(0, 1, 2, 3));
  const auto f = MonotoneFunction::indicator_ge(1.5);
  const auto b = expectation_transfer(f, F, F, 0.0);
  CHECK(b.gauge == 0);
  CHECK(b.lo == 0.5);
  CHECK(b.hi == 0.5);
}

TEST_CASE("property: transfer, Lipschitz and Koksma bounds hold") {
  Rng rng(RngSeed{31});
  const std::vector<MonotoneFunction> fs{MonotoneFunction::zero(), MonotoneFunction::indicator_ge(0.3),
                                         MonotoneFunction::clipped_linear(-1, 2),
                                         MonotoneFunction::table({-2, 0, 1, 4}, {-1, 0, 0.5, 3})};
  for (int rep = 0; rep < 200; ++rep) {
    const auto F = oracle::random_cdf(rng), G = oracle::random_cdf(rng);
    const double d = rng.uniform();
    for (const auto& f : fs) {
      const double ef = expect(F, f), eg = expect(G, f);
      const auto b = expectation_transfer(f, F, G, d);
      CHECK(b.lo <= ef + 1e-12);
      CHECK(ef <= b.hi + 1e-12);
      if (f.lipschitz()) CHECK(std::abs(ef - eg) <= lipschitz_transfer_bound(f, F, G, d) + 1e-12);
    }
    StepFunction g;
    double x = -3;
    g.values.push_back(rng.normal());
    for (int k = 0; k < 6; ++k) {
      x += rng.uniform();
      g.knots.push_back(x);
      g.values.push_back(rng.normal());
    }
    CHECK(std::abs(expect(F, g) - expect(G, g)) <= koksma_bound(g, F, G) + 1e-12);
  }
}

}  // TEST_SUITE

TEST_SUITE("risk") {

TEST_CASE("plug-in bounds by hand") {
  const auto z = loss_plugin_bounds(Eigen::Vector2d(1, -1), MonotoneFunction::zero(), 0.3);
  CHECK(z.lo == -0.3);
  CHECK(z.hi == 0.3);
  const auto b = loss_plugin_bounds(Eigen::Vector2d(1, -1), MonotoneFunction::squared_hinge(), 0.5);
  CHECK(b.lo == -0.25);
  CHECK(b.hi == 2.75);
  CHECK_THROWS_AS(loss_plugin_bounds(Eigen::Vector2d(1, -1), MonotoneFunction::zero(), 0.0), InvalidTolerance);
  CHECK_THROWS_AS(loss_plugin_bounds(Eigen::Vector2d(1, -1), MonotoneFunction::table({0, 1}, {1, 0}), 0.1),
                  NonMonotoneLoss);
}

TEST_CASE("property: bounds ordered, monotone in eps, collapse to the mse") {
  Rng rng(RngSeed{8});
  const auto sq = MonotoneFunction::squared_hinge();
  for (int rep = 0; rep < 100; ++rep) {
    Eigen::VectorXd u(20);
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = rng.normal();
    LossBounds prev{INFINITY, -INFINITY};
    for (double eps : {1e-9, 1e-3, 0.1, 0.5, 2.0}) {
      const auto b = loss_plugin_bounds(u, sq, eps);
      CHECK(b.lo <= b.hi);
      if (std::isfinite(prev.lo)) {
        CHECK(b.lo <= prev.lo);
        CHECK(b.hi >= prev.hi);
      }
      prev = b;
    }
    const auto tiny = loss_plugin_bounds(u, sq, 1e-9);
    CHECK(0.5 * (tiny.lo + tiny.hi) == doctest::Approx(mse_estimate(u)).epsilon(1e-7));
  }
}

TEST_CASE("mse and misclassification by hand") {
  CHECK(mse_estimate(Eigen::VectorXd::Zero(4)) == 0);
  CHECK(mse_estimate(Eigen::Vector2d(3, 4)) == 12.5);
  CHECK(misclassification_estimate(Eigen::VectorXd::Zero(3)) == 0);
  CHECK(misclassification_estimate(Eigen::Vector4d(0, 1, -2, 0)) == 0.5);
  CHECK_THROWS_AS(misclassification_estimate(Eigen::Vector2d(0, 0.5)), NonIntegerResiduals);
}

}  // TEST_SUITE
