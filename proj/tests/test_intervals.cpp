#include <doctest.h>

#include "cvpi/gauge.hpp"
#include "cvpi/intervals.hpp"
#include "cvpi/simlab.hpp"
#include "oracles.hpp"

using namespace cvpi;

namespace {

const IntervalMethod J = IntervalMethod::jackknife(), JP = IntervalMethod::jackknife_plus();
const IntervalMethod kAll[] = {J, JP, {BaseMethod::fitted_values, false}, {BaseMethod::cv, true},
                               {BaseMethod::cv_plus, true}, {BaseMethod::fitted_values, true}};

ResidualBundle random_bundle(Rng& rng, const PredictorSpec& spec, Eigen::Index n, Eigen::Index k) {
  TrainingSetd t = draw_training_set(gaussian_linear_dgp(Eigen::Vector2d(1, -0.5), 1.0), n, rng);
  const Sampled x = draw_sample(gaussian_linear_dgp(Eigen::Vector2d(1, -0.5), 1.0), n, rng);
  const FoldPartition part = k == n ? FoldPartition::leave_one_out(n) : FoldPartition::kfold(n, k);
  return leave_fold_out_residuals(spec, t, part, x.x, true);
}

}  // namespace

TEST_SUITE("intervals") {

TEST_CASE("hand examples") {
  const auto t = make_training_set(Eigen::Vector3d(1, 5, 3), Eigen::MatrixXd::Zero(3, 1));
  const auto b = leave_fold_out_residuals(PredictorSpec::max_response(), t, FoldPartition::leave_one_out(3),
                                          Eigen::VectorXd::Zero(1));
  CHECK(interval(J, b, 0.0, 2.0 / 3.0, 0.0).hi == 3);
  CHECK(interval(J, b, 0.0, 2.0 / 3.0, 0.0).lo == -INFINITY);
  const auto c = leave_fold_out_residuals(PredictorSpec::constant(1), t, FoldPartition::leave_one_out(3),
                                          Eigen::VectorXd::Zero(1));
  const auto all = interval(J, c, 0.0, 1.0, 0.0);
  CHECK(all.lo == -INFINITY);
  CHECK(all.hi == 1 + 4);
  CHECK(all.length() == INFINITY);
  const auto e = interval(J, c, 0.9, 0.2, 0.0);
  CHECK(e.empty());
  CHECK(e.length() == 0);
  CHECK_THROWS_AS(interval({BaseMethod::fitted_values, false}, c, 0.1, 0.9, 0.0), MissingFittedValues);
  CHECK(method_name({BaseMethod::cv_plus, true}) == "cv_plus_symmetrized");
  CHECK_THROWS_AS(parse_base_method("split"), InvalidParameter);
}

TEST_CASE("cv with singleton folds is the jackknife formula, atom for atom") {
  Rng rng(RngSeed{40});
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index n = 5 + static_cast<Eigen::Index>(rng.next() % 30);
    const auto b = random_bundle(rng, PredictorSpec::ridge(0.1), n, n);
    std::vector<double> u(b.loo_residuals.data(), b.loo_residuals.data() + n);
    const double a1 = rng.uniform() * 0.3, a2 = 0.7 + rng.uniform() * 0.35, d = rng.normal();
    const auto I = interval(J, b, a1, a2, d);
    CHECK(I.lo == (b.full_prediction + oracle::order_stat_quantile(u, a1)) - d);
    CHECK(I.hi == (b.full_prediction + oracle::order_stat_quantile(u, a2)) + d);
    std::vector<double> plus(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) plus[static_cast<std::size_t>(i)] = b.fold_predictions(i) + u[static_cast<std::size_t>(i)];
    const auto P = interval(JP, b, a1, a2, d);
    CHECK(P.lo == oracle::order_stat_quantile(plus, a1) - d);
    CHECK(P.hi == oracle::order_stat_quantile(plus, a2) + d);
  }
}

TEST_CASE("property: monotone in delta and nested in the quantile pair") {
  Rng rng(RngSeed{41});
  for (int rep = 0; rep < 60; ++rep) {
    const auto b = random_bundle(rng, rep % 2 ? PredictorSpec::knn(3) : PredictorSpec::ridge(1), 24, rep % 3 ? 24 : 5);
    for (const auto& m : kAll) {
      const double a1 = 0.3 * rng.uniform(), a2 = 0.6 + 0.4 * rng.uniform(), d = rng.normal();
      const auto I = interval(m, b, a1, a2, d);
      CHECK(I.subset_of(interval(m, b, a1, a2, d + rng.uniform())));
      if (!m.symmetrized) CHECK(I.subset_of(interval(m, b, a1 * 0.5, std::min(1.0, a2 + 0.05), d)));
      else CHECK(I.subset_of(interval(m, b, a1 * 0.5, a2, d)));
    }
  }
}

TEST_CASE("max response: J+ inside J, reversed for the negated maximum") {
  Rng rng(RngSeed{42});
  for (int rep = 0; rep < 200; ++rep) {
    const auto b = random_bundle(rng, PredictorSpec::max_response(), 15, 15);
    const double a1 = 0.2 * rng.uniform(), a2 = 0.8 + 0.2 * rng.uniform();
    CHECK(interval(JP, b, a1, a2, 0.0).length() <= interval(J, b, a1, a2, 0.0).length());
    const auto c = random_bundle(rng, PredictorSpec::neg_max_response(), 15, 15);
    CHECK(interval(J, c, a1, a2, 0.0).length() <= interval(JP, c, a1, a2, 0.0).length());
  }
}

TEST_CASE("fitted values close to leave-one-out fits give a zero matched-pairs bound") {
  Rng rng(RngSeed{43});
  for (int rep = 0; rep < 30; ++rep) {
    const auto b = random_bundle(rng, PredictorSpec::ridge(1), 40, 40);
    const Eigen::VectorXd loo_fit = b.responses - b.loo_residuals;
    const double d = (loo_fit - *b.fitted_values).cwiseAbs().maxCoeff();
    const Eigen::VectorXd h = b.full_prediction + (b.responses - *b.fitted_values).array();
    const Eigen::VectorXd g = b.full_prediction + b.loo_residuals.array();
    const Eigen::VectorXd w = Eigen::VectorXd::Constant(40, 1.0 / 40);
    CHECK(matched_pairs_bound(h, g, w, d * (1 + 1e-12) + 1e-15) == 0);
    CHECK(levy_gauge(interval_atoms({BaseMethod::fitted_values, false}, b), interval_atoms(J, b), d * (1 + 1e-9)).value == 0);
  }
}

TEST_CASE("shortest interval beats an exhaustive scan") {
  const auto t = make_training_set(Eigen::Vector3d(-1, 0, 1), Eigen::MatrixXd::Zero(3, 1));
  const auto b = leave_fold_out_residuals(PredictorSpec::constant(0), t, FoldPartition::leave_one_out(3),
                                          Eigen::VectorXd::Zero(1));
  const auto s = shortest_interval(J, b, 2.0 / 3.0, 0.0);
  CHECK(s.interval.length() == 2);  // every level-2/3 pair reaches from the first atom to the last
  const auto full = shortest_interval(J, b, 1.0, 0.0);
  CHECK(full.alpha1 == 0);
  CHECK(full.interval.lo == -INFINITY);
  CHECK(full.interval.hi == 1);
  const auto one = make_training_set(Eigen::Vector3d(2, 2, 2), Eigen::MatrixXd::Zero(3, 1));
  const auto ob = leave_fold_out_residuals(PredictorSpec::constant(0), one, FoldPartition::leave_one_out(3),
                                           Eigen::VectorXd::Zero(1));
  const auto single = shortest_interval(J, ob, 0.5, 0.0);
  CHECK(single.interval.lo == 2);
  CHECK(single.interval.hi == 2);

  Rng rng(RngSeed{44});
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index n = 4 + static_cast<Eigen::Index>(rng.next() % 20);
    const auto r = random_bundle(rng, PredictorSpec::ridge(0.5), n, rep % 2 ? n : 3);
    for (const auto& m : {J, JP}) {
      const double nominal = 0.5 + 0.45 * rng.uniform();
      const auto best = shortest_interval(m, r, nominal, 0.1);
      CHECK(best.alpha2 - best.alpha1 == doctest::Approx(nominal));
      for (int g = 0; g <= 2000; ++g) {
        const double a1 = (1 - nominal) * g / 2000.0;
        CHECK(best.interval.length() <= interval(m, r, a1, a1 + nominal, 0.1).length());
      }
    }
  }
  CHECK_THROWS_AS(shortest_interval(J, b, 0.0, 0.0), InvalidParameter);
}

TEST_CASE("coverage ceiling") {
  const auto t = make_training_set(Eigen::Vector4d(0, 10, 20, 30), Eigen::MatrixXd::Zero(4, 1));
  const auto b = leave_fold_out_residuals(PredictorSpec::constant(0), t, FoldPartition::leave_one_out(4),
                                          Eigen::VectorXd::Zero(1));
  CHECK(coverage_ceiling(b, 0.25, 0.75, 1.0) == 0.75);  // atoms 1..3 of 4
  CHECK(coverage_ceiling(b, 0.5, 0.5, 1.0) >= 0.25);
  const auto same = make_training_set(Eigen::Vector3d(1, 1, 1), Eigen::MatrixXd::Zero(3, 1));
  const auto s = leave_fold_out_residuals(PredictorSpec::constant(0), same, FoldPartition::leave_one_out(3),
                                          Eigen::VectorXd::Zero(1));
  CHECK(coverage_ceiling(s, 0.2, 0.6, 0.1) == 1);
  CHECK_THROWS_AS(coverage_ceiling(s, 0.2, 0.6, 0.0), InvalidTolerance);
}

TEST_CASE("batch engine equals the reference interval exactly") {
  Rng rng(RngSeed{45});
  const DgpSpec dgp = gaussian_linear_dgp(Eigen::Vector3d(1, 0, -1), 1.0);
  for (int rep = 0; rep < 40; ++rep) {
    const Eigen::Index n = 10 + static_cast<Eigen::Index>(rng.next() % 20);
    const auto t = draw_training_set(dgp, n, rng);
    const PredictorSpec spec = rep % 3 == 0 ? PredictorSpec::knn(2) : PredictorSpec::ridge(0.2);
    const FoldPartition part = rep % 2 ? FoldPartition::leave_one_out(n) : FoldPartition::kfold(n, 4);
    const IntervalEngine engine(spec, t, part, true);
    Eigen::MatrixXd xs(30, 3);
    for (Eigen::Index i = 0; i < xs.size(); ++i) xs(i) = rng.normal();
    Eigen::VectorXd full;
    Eigen::MatrixXd folds;
    engine.predict(xs, full, folds);
    for (Eigen::Index r = 0; r < xs.rows(); ++r) {
      ResidualBundle b = bundle_at(engine.fits(), xs.row(r).transpose());
      b.full_prediction = full(r);
      b.fold_predictions = folds.row(r).transpose();
      for (const auto& m : kAll)
        for (auto [a1, a2] : {std::pair{0.05, 0.95}, std::pair{0.0, 0.9}, std::pair{0.1, 1.0}, std::pair{0.5, 0.3}}) {
          const double d = rng.normal() * 0.1;
          CHECK(engine.interval_at(m, full(r), folds.row(r), a1, a2, d) == interval(m, b, a1, a2, d));
        }
      // batch predictions agree with one-at-a-time predictions to rounding
      const ResidualBundle single = bundle_at(engine.fits(), xs.row(r).transpose());
      CHECK(std::abs(single.full_prediction - full(r)) <= 1e-12 * (1 + std::abs(full(r))));
    }
  }
}

}  // TEST_SUITE
