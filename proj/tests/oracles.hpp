// Independent reference implementations used only by the tests. None of them
// calls into the code it checks beyond eval() on step cdfs.
#ifndef CVPI_TESTS_ORACLES_HPP
#define CVPI_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "cvpi/data.hpp"
#include "cvpi/ecdf.hpp"
#include "cvpi/predictors.hpp"
#include "cvpi/rng.hpp"

namespace oracle {

using cvpi::StepCdfd;

// m atoms, normal locations (or integers on a lattice), random or equal weights.
inline StepCdfd random_cdf(cvpi::Rng& rng, int max_atoms = 25, bool lattice = false) {
  const int m = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(max_atoms));
  const bool equal = rng.bernoulli(0.5);
  Eigen::VectorXd v(m), w(m);
  for (int i = 0; i < m; ++i) {
    v(i) = lattice ? std::floor(rng.uniform() * 12.0) - 6.0 : 2.0 * rng.normal();
    w(i) = equal ? 1.0 : 0.05 + rng.uniform();
  }
  if (equal) return cvpi::uniform_ecdf(v);
  w /= w.sum();
  // renormalize until the sum is 1 within the ecdf tolerance
  w(m - 1) = 1.0 - (w.sum() - w(m - 1));
  return cvpi::weighted_ecdf(v, w);
}

// sup over t of max(F(t) - G(t + d), G(t) - F(t + d)) on a uniform grid plus
// the breakpoints and their floating-point neighbours.
inline double brute_gauge(const StepCdfd& F, const StepCdfd& G, double d, int grid = 100000) {
  double lo = std::min(F.jumps.minCoeff(), G.jumps.minCoeff()) - d - 1.0;
  double hi = std::max(F.jumps.maxCoeff(), G.jumps.maxCoeff()) + 1.0;
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(grid) + 8 * static_cast<std::size_t>(F.size() + G.size()));
  for (int i = 0; i <= grid; ++i) ts.push_back(lo + (hi - lo) * i / grid);
  auto add = [&](double t) {
    ts.push_back(t);
    ts.push_back(std::nextafter(t, -INFINITY));
    ts.push_back(std::nextafter(t, INFINITY));
  };
  for (Eigen::Index j = 0; j < F.size(); ++j) {
    add(F.jumps(j));
    add(F.jumps(j) - d);
  }
  for (Eigen::Index j = 0; j < G.size(); ++j) {
    add(G.jumps(j));
    add(G.jumps(j) - d);
  }
  double best = 0;
  for (double t : ts) {
    best = std::max(best, cvpi::eval(F, t) - cvpi::eval(G, t + d));
    best = std::max(best, cvpi::eval(G, t) - cvpi::eval(F, t + d));
  }
  return best;
}

// Does F(t - e) - e <= G(t) <= F(t + e) + e hold everywhere? Both sides are
// step functions of t; checking breakpoints and midpoints of consecutive
// breakpoints covers every constancy piece.
inline bool levy_condition(const StepCdfd& F, const StepCdfd& G, double e) {
  std::vector<double> b;
  for (Eigen::Index j = 0; j < G.size(); ++j) b.push_back(G.jumps(j));
  for (Eigen::Index j = 0; j < F.size(); ++j) {
    b.push_back(F.jumps(j) + e);
    b.push_back(F.jumps(j) - e);
  }
  std::sort(b.begin(), b.end());
  std::vector<double> ts{b.front() - 1.0, b.back() + 1.0};
  for (std::size_t i = 0; i < b.size(); ++i) {
    ts.push_back(b[i]);
    if (i + 1 < b.size()) ts.push_back(0.5 * (b[i] + b[i + 1]));
  }
  for (double t : ts) {
    const double g = cvpi::eval(G, t);
    if (cvpi::eval(F, t - e) - e > g + 1e-15) return false;
    if (g > cvpi::eval(F, t + e) + e + 1e-15) return false;
  }
  return true;
}

// Levy metric by bisection on e in [0, 1].
inline double levy_metric(const StepCdfd& F, const StepCdfd& G, double tol = 1e-11) {
  double lo = 0, hi = 1.0 + 1e-9;
  if (levy_condition(F, G, 0.0)) return 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (levy_condition(F, G, mid) ? hi : lo) = mid;
  }
  return hi;
}

// Q_alpha of the uniform ecdf of v as the ceil(alpha n)-th order statistic.
inline double order_stat_quantile(std::vector<double> v, double alpha) {
  const double n = static_cast<double>(v.size());
  if (alpha <= 0) return -INFINITY;
  if (alpha > 1) return INFINITY;
  std::sort(v.begin(), v.end());
  double c = std::ceil(alpha * n);
  if (std::abs(alpha * n - std::round(alpha * n)) < 1e-9) c = std::round(alpha * n);
  return v[static_cast<std::size_t>(std::max(1.0, c)) - 1];
}

// Leave-fold-out residuals by refitting from scratch on each complement.
inline Eigen::VectorXd naive_residuals(const cvpi::PredictorSpec& spec, const cvpi::TrainingSetd& t,
                                       const cvpi::FoldPartition& part) {
  Eigen::VectorXd u(t.n());
  for (const auto& fold : part.folds) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < t.n(); ++i)
      if (std::find(fold.begin(), fold.end(), i) == fold.end()) keep.push_back(i);
    const auto model = cvpi::fit(spec, cvpi::subset(t, keep));
    for (Eigen::Index i : fold) u(i) = t.y(i) - model.predict(t.x.row(i).transpose());
  }
  return u;
}

// Ridge by the normal equations with a plain dense solve.
inline Eigen::VectorXd naive_ridge(const cvpi::TrainingSetd& t, double lambda) {
  const Eigen::MatrixXd A = t.x.transpose() * t.x + lambda * static_cast<double>(t.n()) *
                                                         Eigen::MatrixXd::Identity(t.p(), t.p());
  return A.fullPivLu().solve(t.x.transpose() * t.y);
}

}  // namespace oracle

#endif
