#include "cvpi/stability.hpp"

#include <algorithm>
#include <cmath>

#include "cvpi/parallel.hpp"

namespace cvpi {

McEstimate mc_mean(std::span<const double> draws) {
  McEstimate e;
  const std::size_t r = draws.size();
  if (r == 0) return e;
  e.value = pairwise_mean(draws);
  if (r < 2) return e;
  std::vector<double> dev(r);
  for (std::size_t i = 0; i < r; ++i) dev[i] = (draws[i] - e.value) * (draws[i] - e.value);
  const double var = pairwise_sum(dev) / static_cast<double>(r - 1);
  e.std_err = std::sqrt(var / static_cast<double>(r));
  return e;
}

namespace {

void require_reps(Eigen::Index reps) {
  if (reps < 1) throw InvalidParameter("reps must be at least 1");
}

double covariance(std::span<const double> a, std::span<const double> b, double ma, double mb) {
  std::vector<double> prod(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) prod[i] = (a[i] - ma) * (b[i] - mb);
  return a.size() < 2 ? 0.0 : pairwise_sum(prod) / static_cast<double>(a.size() - 1);
}

}  // namespace

StabilityProfile oos_stability_profile(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n,
                                       const PartitionRule& rule, const std::vector<double>& eps_grid,
                                       Eigen::Index reps, RngSeed seed) {
  require_reps(reps);
  for (double e : eps_grid)
    if (!(e > 0)) throw InvalidTolerance("eps grid must be positive");
  const FoldPartition partition = rule.make(n);
  const std::size_t ne = eps_grid.size();
  const auto R = static_cast<std::size_t>(reps);
  std::vector<std::vector<double>> exceed(ne, std::vector<double>(R));
  std::vector<double> mean_abs(R);

  const Rng root(seed);
  parallel_for(R, [&](std::size_t r) {
    Rng rng = root.split(r);
    const TrainingSetd train = draw_training_set(dgp, n, n, rng);
    const Sampled test = draw_sample(dgp, n, rng);
    const FoldFits fits = fit_folds(spec, train, partition);
    const ResidualBundle b = bundle_at(fits, test.x);
    const Eigen::VectorXd d = (b.fold_predictions.array() - b.full_prediction).abs();
    std::vector<double> dv(d.data(), d.data() + d.size());
    mean_abs[r] = pairwise_mean(dv);
    for (std::size_t e = 0; e < ne; ++e) {
      const auto hits = (d.array() >= eps_grid[e]).count();
      exceed[e][r] = static_cast<double>(hits) / static_cast<double>(d.size());
    }
  });

  StabilityProfile out;
  out.eps_grid = eps_grid;
  out.reps = reps;
  for (std::size_t e = 0; e < ne; ++e) {
    const McEstimate m = mc_mean(exceed[e]);
    out.exceed_prob.push_back(m.value);
    out.exceed_se.push_back(m.std_err);
  }
  const McEstimate ma = mc_mean(mean_abs);
  out.mean_abs = ma.value;
  out.mean_abs_se = ma.std_err;
  return out;
}

namespace {

struct MStabDraws {
  std::vector<double> big, one;
};

MStabDraws m_stability_draws(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n, Eigen::Index m,
                             Eigen::Index reps, RngSeed seed, bool want_one) {
  require_reps(reps);
  if (m < 1) throw InvalidParameter("m must be at least 1");
  if (n < 2) throw TooFewRows("m-stability needs n >= 2");
  const auto R = static_cast<std::size_t>(reps);
  MStabDraws d;
  d.big.resize(R);
  if (want_one) d.one.resize(R);
  const Rng root(seed);
  parallel_for(R, [&](std::size_t r) {
    Rng rng = root.split(r);
    const TrainingSetd big = draw_training_set(dgp, n + m - 1, n, rng);
    const Sampled test = draw_sample(dgp, n, rng);
    const double base = fit_predict(spec, head(big, n - 1), test.x);
    d.big[r] = std::abs(fit_predict(spec, big, test.x) - base);
    if (want_one) d.one[r] = std::abs(fit_predict(spec, head(big, n), test.x) - base);
  });
  return d;
}

}  // namespace

McEstimate m_stability(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n, Eigen::Index m,
                       Eigen::Index reps, RngSeed seed) {
  return mc_mean(m_stability_draws(spec, dgp, n, m, reps, seed, false).big);
}

MStabilityRatio m_stability_ratio(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n, Eigen::Index m,
                                  Eigen::Index reps, RngSeed seed) {
  const MStabDraws d = m_stability_draws(spec, dgp, n, m, reps, seed, true);
  MStabilityRatio out;
  out.beta_m = mc_mean(d.big);
  out.beta_1 = mc_mean(d.one);
  const double a = out.beta_m.value, b = out.beta_1.value, sm = std::sqrt(static_cast<double>(m));
  out.ratio = a / (sm * b);
  const double R = static_cast<double>(reps);
  const double va = out.beta_m.std_err * out.beta_m.std_err;
  const double vb = out.beta_1.std_err * out.beta_1.std_err;
  const double cab = covariance(d.big, d.one, a, b) / R;
  const double var = (va / (b * b) + a * a * vb / (b * b * b * b) - 2 * a * cab / (b * b * b)) / (sm * sm);
  out.ratio_se = std::sqrt(std::max(var, 0.0));
  return out;
}

PacBounds pac_bound_cv(const PacInputs& in) {
  if (!(in.delta > 0) || !(in.eps > 0)) throw InvalidTolerance("pac bound needs delta > 0 and eps > 0");
  if (in.k < 1) throw InvalidParameter("k must be positive");
  if (static_cast<Eigen::Index>(in.stability_trunc.size()) != in.k ||
      static_cast<Eigen::Index>(in.stability_abs.size()) != in.k)
    throw LengthMismatch("one stability term per fold required");
  const double k = static_cast<double>(in.k), d = in.delta, e2 = in.eps * in.eps;
  const double sum_trunc = pairwise_sum(in.stability_trunc);
  const double sum_abs = pairwise_sum(in.stability_abs);
  PacBounds out;
  out.bound_trunc = 1.0 - 2.0 * in.pred_err_tail / in.eps - (8.0 * in.L + 12.0 * d) / (k * d * e2) -
                    4.0 * (5.0 * k + 1.0) / (k * k * d * e2) * sum_trunc;
  out.bound_abs = 1.0 - in.pred_err_abs / (k * d * e2) - (5.0 * k + 1.0) / (k * k * d * e2) * sum_abs;
  out.bound_trunc = std::min(out.bound_trunc, 1.0);
  out.bound_abs = std::min(out.bound_abs, 1.0);
  return out;
}

double equivalence_bound(Eigen::Index k, double eps, double delta, const std::vector<double>& exceed_probs) {
  if (!(eps > 0)) throw InvalidTolerance("eps must be positive");
  if (!(delta >= 0)) throw InvalidTolerance("delta must be nonnegative");
  if (static_cast<Eigen::Index>(exceed_probs.size()) != k) throw LengthMismatch("one probability per fold required");
  for (double p : exceed_probs)
    if (!(p >= 0 && p <= 1)) throw InvalidParameter("probabilities must lie in [0, 1]");
  return pairwise_sum(exceed_probs) / (static_cast<double>(k) * eps * eps);
}

McEstimate variance_gap(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n, Eigen::Index reps,
                        RngSeed seed) {
  if (reps < 2) throw InvalidParameter("variance gap needs at least 2 reps");
  if (n < 2) throw TooFewRows("variance gap needs n >= 2");
  const auto R = static_cast<std::size_t>(reps);
  std::vector<double> a(R), b(R);
  const Rng root(seed);
  parallel_for(R, [&](std::size_t r) {
    Rng rng = root.split(r);
    const TrainingSetd train = draw_training_set(dgp, n, n, rng);
    const Sampled test = draw_sample(dgp, n, rng);
    a[r] = fit_predict(spec, train, test.x);
    b[r] = fit_predict(spec, head(train, n - 1), test.x);
  });
  const double ma = pairwise_mean(a), mb = pairwise_mean(b);
  std::vector<double> d(R);
  for (std::size_t r = 0; r < R; ++r) d[r] = (a[r] - ma) * (a[r] - ma) - (b[r] - mb) * (b[r] - mb);
  McEstimate e = mc_mean(d);
  e.value *= static_cast<double>(R) / static_cast<double>(R - 1);
  return e;
}

McEstimate update_drift(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n, Eigen::Index outer_reps,
                        Eigen::Index inner_reps, RngSeed seed) {
  require_reps(outer_reps);
  if (inner_reps < 2) throw InnerTooSmall("inner_reps must be at least 2");
  if (n < 2) throw TooFewRows("drift needs n >= 2");
  const auto R = static_cast<std::size_t>(outer_reps);
  const auto I = static_cast<std::size_t>(inner_reps);
  std::vector<double> vals(R);
  const Rng root(seed);
  parallel_for(R, [&](std::size_t r) {
    Rng rng = root.split(r);
    TrainingSetd train = draw_training_set(dgp, n, n, rng);  // last row is replaced by the inner draws
    const Sampled test = draw_sample(dgp, n, rng);
    const double removed = fit_predict(spec, head(train, n - 1), test.x);
    std::vector<double> inner(I);
    for (std::size_t i = 0; i < I; ++i) {
      const Sampled s = draw_sample(dgp, n, rng);
      train.y(n - 1) = s.y;
      train.x.row(n - 1) = s.x.transpose();
      inner[i] = fit_predict(spec, train, test.x);
    }
    const McEstimate m = mc_mean(inner);
    const double inner_var = m.std_err * m.std_err;  // sample variance / I
    vals[r] = (m.value - removed) * (m.value - removed) - inner_var;
  });
  return mc_mean(vals);
}

}  // namespace cvpi
