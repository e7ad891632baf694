#ifndef CVPI_STABILITY_HPP_INCLUDED
#define CVPI_STABILITY_HPP_INCLUDED

#include <span>
#include <vector>

#include "cvpi/data.hpp"
#include "cvpi/predictors.hpp"
#include "cvpi/rng.hpp"

namespace cvpi {

struct McEstimate {
  double value = 0;
  double std_err = 0;
};

// Mean and standard error (sample sd / sqrt(R)) with pairwise sums.
McEstimate mc_mean(std::span<const double> draws);

struct PartitionRule {
  bool leave_one_out = true;
  Eigen::Index k = 10;

  FoldPartition make(Eigen::Index n) const {
    return leave_one_out ? FoldPartition::leave_one_out(n) : FoldPartition::kfold(n, k);
  }
};

struct StabilityProfile {
  std::vector<double> eps_grid;
  std::vector<double> exceed_prob;  // (1/k) sum_j P(|yhat - yhat^{-K_j}| >= eps)
  std::vector<double> exceed_se;
  double mean_abs = 0;              // (1/k) sum_j E|yhat - yhat^{-K_j}|
  double mean_abs_se = 0;
  Eigen::Index reps = 0;
};

StabilityProfile oos_stability_profile(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n,
                                       const PartitionRule& rule, const std::vector<double>& eps_grid,
                                       Eigen::Index reps, RngSeed seed);

// E|A_{n+m-1}(x, T_{n+m-1}) - A_{n-1}(x, T_{n-1})|, where T_{n-1} is the first
// n-1 rows of T_{n+m-1} and every draw comes from the size-n design.
McEstimate m_stability(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n, Eigen::Index m,
                       Eigen::Index reps, RngSeed seed);

struct MStabilityRatio {
  McEstimate beta_m;
  McEstimate beta_1;
  double ratio = 0;     // beta_m / (sqrt(m) beta_1)
  double ratio_se = 0;  // delta method, both from the same draws
};

MStabilityRatio m_stability_ratio(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n, Eigen::Index m,
                                  Eigen::Index reps, RngSeed seed);

struct PacInputs {
  Eigen::Index k = 1;
  double delta = 1;
  double eps = 1;
  double mu = 0;  // centring used when the error expectations were estimated
  double L = 0;
  double pred_err_tail = 0;            // P(|y - yhat - mu| >= L)
  double pred_err_abs = 0;             // E|y - yhat - mu|
  std::vector<double> stability_trunc; // E min(2L + 3 delta, |yhat - yhat^{-K_j}|)
  std::vector<double> stability_abs;   // E|yhat - yhat^{-K_j}|
};

struct PacBounds {
  double bound_trunc = 1;
  double bound_abs = 1;
};

// Lower bounds on P(inf over quantile pairs of coverage - nominal > -2 eps) for
// CV intervals; values above 1 are clamped, negative values are left as is.
PacBounds pac_bound_cv(const PacInputs& in);

// (1 / (k eps^2)) sum_j P(|yhat - yhat^{-K_j}| > delta)
double equivalence_bound(Eigen::Index k, double eps, double delta, const std::vector<double>& exceed_probs);

// Var(yhat from n rows) - Var(yhat from the first n-1 of them), same draws.
McEstimate variance_gap(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n, Eigen::Index reps,
                        RngSeed seed);

// E[(E[yhat_{n+1} | T_{n-1}, x_{n+1}] - yhat^{-n})^2] by nested Monte Carlo with
// the inner-variance bias removed.
McEstimate update_drift(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n, Eigen::Index outer_reps,
                        Eigen::Index inner_reps, RngSeed seed);

}  // namespace cvpi

#endif  // CVPI_STABILITY_HPP_INCLUDED
