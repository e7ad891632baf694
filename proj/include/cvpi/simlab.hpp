#ifndef CVPI_SIMLAB_HPP_INCLUDED
#define CVPI_SIMLAB_HPP_INCLUDED

#include <string>
#include <vector>

#include "cvpi/intervals.hpp"
#include "cvpi/stability.hpp"

namespace cvpi {

struct QuantileSummary {
  double mean = 0, q05 = 0, q50 = 0, q95 = 0;
};

// Sample quantiles use the left-continuous inverse of the ecdf, like every
// other quantile here.
QuantileSummary summarize(const std::vector<double>& values);

// Fold fits for one training set plus everything an interval needs that does
// not depend on the test point. Scores test points in batches.
class IntervalEngine {
 public:
  IntervalEngine(const PredictorSpec& spec, const TrainingSetd& train, const FoldPartition& partition,
                 bool want_fitted = false);

  const FoldFits& fits() const { return fits_; }
  Eigen::Index k() const { return fits_.partition.k(); }

  // full: one prediction per row; folds: rows x k
  void predict(const Eigen::Ref<const Eigen::MatrixXd>& xs, Eigen::VectorXd& full, Eigen::MatrixXd& folds) const;

  // Same result as interval(method, bundle_at(fits, x), ...), without building
  // the bundle or the ecdf for the x-independent methods.
  PredIntervald interval_at(IntervalMethod method, double full_pred, const Eigen::Ref<const Eigen::RowVectorXd>& fold_preds,
                            double alpha1, double alpha2, double delta) const;

 private:
  FoldFits fits_;
  StepCdfd residual_cdf_;      // fold ecdf of u
  StepCdfd abs_residual_cdf_;  // fold ecdf of |u|
  bool uniform_weights_ = false;
  Eigen::MatrixXd fold_coef_;
};

// Draws test points for conditional coverage from this stream.
RngSeed test_stream_seed(const Rng& rep_stream);

// Fraction of mc_test fresh draws covered by the interval built at their x.
double conditional_coverage(const PredictorSpec& spec, const DgpSpec& dgp, const TrainingSetd& train,
                            IntervalMethod method, double alpha1, double alpha2, double delta, Eigen::Index mc_test,
                            RngSeed seed, const PartitionRule& rule = {});

struct CoverageReport {
  double nominal = 0;
  std::vector<double> conditional_cov;
  QuantileSummary summary;
  Eigen::Index mc_test_points = 0;
  Eigen::Index reps = 0;

  std::string to_csv() const;
};

CoverageReport coverage_distribution(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n,
                                     IntervalMethod method, double alpha1, double alpha2, double delta,
                                     Eigen::Index train_reps, Eigen::Index mc_test, RngSeed seed,
                                     const PartitionRule& rule = {});

// One pass over training sets that measures everything the coverage and
// Jackknife-vs-Jackknife+ checks need. Distortions are per training set:
//   shrunk/inflated  -+ shrink_factor * IQR of the residual ecdf
//   equivalence      equiv_factor * IQR, tolerance eps, base distortion kappa
struct CoverageStudyConfig {
  PredictorSpec spec;
  DgpSpec dgp;
  Eigen::Index n = 200;
  double alpha1 = 0.05, alpha2 = 0.95;
  Eigen::Index train_reps = 200;
  Eigen::Index mc_test = 50000;
  double shrink_factor = 0.1;
  double equiv_factor = 0.1;
  double eps = 0.05;
  double kappa = 0.0;
  PartitionRule rule;
  RngSeed seed;
};

struct CoverageStudyRep {
  double iqr = 0;
  double cov_cv = 0;           // delta = 0
  double cov_cv_shrunk = 0;
  double cov_cv_inflated = 0;
  double cov_cv_plus = 0;      // delta = 0
  double equiv_min = 0;        // inf over quantile pairs of cov_CV(a1-eps, a2+eps, kappa+d) - cov_CV+(a1, a2, kappa)
  double exceed_mean = 0;      // (1/k) sum_j P(|yhat - yhat^{-K_j}| > d | T_n)
};

struct CoverageStudyReport {
  CoverageStudyConfig config;
  std::vector<CoverageStudyRep> reps;
  std::vector<double> exceed_by_fold;  // averaged over reps and test points
  double equiv_event_freq = 0;
  double equiv_event_se = 0;
  double equiv_bound = 0;
  bool uniform_weights = true;  // the equivalence event is only computed for uniform fold weights

  std::string to_csv() const;
};

CoverageStudyReport run_coverage_study(const CoverageStudyConfig& config);

struct GapReport {
  std::vector<double> cov_j, cov_jplus;
  double sup_gap = 0, q95_gap = 0;
  double equiv_event_freq = 0, equiv_event_se = 0, equiv_bound = 0;
};

GapReport jk_vs_jkplus_gap(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n, double alpha1, double alpha2,
                           Eigen::Index train_reps, Eigen::Index mc_test, RngSeed seed, double eps = 0.05,
                           double equiv_factor = 0.1);

struct LengthReport {
  std::vector<double> len_j, len_jplus;
  double frac_jplus_le_j = 0, frac_j_le_jplus = 0;
  double frac_jplus_lt_j = 0, frac_j_lt_jplus = 0;

  std::string to_csv() const;
};

// Jackknife and Jackknife+ lengths at one fresh test point per training set.
LengthReport length_compare(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n, double alpha1,
                            double alpha2, Eigen::Index train_reps, RngSeed seed);

struct GridPoint {
  Eigen::Index n = 0;
  McEstimate value;
};

std::string grid_to_csv(const std::vector<GridPoint>& grid, const std::string& column);

// E L_delta(F_n hat, F_n): the residual ecdf against an mc_oracle-point ecdf
// of fresh prediction errors.
std::vector<GridPoint> gauge_convergence(const PredictorSpec& spec, const DgpSpec& dgp,
                                         const std::vector<Eigen::Index>& n_grid, double delta,
                                         Eigen::Index train_reps, Eigen::Index mc_oracle, RngSeed seed);

// Mean symmetrized-Jackknife length at nominal level over the grid.
std::vector<GridPoint> infinite_length_probe(const PredictorSpec& spec, const DgpSpec& dgp,
                                             const std::vector<Eigen::Index>& n_grid, double nominal,
                                             Eigen::Index train_reps, RngSeed seed);

// Monotone within noise: consecutive values never move against `increasing`
// by more than `sigmas` combined standard errors.
bool isotonic_within(const std::vector<McEstimate>& values, bool increasing, double sigmas = 3.0);

}  // namespace cvpi

#endif  // CVPI_SIMLAB_HPP_INCLUDED
