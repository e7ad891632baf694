#ifndef CVPI_PREDICTORS_HPP_INCLUDED
#define CVPI_PREDICTORS_HPP_INCLUDED

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "cvpi/data.hpp"
#include "cvpi/ridge.hpp"

namespace cvpi {

enum class PredictorKind {
  ridge,
  knn_mean,
  max_response,
  neg_max_response,
  dirac_threshold,
  constant,
  mean_response,
  // mean(y) + shift * 1{training size even}; its output jumps by `shift`
  // between consecutive sizes, which gives a drift with a known value
  parity_shift,
};

struct PredictorSpec {
  PredictorKind kind = PredictorKind::constant;
  double lambda = 1.0;      // ridge
  int neighbors = 1;        // knn_mean
  double level = 1.0;       // dirac_threshold: output L
  bool threshold_uses_train_size = true;
  double threshold = 0.0;   // dirac_threshold when not using the train size
  double value = 0.0;       // constant output, parity_shift offset

  void validate() const;

  static PredictorSpec ridge(double lambda);
  static PredictorSpec knn(int neighbors);
  static PredictorSpec max_response();
  static PredictorSpec neg_max_response();
  static PredictorSpec dirac(double level);
  static PredictorSpec constant(double c);
  static PredictorSpec mean_response();
  static PredictorSpec parity_shift(double shift);
};

std::string kind_name(PredictorKind kind);
PredictorKind parse_kind(const std::string& name);

// A predictor trained on one data set. Linear models keep their coefficients
// so many test points can be scored with one matrix product.
class FittedModel {
 public:
  double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  // one prediction per row of xs
  Eigen::VectorXd predict_rows(const Eigen::Ref<const Eigen::MatrixXd>& xs) const;

  bool is_linear() const { return kind_ == PredictorKind::ridge; }
  const Eigen::VectorXd& coefficients() const { return beta_; }
  // Output that does not depend on x (constant, max, mean, parity kinds).
  std::optional<double> constant_output() const;

 private:
  friend FittedModel fit(const PredictorSpec&, const TrainingSetd&);
  friend FittedModel fit_ridge_from_gram(const GramSystem<double>&, double);

  PredictorKind kind_ = PredictorKind::constant;
  PredictorSpec spec_;
  Eigen::Index p_ = 0;
  Eigen::Index train_size_ = 0;
  double scalar_ = 0.0;
  Eigen::VectorXd beta_;
  TrainingSetd train_;  // knn only, rows in canonical order
};

FittedModel fit(const PredictorSpec& spec, const TrainingSetd& train);
FittedModel fit_ridge_from_gram(const GramSystem<double>& g, double lambda);

double fit_predict(const PredictorSpec& spec, const TrainingSetd& train, const Eigen::Ref<const Eigen::VectorXd>& xnew);

// Partition of {0..n-1} into k nonempty folds.
struct FoldPartition {
  std::vector<std::vector<Eigen::Index>> folds;
  std::vector<Eigen::Index> fold_of;

  Eigen::Index n() const { return static_cast<Eigen::Index>(fold_of.size()); }
  Eigen::Index k() const { return static_cast<Eigen::Index>(folds.size()); }
  bool singletons() const { return k() == n(); }
  bool equal_sizes() const;

  static FoldPartition leave_one_out(Eigen::Index n);
  // contiguous blocks, the first n mod k folds one row larger
  static FoldPartition kfold(Eigen::Index n, Eigen::Index k);
  static FoldPartition from_folds(std::vector<std::vector<Eigen::Index>> folds, Eigen::Index n);
};

// All fits a cross-validation interval needs for one training set; none of
// them depends on the test point.
struct FoldFits {
  FoldPartition partition;
  FittedModel full;
  std::vector<FittedModel> without_fold;
  Eigen::VectorXd residuals;  // y_i - prediction of the fit without i's fold
  Eigen::VectorXd responses;
  std::optional<Eigen::VectorXd> fitted_values;  // in-sample, full-data fit

  // p x k matrix of fold coefficients when the model is linear
  Eigen::MatrixXd fold_coefficients() const;
};

// `fast` lets ridge reuse the full Gram matrix, removing each fold's rows
// (a rank-|K_j| downdate) instead of refitting from scratch.
FoldFits fit_folds(const PredictorSpec& spec, const TrainingSetd& train, const FoldPartition& partition,
                   bool want_fitted = false, bool fast = true);

struct ResidualBundle {
  FoldPartition partition;
  Eigen::VectorXd loo_residuals;
  Eigen::VectorXd fold_predictions;  // prediction at x_new of the fit without fold j
  double full_prediction = 0.0;
  Eigen::VectorXd responses;
  std::optional<Eigen::VectorXd> fitted_values;

  void validate() const;
};

ResidualBundle bundle_at(const FoldFits& fits, const Eigen::Ref<const Eigen::VectorXd>& xnew);

ResidualBundle leave_fold_out_residuals(const PredictorSpec& spec, const TrainingSetd& train,
                                        const FoldPartition& partition, const Eigen::Ref<const Eigen::VectorXd>& xnew,
                                        bool want_fitted = false, bool fast = true);

}  // namespace cvpi

#endif  // CVPI_PREDICTORS_HPP_INCLUDED
