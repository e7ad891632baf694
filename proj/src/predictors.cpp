#include "cvpi/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cvpi {

void PredictorSpec::validate() const {
  switch (kind) {
    case PredictorKind::ridge:
      if (!(lambda >= 0)) throw InvalidParameter("ridge lambda must be nonnegative");
      break;
    case PredictorKind::knn_mean:
      if (neighbors < 1) throw InvalidParameter("knn needs at least one neighbour");
      break;
    default:
      break;
  }
}

PredictorSpec PredictorSpec::ridge(double lambda) {
  PredictorSpec s;
  s.kind = PredictorKind::ridge;
  s.lambda = lambda;
  return s;
}
PredictorSpec PredictorSpec::knn(int neighbors) {
  PredictorSpec s;
  s.kind = PredictorKind::knn_mean;
  s.neighbors = neighbors;
  return s;
}
PredictorSpec PredictorSpec::max_response() {
  PredictorSpec s;
  s.kind = PredictorKind::max_response;
  return s;
}
PredictorSpec PredictorSpec::neg_max_response() {
  PredictorSpec s;
  s.kind = PredictorKind::neg_max_response;
  return s;
}
PredictorSpec PredictorSpec::dirac(double level) {
  PredictorSpec s;
  s.kind = PredictorKind::dirac_threshold;
  s.level = level;
  return s;
}
PredictorSpec PredictorSpec::constant(double c) {
  PredictorSpec s;
  s.kind = PredictorKind::constant;
  s.value = c;
  return s;
}
PredictorSpec PredictorSpec::mean_response() {
  PredictorSpec s;
  s.kind = PredictorKind::mean_response;
  return s;
}
PredictorSpec PredictorSpec::parity_shift(double shift) {
  PredictorSpec s;
  s.kind = PredictorKind::parity_shift;
  s.value = shift;
  return s;
}

namespace {
const std::pair<PredictorKind, const char*> kKindNames[] = {
    {PredictorKind::ridge, "ridge"},
    {PredictorKind::knn_mean, "knn_mean"},
    {PredictorKind::max_response, "max_response"},
    {PredictorKind::neg_max_response, "neg_max_response"},
    {PredictorKind::dirac_threshold, "dirac_threshold"},
    {PredictorKind::constant, "constant"},
    {PredictorKind::mean_response, "mean_response"},
    {PredictorKind::parity_shift, "parity_shift"},
};

double sorted_mean(Eigen::VectorXd v) {
  std::sort(v.data(), v.data() + v.size());
  double s = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += v(i);
  return s / static_cast<double>(v.size());
}
}  // namespace

std::string kind_name(PredictorKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "?";
}

PredictorKind parse_kind(const std::string& name) {
  for (const auto& [k, n] : kKindNames)
    if (name == n) return k;
  throw InvalidParameter("unknown predictor kind '" + name + "'");
}

FittedModel fit(const PredictorSpec& spec, const TrainingSetd& train) {
  spec.validate();
  if (train.n() < 1) throw TooFewRows("cannot fit on an empty training set");
  FittedModel m;
  m.kind_ = spec.kind;
  m.spec_ = spec;
  m.p_ = train.p();
  m.train_size_ = train.n();
  switch (spec.kind) {
    case PredictorKind::ridge:
      m.beta_ = ridge_coefficients(train, spec.lambda);
      break;
    case PredictorKind::knn_mean:
      m.train_ = subset(train, canonical_order(train));
      break;
    case PredictorKind::max_response:
      m.scalar_ = train.y.maxCoeff();
      break;
    case PredictorKind::neg_max_response:
      m.scalar_ = -train.y.maxCoeff();
      break;
    case PredictorKind::dirac_threshold:
      if (train.p() < 1) throw DimensionMismatch("dirac_threshold reads the first feature");
      m.scalar_ = spec.threshold_uses_train_size ? static_cast<double>(train.n()) : spec.threshold;
      break;
    case PredictorKind::constant:
      m.scalar_ = spec.value;
      break;
    case PredictorKind::mean_response:
      m.scalar_ = sorted_mean(train.y);
      break;
    case PredictorKind::parity_shift:
      m.scalar_ = sorted_mean(train.y) + (train.n() % 2 == 0 ? spec.value : 0.0);
      break;
  }
  return m;
}

FittedModel fit_ridge_from_gram(const GramSystem<double>& g, double lambda) {
  FittedModel m;
  m.kind_ = PredictorKind::ridge;
  m.spec_ = PredictorSpec::ridge(lambda);
  m.p_ = g.xtx.rows();
  m.train_size_ = g.rows;
  m.beta_ = solve_ridge_system(g, lambda * static_cast<double>(g.rows));
  return m;
}

std::optional<double> FittedModel::constant_output() const {
  switch (kind_) {
    case PredictorKind::max_response:
    case PredictorKind::neg_max_response:
    case PredictorKind::constant:
    case PredictorKind::mean_response:
    case PredictorKind::parity_shift:
      return scalar_;
    default:
      return std::nullopt;
  }
}

double FittedModel::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != p_) throw DimensionMismatch("feature vector has length " + std::to_string(x.size()) +
                                              ", model expects " + std::to_string(p_));
  switch (kind_) {
    case PredictorKind::ridge:
      return p_ == 0 ? 0.0 : beta_.dot(x);
    case PredictorKind::dirac_threshold:
      return x(0) < scalar_ ? spec_.level : 0.0;
    case PredictorKind::knn_mean: {
      const Eigen::Index n = train_.n();
      std::vector<std::pair<double, double>> dy(static_cast<std::size_t>(n));
      for (Eigen::Index i = 0; i < n; ++i)
        dy[static_cast<std::size_t>(i)] = {(train_.x.row(i).transpose() - x).squaredNorm(), train_.y(i)};
      const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(spec_.neighbors), dy.size());
      std::partial_sort(dy.begin(), dy.begin() + static_cast<std::ptrdiff_t>(k), dy.end());
      double s = 0;
      for (std::size_t i = 0; i < k; ++i) s += dy[i].second;
      return s / static_cast<double>(k);
    }
    default:
      return scalar_;
  }
}

Eigen::VectorXd FittedModel::predict_rows(const Eigen::Ref<const Eigen::MatrixXd>& xs) const {
  if (xs.cols() != p_) throw DimensionMismatch("feature matrix width differs from the model");
  if (kind_ == PredictorKind::ridge) {
    if (p_ == 0) return Eigen::VectorXd::Zero(xs.rows());
    return xs * beta_;
  }
  if (auto c = constant_output()) return Eigen::VectorXd::Constant(xs.rows(), *c);
  Eigen::VectorXd out(xs.rows());
  for (Eigen::Index i = 0; i < xs.rows(); ++i) out(i) = predict(xs.row(i).transpose());
  return out;
}

double fit_predict(const PredictorSpec& spec, const TrainingSetd& train, const Eigen::Ref<const Eigen::VectorXd>& xnew) {
  return fit(spec, train).predict(xnew);
}

// --- folds ---------------------------------------------------------------

bool FoldPartition::equal_sizes() const {
  for (const auto& f : folds)
    if (f.size() != folds.front().size()) return false;
  return true;
}

FoldPartition FoldPartition::leave_one_out(Eigen::Index n) { return kfold(n, n); }

FoldPartition FoldPartition::kfold(Eigen::Index n, Eigen::Index k) {
  if (k < 1 || n < 1) throw InvalidParameter("fold count and n must be positive");
  if (k > n) throw EmptyFold("more folds than rows");
  std::vector<std::vector<Eigen::Index>> folds(static_cast<std::size_t>(k));
  const Eigen::Index base = n / k, extra = n % k;
  Eigen::Index next = 0;
  for (Eigen::Index j = 0; j < k; ++j) {
    const Eigen::Index size = base + (j < extra ? 1 : 0);
    for (Eigen::Index r = 0; r < size; ++r) folds[static_cast<std::size_t>(j)].push_back(next++);
  }
  return from_folds(std::move(folds), n);
}

FoldPartition FoldPartition::from_folds(std::vector<std::vector<Eigen::Index>> folds, Eigen::Index n) {
  FoldPartition part;
  part.fold_of.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t j = 0; j < folds.size(); ++j) {
    if (folds[j].empty()) throw EmptyFold("fold " + std::to_string(j) + " is empty");
    for (Eigen::Index i : folds[j]) {
      if (i < 0 || i >= n) throw InvalidParameter("fold index out of range");
      if (part.fold_of[static_cast<std::size_t>(i)] != -1) throw InvalidParameter("index in two folds");
      part.fold_of[static_cast<std::size_t>(i)] = static_cast<Eigen::Index>(j);
    }
  }
  for (Eigen::Index f : part.fold_of)
    if (f == -1) throw InvalidParameter("partition does not cover every index");
  if (folds.size() < 2) throw FoldLeavesNothing("a single fold leaves no rows to train on");
  part.folds = std::move(folds);
  return part;
}

Eigen::MatrixXd FoldFits::fold_coefficients() const {
  if (!full.is_linear()) throw InvalidParameter("fold coefficients need a linear model");
  Eigen::MatrixXd b(full.coefficients().size(), static_cast<Eigen::Index>(without_fold.size()));
  for (std::size_t j = 0; j < without_fold.size(); ++j) b.col(static_cast<Eigen::Index>(j)) = without_fold[j].coefficients();
  return b;
}

FoldFits fit_folds(const PredictorSpec& spec, const TrainingSetd& train, const FoldPartition& partition,
                   bool want_fitted, bool fast) {
  spec.validate();
  if (partition.n() != train.n()) throw InvalidParameter("partition size differs from the training set");
  if (partition.k() < 2) throw FoldLeavesNothing("a single fold leaves no rows to train on");
  const Eigen::Index n = train.n();

  FoldFits out;
  out.partition = partition;
  out.responses = train.y;
  out.residuals.resize(n);
  out.without_fold.reserve(static_cast<std::size_t>(partition.k()));

  const bool gram_path = fast && spec.kind == PredictorKind::ridge;
  GramSystem<double> full_gram;
  if (gram_path) {
    full_gram = gram_system(train, canonical_order(train));
    out.full = fit_ridge_from_gram(full_gram, spec.lambda);
  } else {
    out.full = fit(spec, train);
  }

  std::vector<char> in_fold(static_cast<std::size_t>(n), 0);
  for (const auto& fold : partition.folds) {
    for (Eigen::Index i : fold) in_fold[static_cast<std::size_t>(i)] = 1;
    if (gram_path) {
      GramSystem<double> g = full_gram;
      for (Eigen::Index i : fold) {
        const auto xi = train.x.row(i).transpose();
        g.xtx.noalias() -= xi * xi.transpose();
        g.xty.noalias() -= train.y(i) * xi;
      }
      g.rows = n - static_cast<Eigen::Index>(fold.size());
      out.without_fold.push_back(fit_ridge_from_gram(g, spec.lambda));
    } else {
      std::vector<Eigen::Index> keep;
      keep.reserve(static_cast<std::size_t>(n) - fold.size());
      for (Eigen::Index i = 0; i < n; ++i)
        if (!in_fold[static_cast<std::size_t>(i)]) keep.push_back(i);
      out.without_fold.push_back(fit(spec, subset(train, keep)));
    }
    for (Eigen::Index i : fold) {
      in_fold[static_cast<std::size_t>(i)] = 0;
      out.residuals(i) = train.y(i) - out.without_fold.back().predict(train.x.row(i).transpose());
    }
  }
  if (want_fitted) out.fitted_values = out.full.predict_rows(train.x);
  return out;
}

void ResidualBundle::validate() const {
  if (loo_residuals.size() != partition.n()) throw InvalidBundle("one residual per training row required");
  if (fold_predictions.size() != partition.k()) throw InvalidBundle("one fold prediction per fold required");
  if (responses.size() != 0 && responses.size() != partition.n()) throw InvalidBundle("response count mismatch");
  if (fitted_values && fitted_values->size() != partition.n()) throw InvalidBundle("fitted value count mismatch");
  if (partition.k() < 2) throw InvalidBundle("bundle needs at least two folds");
}

ResidualBundle bundle_at(const FoldFits& fits, const Eigen::Ref<const Eigen::VectorXd>& xnew) {
  ResidualBundle b;
  b.partition = fits.partition;
  b.loo_residuals = fits.residuals;
  b.responses = fits.responses;
  b.fitted_values = fits.fitted_values;
  b.full_prediction = fits.full.predict(xnew);
  b.fold_predictions.resize(static_cast<Eigen::Index>(fits.without_fold.size()));
  for (std::size_t j = 0; j < fits.without_fold.size(); ++j)
    b.fold_predictions(static_cast<Eigen::Index>(j)) = fits.without_fold[j].predict(xnew);
  return b;
}

ResidualBundle leave_fold_out_residuals(const PredictorSpec& spec, const TrainingSetd& train,
                                        const FoldPartition& partition, const Eigen::Ref<const Eigen::VectorXd>& xnew,
                                        bool want_fitted, bool fast) {
  return bundle_at(fit_folds(spec, train, partition, want_fitted, fast), xnew);
}

}  // namespace cvpi
