#include "cvpi/intervals.hpp"

#include <cmath>

namespace cvpi {

std::string method_name(IntervalMethod m) {
  std::string base = m.base == BaseMethod::cv ? "cv" : m.base == BaseMethod::cv_plus ? "cv_plus" : "fitted_values";
  return m.symmetrized ? base + "_symmetrized" : base;
}

BaseMethod parse_base_method(const std::string& name) {
  if (name == "cv" || name == "jackknife") return BaseMethod::cv;
  if (name == "cv_plus" || name == "jackknife_plus") return BaseMethod::cv_plus;
  if (name == "fitted_values" || name == "fitted") return BaseMethod::fitted_values;
  throw InvalidParameter("unknown interval method '" + name + "'");
}

StepCdfd fold_values_ecdf(const FoldPartition& partition, const Eigen::Ref<const Eigen::VectorXd>& values) {
  std::vector<std::vector<double>> per_fold(partition.folds.size());
  for (std::size_t j = 0; j < partition.folds.size(); ++j) {
    per_fold[j].reserve(partition.folds[j].size());
    for (Eigen::Index i : partition.folds[j]) per_fold[j].push_back(values(i));
  }
  return fold_ecdf(per_fold);
}

namespace {

const Eigen::VectorXd& fitted_or_throw(const ResidualBundle& b) {
  if (!b.fitted_values) throw MissingFittedValues("fitted-values interval needs in-sample fitted values");
  if (b.responses.size() != b.partition.n()) throw InvalidBundle("fitted-values interval needs the responses");
  return *b.fitted_values;
}

Eigen::VectorXd plus_centers(const ResidualBundle& b) {
  Eigen::VectorXd c(b.partition.n());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = b.fold_predictions(b.partition.fold_of[static_cast<std::size_t>(i)]);
  return c;
}

}  // namespace

StepCdfd interval_atoms(IntervalMethod method, const ResidualBundle& b) {
  b.validate();
  switch (method.base) {
    case BaseMethod::cv:
      return fold_values_ecdf(b.partition, (b.full_prediction + b.loo_residuals.array()).matrix());
    case BaseMethod::cv_plus:
      return fold_values_ecdf(b.partition, plus_centers(b) + b.loo_residuals);
    case BaseMethod::fitted_values: {
      const auto& fitted = fitted_or_throw(b);
      return uniform_ecdf((b.full_prediction + (b.responses - fitted).array()).matrix());
    }
  }
  throw InvalidParameter("unknown method");
}

PredIntervald interval(IntervalMethod method, const ResidualBundle& b, double alpha1, double alpha2, double delta) {
  if (!method.symmetrized) {
    const StepCdfd G = interval_atoms(method, b);
    return {quantile(G, alpha1) - delta, quantile(G, alpha2) + delta};
  }
  b.validate();
  const double level = alpha2 - alpha1;
  switch (method.base) {
    case BaseMethod::cv: {
      const double q = quantile(fold_values_ecdf(b.partition, b.loo_residuals.cwiseAbs()), level);
      return {b.full_prediction - q - delta, b.full_prediction + q + delta};
    }
    case BaseMethod::cv_plus: {
      const Eigen::VectorXd c = plus_centers(b);
      const Eigen::VectorXd r = b.loo_residuals.cwiseAbs();
      const double hi = quantile(fold_values_ecdf(b.partition, c + r), level);
      const double lo = -quantile(fold_values_ecdf(b.partition, r - c), level);
      return {lo - delta, hi + delta};
    }
    case BaseMethod::fitted_values: {
      const auto& fitted = fitted_or_throw(b);
      const double q = quantile(uniform_ecdf((b.responses - fitted).cwiseAbs()), level);
      return {b.full_prediction - q - delta, b.full_prediction + q + delta};
    }
  }
  throw InvalidParameter("unknown method");
}

ShortestInterval shortest_interval(IntervalMethod method, const ResidualBundle& b, double nominal, double delta) {
  if (!(nominal > 0 && nominal <= 1)) throw InvalidParameter("nominal level must lie in (0, 1]");
  std::vector<double> starts{0.0};
  if (!method.symmetrized) {
    const StepCdfd G = interval_atoms(method, b);
    const Eigen::Index m = G.size();
    for (Eigen::Index j = 0; j < m; ++j) {
      // alpha1 in (c_{j-1}, c_j] puts the lower end on atom j
      const double prev = j == 0 ? 0.0 : G.cum(j - 1);
      if (!(prev < 1.0 - nominal)) break;
      Eigen::Index k = j;
      while (k < m && !(G.cum(k) > prev + nominal)) ++k;
      if (k >= m) break;
      starts.push_back(std::min(G.cum(k) - nominal, G.cum(j)));
    }
  }
  ShortestInterval best;
  bool have = false;
  for (double a1 : starts) {
    const PredIntervald pi = interval(method, b, a1, a1 + nominal, delta);
    if (!have || pi.length() < best.interval.length() ||
        (pi.length() == best.interval.length() && a1 < best.alpha1)) {
      best = {a1, a1 + nominal, pi};
      have = true;
    }
  }
  return best;
}

double coverage_ceiling(const ResidualBundle& b, double alpha1, double alpha2, double delta) {
  if (!(delta > 0)) throw InvalidTolerance("coverage ceiling needs delta > 0");
  b.validate();
  const StepCdfd F = fold_values_ecdf(b.partition, b.loo_residuals);
  return eval(F, quantile(F, alpha2) + 2 * delta) - left_limit(F, quantile(F, alpha1) - 2 * delta);
}

}  // namespace cvpi
