#include "cvpi/risk.hpp"

#include <cmath>
#include <vector>

#include "cvpi/parallel.hpp"

namespace cvpi {

LossBounds loss_plugin_bounds(const Eigen::Ref<const Eigen::VectorXd>& residuals, const MonotoneFunction& loss,
                              double eps) {
  if (!(eps > 0)) throw InvalidTolerance("eps must be positive");
  if (residuals.size() == 0) throw TooFewRows("no residuals");
  loss.check_monotone();
  std::vector<double> lo(static_cast<std::size_t>(residuals.size())), hi(lo.size());
  for (Eigen::Index i = 0; i < residuals.size(); ++i) {
    const double a = std::abs(residuals(i));
    lo[static_cast<std::size_t>(i)] = loss(a - eps);
    hi[static_cast<std::size_t>(i)] = loss(a + eps);
  }
  return {pairwise_mean(lo) - eps, pairwise_mean(hi) + eps};
}

double mse_estimate(const Eigen::Ref<const Eigen::VectorXd>& residuals) {
  if (residuals.size() == 0) throw TooFewRows("no residuals");
  std::vector<double> sq(static_cast<std::size_t>(residuals.size()));
  for (Eigen::Index i = 0; i < residuals.size(); ++i) sq[static_cast<std::size_t>(i)] = residuals(i) * residuals(i);
  return pairwise_mean(sq);
}

double misclassification_estimate(const Eigen::Ref<const Eigen::VectorXd>& residuals) {
  if (residuals.size() == 0) throw TooFewRows("no residuals");
  Eigen::Index wrong = 0;
  for (Eigen::Index i = 0; i < residuals.size(); ++i) {
    const double r = residuals(i);
    const double nearest = std::round(r);
    if (!std::isfinite(r) || std::abs(r - nearest) > 1e-9)
      throw NonIntegerResiduals("residual " + std::to_string(r) + " is not an integer");
    if (nearest != 0.0) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(residuals.size());
}

}  // namespace cvpi
