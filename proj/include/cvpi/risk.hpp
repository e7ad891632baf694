#ifndef CVPI_RISK_HPP_INCLUDED
#define CVPI_RISK_HPP_INCLUDED

#include <Eigen/Dense>

#include "cvpi/functions.hpp"

namespace cvpi {

struct LossBounds {
  double lo = 0, hi = 0;
};

// lo = mean l(|u_i| - eps) - eps, hi = mean l(|u_i| + eps) + eps
LossBounds loss_plugin_bounds(const Eigen::Ref<const Eigen::VectorXd>& residuals, const MonotoneFunction& loss,
                              double eps);

// mean of u_i^2
double mse_estimate(const Eigen::Ref<const Eigen::VectorXd>& residuals);

// Fraction of nonzero residuals; residuals must be integers (class labels
// differences) to within 1e-9.
double misclassification_estimate(const Eigen::Ref<const Eigen::VectorXd>& residuals);

}  // namespace cvpi

#endif  // CVPI_RISK_HPP_INCLUDED
