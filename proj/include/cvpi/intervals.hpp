#ifndef CVPI_INTERVALS_HPP_INCLUDED
#define CVPI_INTERVALS_HPP_INCLUDED

#include <string>

#include "cvpi/ecdf.hpp"
#include "cvpi/predictors.hpp"

namespace cvpi {

// Closed interval [lo, hi] over the extended reals; empty when lo > hi.
template <typename Scalar>
struct PredInterval {
  Scalar lo = 0;
  Scalar hi = 0;

  bool empty() const { return lo > hi; }
  Scalar length() const {
    if (empty()) return 0;
    if (std::isinf(lo) || std::isinf(hi)) return pos_inf<Scalar>();
    return hi - lo;
  }
  bool contains(Scalar y) const { return lo <= y && y <= hi; }
  // as sets; the empty set is inside everything
  bool subset_of(const PredInterval& o) const { return empty() || (o.lo <= lo && hi <= o.hi); }
  bool operator==(const PredInterval& o) const { return lo == o.lo && hi == o.hi; }
};

using PredIntervald = PredInterval<double>;

enum class BaseMethod { cv, cv_plus, fitted_values };

struct IntervalMethod {
  BaseMethod base = BaseMethod::cv;
  bool symmetrized = false;

  static IntervalMethod jackknife() { return {BaseMethod::cv, false}; }
  static IntervalMethod jackknife_plus() { return {BaseMethod::cv_plus, false}; }
};

std::string method_name(IntervalMethod m);
BaseMethod parse_base_method(const std::string& name);

// [Q_a1(G) - delta, Q_a2(G) + delta] for the fold-weighted ecdf G of the
// method's atoms:
//   cv             yhat + u_i
//   cv_plus        yhat^{-K_j(i)} + u_i
//   fitted_values  yhat + (y_i - fitted_i), uniform weights
// Symmetrized, with g = a2 - a1:
//   cv             yhat -+ (Q_g(|u|) + delta)
//   cv_plus        [-Q_g(-yhat^{-K} + |u|) - delta, Q_g(yhat^{-K} + |u|) + delta]
//   fitted_values  yhat -+ (Q_g(|y - fitted|) + delta)
// Negative delta shrinks the interval.
PredIntervald interval(IntervalMethod method, const ResidualBundle& bundle, double alpha1, double alpha2, double delta);

// The cdf whose quantiles give the (non-symmetrized) interval.
StepCdfd interval_atoms(IntervalMethod method, const ResidualBundle& bundle);

struct ShortestInterval {
  double alpha1 = 0, alpha2 = 0;
  PredIntervald interval;
};

// Minimum-length interval among quantile pairs with alpha2 - alpha1 = nominal.
// The interval only changes when alpha1 crosses an atom of the ecdf, so one
// candidate per atom cell suffices (plus alpha1 = 0). Ties go to the smallest
// alpha1. Symmetrized methods have the single candidate (0, nominal).
ShortestInterval shortest_interval(IntervalMethod method, const ResidualBundle& bundle, double nominal, double delta);

// F(Q_a2 + 2 delta) - F((Q_a1 - 2 delta)-) on the fold ecdf F of the
// residuals; compare against a2 - a1.
double coverage_ceiling(const ResidualBundle& bundle, double alpha1, double alpha2, double delta);

// Fold ecdf of arbitrary per-index values using the bundle's partition.
StepCdfd fold_values_ecdf(const FoldPartition& partition, const Eigen::Ref<const Eigen::VectorXd>& values);

}  // namespace cvpi

#endif  // CVPI_INTERVALS_HPP_INCLUDED
