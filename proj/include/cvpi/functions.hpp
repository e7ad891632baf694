#ifndef CVPI_FUNCTIONS_HPP_INCLUDED
#define CVPI_FUNCTIONS_HPP_INCLUDED

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvpi/ecdf.hpp"
#include "cvpi/gauge.hpp"

namespace cvpi {

// Nondecreasing real function from a small closed family. Used as a loss in
// the risk module and as the test function for expectation transfer.
class MonotoneFunction {
 public:
  enum class Kind { zero, hinge, squared_hinge, indicator_ge, clipped_linear, table };

  static MonotoneFunction zero();
  static MonotoneFunction hinge();          // max(0, x)
  static MonotoneFunction squared_hinge();  // max(0, x)^2
  static MonotoneFunction indicator_ge(double c);
  // 0 below a, 1 above b, linear in between; a < b
  static MonotoneFunction clipped_linear(double a, double b);
  // linear interpolation through (xs, ys), flat outside; xs strictly increasing.
  // Monotonicity is not assumed here; check_monotone() rejects bad tables.
  static MonotoneFunction table(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;

  // [M1, M2] when the function is bounded
  std::optional<std::pair<double, double>> bounds() const;
  std::optional<double> lipschitz() const;

  // Probes a fixed grid (2001 points on [-100, 100] plus every table knot and
  // its neighbours) and throws NonMonotoneLoss on a decrease.
  void check_monotone() const;

  Kind kind() const { return kind_; }
  std::string name() const;

 private:
  Kind kind_ = Kind::zero;
  double a_ = 0, b_ = 0;
  std::vector<double> xs_, ys_;
};

// Right-continuous step function: values[k] on [knots[k-1], knots[k]).
struct StepFunction {
  std::vector<double> knots;
  std::vector<double> values;  // knots.size() + 1 entries

  double operator()(double x) const;
  double total_variation() const;
};

template <typename Fn>
double expect(const StepCdfd& F, Fn&& f, double shift = 0.0) {
  return expectation(F, [&](double t) { return f(t + shift); });
}

struct TransferBounds {
  double lo = 0, hi = 0, gauge = 0;
};

// Brackets E f(X) (X ~ F) with expectations under G shifted by -+delta:
// [E f(Y - delta) - (M2 - M1) L, E f(Y + delta) + (M2 - M1) L].
TransferBounds expectation_transfer(const MonotoneFunction& f, const StepCdfd& F, const StepCdfd& G, double delta);

// L delta + (M2 - M1) L_delta(F, G), a bound on |E f(X) - E f(Y)|
double lipschitz_transfer_bound(const MonotoneFunction& f, const StepCdfd& F, const StepCdfd& G, double delta);

// V(g) * Kolmogorov(F, G), a bound on |E g(X) - E g(Y)|
double koksma_bound(const StepFunction& g, const StepCdfd& F, const StepCdfd& G);

}  // namespace cvpi

#endif  // CVPI_FUNCTIONS_HPP_INCLUDED
