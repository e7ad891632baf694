#include "cvpi/functions.hpp"

#include <algorithm>
#include <cmath>

namespace cvpi {

MonotoneFunction MonotoneFunction::zero() { return {}; }

MonotoneFunction MonotoneFunction::hinge() {
  MonotoneFunction f;
  f.kind_ = Kind::hinge;
  return f;
}

MonotoneFunction MonotoneFunction::squared_hinge() {
  MonotoneFunction f;
  f.kind_ = Kind::squared_hinge;
  return f;
}

MonotoneFunction MonotoneFunction::indicator_ge(double c) {
  MonotoneFunction f;
  f.kind_ = Kind::indicator_ge;
  f.a_ = c;
  return f;
}

MonotoneFunction MonotoneFunction::clipped_linear(double a, double b) {
  if (!(a < b)) throw InvalidParameter("clipped_linear needs a < b");
  MonotoneFunction f;
  f.kind_ = Kind::clipped_linear;
  f.a_ = a;
  f.b_ = b;
  return f;
}

MonotoneFunction MonotoneFunction::table(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.empty()) throw LengthMismatch("loss table needs matching nonempty columns");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) throw InvalidParameter("loss table knots must be strictly increasing");
  for (double v : ys)
    if (!std::isfinite(v)) throw InvalidParameter("loss table values must be finite");
  MonotoneFunction f;
  f.kind_ = Kind::table;
  f.xs_ = std::move(xs);
  f.ys_ = std::move(ys);
  return f;
}

double MonotoneFunction::operator()(double x) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::hinge:
      return std::max(0.0, x);
    case Kind::squared_hinge: {
      const double h = std::max(0.0, x);
      return h * h;
    }
    case Kind::indicator_ge:
      return x >= a_ ? 1.0 : 0.0;
    case Kind::clipped_linear:
      if (x <= a_) return 0.0;
      if (x >= b_) return 1.0;
      return (x - a_) / (b_ - a_);
    case Kind::table: {
      if (x <= xs_.front()) return ys_.front();
      if (x >= xs_.back()) return ys_.back();
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const std::size_t k = static_cast<std::size_t>(it - xs_.begin());
      const double w = (x - xs_[k - 1]) / (xs_[k] - xs_[k - 1]);
      return ys_[k - 1] + w * (ys_[k] - ys_[k - 1]);
    }
  }
  return 0.0;
}

std::optional<std::pair<double, double>> MonotoneFunction::bounds() const {
  switch (kind_) {
    case Kind::zero:
      return std::pair{0.0, 0.0};
    case Kind::indicator_ge:
    case Kind::clipped_linear:
      return std::pair{0.0, 1.0};
    case Kind::table: {
      const auto [lo, hi] = std::minmax_element(ys_.begin(), ys_.end());
      return std::pair{*lo, *hi};
    }
    case Kind::hinge:
    case Kind::squared_hinge:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> MonotoneFunction::lipschitz() const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::hinge:
      return 1.0;
    case Kind::clipped_linear:
      return 1.0 / (b_ - a_);
    case Kind::table: {
      double L = 0;
      for (std::size_t i = 1; i < xs_.size(); ++i)
        L = std::max(L, std::abs(ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]));
      return L;
    }
    case Kind::squared_hinge:
    case Kind::indicator_ge:
      return std::nullopt;
  }
  return std::nullopt;
}

void MonotoneFunction::check_monotone() const {
  std::vector<double> grid;
  for (int i = 0; i <= 2000; ++i) grid.push_back(-100.0 + 0.1 * i);
  for (double x : xs_) {
    grid.push_back(x);
    grid.push_back(std::nextafter(x, -INFINITY));
    grid.push_back(std::nextafter(x, INFINITY));
  }
  std::sort(grid.begin(), grid.end());
  double prev = (*this)(grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = (*this)(grid[i]);
    if (cur < prev) throw NonMonotoneLoss(name() + " decreases near " + std::to_string(grid[i]));
    prev = cur;
  }
}

std::string MonotoneFunction::name() const {
  switch (kind_) {
    case Kind::zero:
      return "zero";
    case Kind::hinge:
      return "hinge";
    case Kind::squared_hinge:
      return "squared_hinge";
    case Kind::indicator_ge:
      return "indicator_ge";
    case Kind::clipped_linear:
      return "clipped_linear";
    case Kind::table:
      return "table";
  }
  return "?";
}

double StepFunction::operator()(double x) const {
  const auto k = std::upper_bound(knots.begin(), knots.end(), x) - knots.begin();
  return values[static_cast<std::size_t>(k)];
}

double StepFunction::total_variation() const {
  double v = 0;
  for (std::size_t i = 1; i < values.size(); ++i) v += std::abs(values[i] - values[i - 1]);
  return v;
}

TransferBounds expectation_transfer(const MonotoneFunction& f, const StepCdfd& F, const StepCdfd& G, double delta) {
  const auto b = f.bounds();
  if (!b) throw UnboundedLoss(f.name() + " has no finite bounds");
  f.check_monotone();
  TransferBounds out;
  out.gauge = levy_gauge(F, G, delta).value;
  const double spread = (b->second - b->first) * out.gauge;
  out.lo = expect(G, f, -delta) - spread;
  out.hi = expect(G, f, delta) + spread;
  return out;
}

double lipschitz_transfer_bound(const MonotoneFunction& f, const StepCdfd& F, const StepCdfd& G, double delta) {
  const auto b = f.bounds();
  if (!b) throw UnboundedLoss(f.name() + " has no finite bounds");
  const auto L = f.lipschitz();
  if (!L) throw InvalidParameter(f.name() + " is not Lipschitz");
  return *L * delta + (b->second - b->first) * levy_gauge(F, G, delta).value;
}

double koksma_bound(const StepFunction& g, const StepCdfd& F, const StepCdfd& G) {
  if (g.values.size() != g.knots.size() + 1) throw LengthMismatch("step function needs knots + 1 values");
  return g.total_variation() * kolmogorov(F, G);
}

}  // namespace cvpi
