#ifndef CVPI_ECDF_HPP_INCLUDED
#define CVPI_ECDF_HPP_INCLUDED

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "cvpi/errors.hpp"

namespace cvpi {

// Extended reals are plain floating point with +-infinity.
template <typename Scalar>
constexpr Scalar pos_inf() {
  return std::numeric_limits<Scalar>::infinity();
}
template <typename Scalar>
constexpr Scalar neg_inf() {
  return -std::numeric_limits<Scalar>::infinity();
}

// Right-continuous step cdf: F(t) = cum(j) on [jumps(j), jumps(j+1)).
// jumps strictly increasing, cum nondecreasing with last entry exactly 1.
template <typename Scalar>
struct StepCdf {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector jumps;
  Vector cum;

  Eigen::Index size() const { return jumps.size(); }
  Scalar weight(Eigen::Index j) const { return j == 0 ? cum(0) : cum(j) - cum(j - 1); }

  bool operator==(const StepCdf& o) const {
    return jumps.size() == o.jumps.size() && jumps == o.jumps && cum == o.cum;
  }
};

using StepCdfd = StepCdf<double>;

namespace detail {

constexpr double kWeightTolerance = 1e-12;
constexpr double kQuantileGuard = 1e-12;

// Sort (value, weight) pairs, merge exact duplicates, build cum.
// With all weights equal the cum entries are count/n, exact up to one rounding.
template <typename Scalar>
StepCdf<Scalar> build_cdf(std::vector<std::pair<Scalar, Scalar>> atoms, bool uniform) {
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Scalar> jumps, cum;
  jumps.reserve(atoms.size());
  cum.reserve(atoms.size());
  const Scalar total = static_cast<Scalar>(atoms.size());
  Scalar running = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    running += atoms[i].second;
    ++count;
    if (i + 1 < atoms.size() && atoms[i + 1].first == atoms[i].first) continue;
    jumps.push_back(atoms[i].first);
    cum.push_back(uniform ? static_cast<Scalar>(count) / total : running);
  }
  cum.back() = Scalar(1);
  StepCdf<Scalar> F;
  F.jumps = Eigen::Map<const typename StepCdf<Scalar>::Vector>(jumps.data(), static_cast<Eigen::Index>(jumps.size()));
  F.cum = Eigen::Map<const typename StepCdf<Scalar>::Vector>(cum.data(), static_cast<Eigen::Index>(cum.size()));
  return F;
}

}  // namespace detail

template <typename Derived>
StepCdf<typename Derived::Scalar> uniform_ecdf(const Eigen::DenseBase<Derived>& values) {
  using Scalar = typename Derived::Scalar;
  if (values.size() == 0) throw WeightSumError("ecdf of an empty sample");
  std::vector<std::pair<Scalar, Scalar>> atoms;
  atoms.reserve(static_cast<std::size_t>(values.size()));
  const Scalar w = Scalar(1) / static_cast<Scalar>(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) atoms.emplace_back(values.derived().coeff(i), w);
  return detail::build_cdf(std::move(atoms), true);
}

template <typename DerivedV, typename DerivedW>
StepCdf<typename DerivedV::Scalar> weighted_ecdf(const Eigen::DenseBase<DerivedV>& values,
                                                 const Eigen::DenseBase<DerivedW>& weights) {
  using Scalar = typename DerivedV::Scalar;
  if (values.size() != weights.size()) throw LengthMismatch("values and weights differ in length");
  if (values.size() == 0) throw WeightSumError("ecdf of an empty sample");
  Scalar total = 0;
  bool uniform = true;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    const Scalar w = weights.derived().coeff(i);
    if (!(w > 0)) throw WeightSumError("weights must be positive");
    total += w;
    uniform = uniform && w == weights.derived().coeff(0);
  }
  if (std::abs(total - Scalar(1)) > Scalar(detail::kWeightTolerance)) throw WeightSumError("weights do not sum to 1");
  std::vector<std::pair<Scalar, Scalar>> atoms;
  atoms.reserve(static_cast<std::size_t>(values.size()));
  for (Eigen::Index i = 0; i < values.size(); ++i)
    atoms.emplace_back(values.derived().coeff(i), weights.derived().coeff(i));
  return detail::build_cdf(std::move(atoms), uniform);
}

// Atom for index i in fold j gets weight 1 / (k |K_j|).
template <typename Scalar>
StepCdf<Scalar> fold_ecdf(const std::vector<std::vector<Scalar>>& per_fold) {
  if (per_fold.size() < 2) throw EmptyFold("fold ecdf needs at least two folds");
  const Scalar k = static_cast<Scalar>(per_fold.size());
  bool uniform = true;
  std::vector<std::pair<Scalar, Scalar>> atoms;
  for (const auto& fold : per_fold) {
    if (fold.empty()) throw EmptyFold("empty fold");
    uniform = uniform && fold.size() == per_fold.front().size();
    const Scalar w = Scalar(1) / (k * static_cast<Scalar>(fold.size()));
    for (Scalar v : fold) atoms.emplace_back(v, w);
  }
  return detail::build_cdf(std::move(atoms), uniform);
}

template <typename Scalar>
Scalar eval(const StepCdf<Scalar>& F, Scalar t) {
  const Scalar* b = F.jumps.data();
  const auto idx = std::upper_bound(b, b + F.size(), t) - b;
  return idx == 0 ? Scalar(0) : F.cum(idx - 1);
}

template <typename Scalar>
Scalar left_limit(const StepCdf<Scalar>& F, Scalar t) {
  const Scalar* b = F.jumps.data();
  const auto idx = std::lower_bound(b, b + F.size(), t) - b;
  return idx == 0 ? Scalar(0) : F.cum(idx - 1);
}

// Index of the first atom with cum >= alpha (guarded), or -1 / size() for the
// infinite cases alpha <= 0 / alpha > 1.
template <typename Scalar>
Eigen::Index quantile_index(const StepCdf<Scalar>& F, Scalar alpha) {
  if (!(alpha > 0)) return -1;
  if (alpha > 1) return F.size();
  const Scalar target = alpha - Scalar(detail::kQuantileGuard);
  const Scalar* c = F.cum.data();
  return std::lower_bound(c, c + F.size(), target) - c;
}

// Q_alpha(F) = inf{x : F(x) >= alpha}; -inf for alpha <= 0, +inf for alpha > 1.
template <typename Scalar>
Scalar quantile(const StepCdf<Scalar>& F, Scalar alpha) {
  const Eigen::Index idx = quantile_index(F, alpha);
  if (idx < 0) return neg_inf<Scalar>();
  if (idx >= F.size()) return pos_inf<Scalar>();
  return F.jumps(idx);
}

// The cdf of X / c when F is the cdf of X; c > 0.
template <typename Scalar>
StepCdf<Scalar> scaled(const StepCdf<Scalar>& F, Scalar c) {
  StepCdf<Scalar> G = F;
  G.jumps /= c;
  return G;
}

template <typename Scalar, typename Fn>
Scalar expectation(const StepCdf<Scalar>& F, Fn&& f) {
  Scalar s = 0;
  for (Eigen::Index j = 0; j < F.size(); ++j) s += F.weight(j) * f(F.jumps(j));
  return s;
}

}  // namespace cvpi

#endif  // CVPI_ECDF_HPP_INCLUDED
