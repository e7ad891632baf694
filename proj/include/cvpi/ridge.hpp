#ifndef CVPI_RIDGE_HPP_INCLUDED
#define CVPI_RIDGE_HPP_INCLUDED

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <vector>

#include "cvpi/data.hpp"
#include "cvpi/errors.hpp"

namespace cvpi {

constexpr double kRelativePivotFloor = 1e-12;

// Row order sorted lexicographically by (x, y). Sums accumulated in this order
// make every fit exactly invariant under row permutations.
template <typename Scalar>
std::vector<Eigen::Index> canonical_order(const TrainingSet<Scalar>& data) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(data.n()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index j = 0; j < data.p(); ++j) {
      if (data.x(a, j) < data.x(b, j)) return true;
      if (data.x(b, j) < data.x(a, j)) return false;
    }
    return data.y(a) < data.y(b);
  });
  return idx;
}

template <typename Scalar>
struct GramSystem {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> xtx;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> xty;
  Eigen::Index rows = 0;
};

// X'X and X'Y accumulated row by row in the given order.
template <typename Scalar>
GramSystem<Scalar> gram_system(const TrainingSet<Scalar>& data, const std::vector<Eigen::Index>& order) {
  const Eigen::Index p = data.p();
  GramSystem<Scalar> g;
  g.xtx.setZero(p, p);
  g.xty.setZero(p);
  g.rows = static_cast<Eigen::Index>(order.size());
  for (Eigen::Index i : order) {
    const auto xi = data.x.row(i).transpose();
    g.xtx.noalias() += xi * xi.transpose();
    g.xty.noalias() += data.y(i) * xi;
  }
  return g;
}

// Solves (X'X + shift I) beta = X'Y with a pivoted LDL' factorization;
// throws DegenerateFit when the smallest pivot is below 1e-12 of the largest.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solve_ridge_system(const GramSystem<Scalar>& g, Scalar shift) {
  const Eigen::Index p = g.xtx.rows();
  if (p == 0) return {};
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a = g.xtx;
  a.diagonal().array() += shift;
  Eigen::LDLT<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> ldlt(a);
  const auto d = ldlt.vectorD().cwiseAbs();
  const Scalar dmax = d.maxCoeff();
  if (ldlt.info() != Eigen::Success || !(dmax > 0) || d.minCoeff() < Scalar(kRelativePivotFloor) * dmax)
    throw DegenerateFit("ridge system is numerically singular");
  return ldlt.solve(g.xty);
}

// beta = (X'X + lambda m I)^{-1} X'Y, m = number of rows.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> ridge_coefficients(const TrainingSet<Scalar>& data, Scalar lambda) {
  if (!(lambda >= 0)) throw InvalidParameter("ridge lambda must be nonnegative");
  if (data.n() < 1) throw TooFewRows("ridge needs at least one row");
  const auto g = gram_system(data, canonical_order(data));
  return solve_ridge_system(g, lambda * static_cast<Scalar>(data.n()));
}

}  // namespace cvpi

#endif  // CVPI_RIDGE_HPP_INCLUDED
