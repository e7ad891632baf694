#ifndef CVPI_GAUGE_HPP_INCLUDED
#define CVPI_GAUGE_HPP_INCLUDED

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <utility>

#include "cvpi/ecdf.hpp"
#include "cvpi/errors.hpp"

namespace cvpi {

enum class GaugeSide { F_over_G, G_over_F };

template <typename Scalar>
struct GaugeResult {
  Scalar value = 0;
  Scalar witness = 0;
  GaugeSide side = GaugeSide::F_over_G;
};

namespace detail {

// Sign of (a + d) - b in exact arithmetic. fl(a + d) != b already decides it;
// on a tie the TwoSum rounding error breaks it.
template <typename Scalar>
int compare_sum(Scalar a, Scalar d, Scalar b) {
  const Scalar s = a + d;
  if (s < b) return -1;
  if (s > b) return 1;
  const Scalar bv = s - a;
  const Scalar e = (a - (s - bv)) + (d - bv);
  return (e > 0) - (e < 0);
}

// sup_t A(t) - B(t + delta). Candidates are the left ends of the constancy
// pieces: jumps a of A and points b - delta for jumps b of B. Both kinds are
// walked in increasing order; every comparison of a + delta against b is exact.
template <typename Scalar>
GaugeResult<Scalar> one_sided(const StepCdf<Scalar>& A, const StepCdf<Scalar>& B, Scalar delta, GaugeSide side) {
  const Eigen::Index na = A.size(), nb = B.size();
  Eigen::Index ia = 0, ib = 0;
  Eigen::Index b_le = 0;  // #{b <= a_ia + delta}
  Eigen::Index a_le = 0;  // #{a : a + delta <= b_ib}
  bool found = false;
  Scalar best = 0, where = 0;
  auto offer = [&](Scalar v, Scalar t) {
    if (v > best) {
      best = v;
      where = t;
      found = true;
    }
  };
  while (ia < na || ib < nb) {
    const bool take_a = ib >= nb || (ia < na && compare_sum(A.jumps(ia), delta, B.jumps(ib)) < 0);
    if (take_a) {
      const Scalar a = A.jumps(ia);
      while (b_le < nb && compare_sum(a, delta, B.jumps(b_le)) >= 0) ++b_le;
      offer(A.cum(ia) - (b_le == 0 ? Scalar(0) : B.cum(b_le - 1)), a);
      ++ia;
    } else {
      const Scalar b = B.jumps(ib);
      while (a_le < na && compare_sum(A.jumps(a_le), delta, b) <= 0) ++a_le;
      offer((a_le == 0 ? Scalar(0) : A.cum(a_le - 1)) - B.cum(ib), b - delta);
      ++ib;
    }
  }
  GaugeResult<Scalar> r;
  r.side = side;
  r.value = best;
  if (found) {
    r.witness = where;
  } else {
    Scalar lo = pos_inf<Scalar>();
    if (na > 0) lo = std::min(lo, A.jumps(0));
    if (nb > 0) lo = std::min(lo, B.jumps(0) - delta);
    r.witness = lo - Scalar(1);
  }
  return r;
}

}  // namespace detail

// L_delta(F, G) = sup_t max(F(t) - G(t + delta), G(t) - F(t + delta)), exact
// for step cdfs.
template <typename Scalar>
GaugeResult<Scalar> levy_gauge(const StepCdf<Scalar>& F, const StepCdf<Scalar>& G, Scalar delta) {
  if (!(delta >= 0)) throw InvalidParameter("gauge tolerance must be nonnegative");
  auto fg = detail::one_sided(F, G, delta, GaugeSide::F_over_G);
  auto gf = detail::one_sided(G, F, delta, GaugeSide::G_over_F);
  return gf.value > fg.value ? gf : fg;
}

template <typename Scalar>
Scalar kolmogorov(const StepCdf<Scalar>& F, const StepCdf<Scalar>& G) {
  return levy_gauge(F, G, Scalar(0)).value;
}

// [Q_{alpha-L}(F) - delta, Q_{alpha+L}(F) + delta] with L = L_delta(F, G);
// Q_alpha(G) lies inside.
template <typename Scalar>
std::pair<Scalar, Scalar> quantile_sandwich(const StepCdf<Scalar>& F, const StepCdf<Scalar>& G, Scalar delta,
                                            Scalar alpha) {
  const Scalar L = levy_gauge(F, G, delta).value;
  return {quantile(F, alpha - L) - delta, quantile(F, alpha + L) + delta};
}

template <typename DA, typename DB, typename DW>
typename DA::Scalar matched_pairs_bound(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                                        const Eigen::MatrixBase<DW>& weights, typename DA::Scalar delta) {
  using Scalar = typename DA::Scalar;
  if (a.size() != b.size() || a.size() != weights.size()) throw LengthMismatch("matched pairs need equal lengths");
  Scalar s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (std::abs(a.coeff(i) - b.coeff(i)) > delta) s += weights.coeff(i);
  return s;
}

// Identity-coupling first-moment bound; needs delta > 0.
template <typename DA, typename DB, typename DW>
typename DA::Scalar wasserstein_bound(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                                      const Eigen::MatrixBase<DW>& weights, typename DA::Scalar delta) {
  using Scalar = typename DA::Scalar;
  if (a.size() != b.size() || a.size() != weights.size()) throw LengthMismatch("matched pairs need equal lengths");
  if (!(delta > 0)) throw InvalidTolerance("wasserstein bound needs delta > 0");
  Scalar s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += weights.coeff(i) * std::abs(a.coeff(i) - b.coeff(i));
  return s / delta;
}

// Integral of (F - G)^2 over [lo, hi], exact piece by piece.
template <typename Scalar>
Scalar squared_difference_integral(const StepCdf<Scalar>& F, const StepCdf<Scalar>& G, Scalar lo, Scalar hi) {
  if (!(hi > lo)) return 0;
  std::vector<Scalar> cuts{lo, hi};
  for (Eigen::Index j = 0; j < F.size(); ++j)
    if (F.jumps(j) > lo && F.jumps(j) < hi) cuts.push_back(F.jumps(j));
  for (Eigen::Index j = 0; j < G.size(); ++j)
    if (G.jumps(j) > lo && G.jumps(j) < hi) cuts.push_back(G.jumps(j));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  Scalar total = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Scalar d = eval(F, cuts[k]) - eval(G, cuts[k]);
    total += d * d * (cuts[k + 1] - cuts[k]);
  }
  return total;
}

template <typename Scalar>
Scalar l2_bound(const StepCdf<Scalar>& F, const StepCdf<Scalar>& G, Scalar delta, Scalar mu, Scalar K) {
  if (!(delta > 0)) throw InvalidTolerance("l2 bound needs delta > 0");
  if (!(K >= 0)) throw InvalidParameter("K must be nonnegative");
  const Scalar tail = Scalar(1) - eval(F, mu + K) + eval(F, mu - K);
  const Scalar integral = squared_difference_integral(F, G, mu - K - delta, mu + K + 2 * delta);
  return tail + std::sqrt(integral / delta);
}

// Global form: L_delta <= sqrt((1/delta) * integral of (F - G)^2).
template <typename Scalar>
Scalar l2_bound_global(const StepCdf<Scalar>& F, const StepCdf<Scalar>& G, Scalar delta) {
  if (!(delta > 0)) throw InvalidTolerance("l2 bound needs delta > 0");
  const Scalar lo = std::min(F.jumps(0), G.jumps(0));
  const Scalar hi = std::max(F.jumps(F.size() - 1), G.jumps(G.size() - 1));
  return std::sqrt(squared_difference_integral(F, G, lo, hi) / delta);
}

}  // namespace cvpi

#endif  // CVPI_GAUGE_HPP_INCLUDED
