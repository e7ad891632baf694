#include "cvpi/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvpi/gauge.hpp"
#include "cvpi/parallel.hpp"

namespace cvpi {

namespace {

constexpr Eigen::Index kChunk = 2048;

// Number c of order statistics such that Q_alpha of a uniform n-point ecdf is
// the c-th smallest atom; 0 and n + 1 stand for -inf and +inf. Mirrors
// quantile_index on cum entries count / n.
Eigen::Index count_index(double alpha, Eigen::Index n) {
  if (!(alpha > 0)) return 0;
  if (alpha > 1) return n + 1;
  const double target = alpha - detail::kQuantileGuard;
  const double nd = static_cast<double>(n);
  Eigen::Index c = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::ceil(target * nd)), 1, n);
  while (c > 1 && static_cast<double>(c - 1) / nd >= target) --c;
  while (c < n && static_cast<double>(c) / nd < target) ++c;
  return c;
}

// c-th smallest entry (1-based) with the infinite conventions
double order_stat(std::vector<double>& v, Eigen::Index c) {
  if (c <= 0) return neg_inf<double>();
  if (c > static_cast<Eigen::Index>(v.size())) return pos_inf<double>();
  auto it = v.begin() + (c - 1);
  std::nth_element(v.begin(), it, v.end());
  return *it;
}

Eigen::MatrixXd draw_features(const DgpSpec& dgp, Eigen::Index design_n, Eigen::Index rows, Rng& rng,
                              Eigen::VectorXd& y) {
  Eigen::MatrixXd x(rows, dgp.p);
  y.resize(rows);
  Eigen::VectorXd xi(dgp.p);
  for (Eigen::Index i = 0; i < rows; ++i) {
    draw_into(dgp, design_n, rng, y(i), xi);
    x.row(i) = xi.transpose();
  }
  return x;
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

QuantileSummary summarize(const std::vector<double>& values) {
  QuantileSummary s;
  if (values.empty()) return s;
  s.mean = pairwise_mean(values);
  const StepCdfd F = uniform_ecdf(Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
  s.q05 = quantile(F, 0.05);
  s.q50 = quantile(F, 0.5);
  s.q95 = quantile(F, 0.95);
  return s;
}

// --- interval engine -------------------------------------------------------

IntervalEngine::IntervalEngine(const PredictorSpec& spec, const TrainingSetd& train, const FoldPartition& partition,
                               bool want_fitted)
    : fits_(fit_folds(spec, train, partition, want_fitted)) {
  residual_cdf_ = fold_values_ecdf(partition, fits_.residuals);
  abs_residual_cdf_ = fold_values_ecdf(partition, fits_.residuals.cwiseAbs());
  uniform_weights_ = partition.equal_sizes();
  if (fits_.full.is_linear()) fold_coef_ = fits_.fold_coefficients();
}

void IntervalEngine::predict(const Eigen::Ref<const Eigen::MatrixXd>& xs, Eigen::VectorXd& full,
                             Eigen::MatrixXd& folds) const {
  if (fits_.full.is_linear()) {
    full = fits_.full.predict_rows(xs);
    if (xs.cols() == 0)
      folds.setZero(xs.rows(), k());
    else
      folds.noalias() = xs * fold_coef_;
    return;
  }
  full = fits_.full.predict_rows(xs);
  folds.resize(xs.rows(), k());
  for (Eigen::Index j = 0; j < k(); ++j) folds.col(j) = fits_.without_fold[static_cast<std::size_t>(j)].predict_rows(xs);
}

PredIntervald IntervalEngine::interval_at(IntervalMethod method, double full_pred,
                                          const Eigen::Ref<const Eigen::RowVectorXd>& fold_preds, double alpha1,
                                          double alpha2, double delta) const {
  const auto& part = fits_.partition;
  const Eigen::Index n = part.n();
  if (method.base == BaseMethod::cv) {
    if (!method.symmetrized)
      return {(full_pred + quantile(residual_cdf_, alpha1)) - delta, (full_pred + quantile(residual_cdf_, alpha2)) + delta};
    const double q = quantile(abs_residual_cdf_, alpha2 - alpha1);
    return {full_pred - q - delta, full_pred + q + delta};
  }
  if (method.base == BaseMethod::cv_plus && uniform_weights_) {
    std::vector<double> atoms(static_cast<std::size_t>(n));
    if (!method.symmetrized) {
      for (Eigen::Index i = 0; i < n; ++i)
        atoms[static_cast<std::size_t>(i)] = fold_preds(part.fold_of[static_cast<std::size_t>(i)]) + fits_.residuals(i);
      const Eigen::Index c1 = count_index(alpha1, n), c2 = count_index(alpha2, n);
      const double hi = order_stat(atoms, c2);
      const double lo = order_stat(atoms, c1);
      return {lo - delta, hi + delta};
    }
    const Eigen::Index c = count_index(alpha2 - alpha1, n);
    for (Eigen::Index i = 0; i < n; ++i)
      atoms[static_cast<std::size_t>(i)] = fold_preds(part.fold_of[static_cast<std::size_t>(i)]) + std::abs(fits_.residuals(i));
    const double hi = order_stat(atoms, c);
    for (Eigen::Index i = 0; i < n; ++i)
      atoms[static_cast<std::size_t>(i)] = std::abs(fits_.residuals(i)) - fold_preds(part.fold_of[static_cast<std::size_t>(i)]);
    const double lo = -order_stat(atoms, c);
    return {lo - delta, hi + delta};
  }
  // everything else goes through the reference construction
  ResidualBundle b;
  b.partition = part;
  b.loo_residuals = fits_.residuals;
  b.responses = fits_.responses;
  b.fitted_values = fits_.fitted_values;
  b.full_prediction = full_pred;
  b.fold_predictions = fold_preds.transpose();
  return interval(method, b, alpha1, alpha2, delta);
}

RngSeed test_stream_seed(const Rng& rep_stream) { return RngSeed{rep_stream.split(0x7e57).key()}; }

double conditional_coverage(const PredictorSpec& spec, const DgpSpec& dgp, const TrainingSetd& train,
                            IntervalMethod method, double alpha1, double alpha2, double delta, Eigen::Index mc_test,
                            RngSeed seed, const PartitionRule& rule) {
  if (mc_test < 1) throw InvalidParameter("mc_test must be at least 1");
  const IntervalEngine engine(spec, train, rule.make(train.n()), method.base == BaseMethod::fitted_values);
  Rng rng(seed);
  Eigen::Index covered = 0;
  Eigen::VectorXd y, full;
  Eigen::MatrixXd folds;
  for (Eigen::Index start = 0; start < mc_test; start += kChunk) {
    const Eigen::Index rows = std::min(kChunk, mc_test - start);
    const Eigen::MatrixXd xs = draw_features(dgp, train.n(), rows, rng, y);
    engine.predict(xs, full, folds);
    for (Eigen::Index r = 0; r < rows; ++r)
      if (engine.interval_at(method, full(r), folds.row(r), alpha1, alpha2, delta).contains(y(r))) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(mc_test);
}

std::string CoverageReport::to_csv() const {
  std::string out = "rep,conditional_coverage\n";
  for (std::size_t r = 0; r < conditional_cov.size(); ++r)
    out += std::to_string(r) + "," + format_double(conditional_cov[r]) + "\n";
  return out;
}

CoverageReport coverage_distribution(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n,
                                     IntervalMethod method, double alpha1, double alpha2, double delta,
                                     Eigen::Index train_reps, Eigen::Index mc_test, RngSeed seed,
                                     const PartitionRule& rule) {
  if (train_reps < 1) throw InvalidParameter("train_reps must be at least 1");
  CoverageReport rep;
  rep.nominal = alpha2 - alpha1;
  rep.reps = train_reps;
  rep.mc_test_points = mc_test;
  rep.conditional_cov.resize(static_cast<std::size_t>(train_reps));
  const Rng root(seed);
  parallel_for(rep.conditional_cov.size(), [&](std::size_t r) {
    Rng rng = root.split(r);
    const TrainingSetd train = draw_training_set(dgp, n, n, rng);
    rep.conditional_cov[r] =
        conditional_coverage(spec, dgp, train, method, alpha1, alpha2, delta, mc_test, test_stream_seed(rng), rule);
  });
  rep.summary = summarize(rep.conditional_cov);
  return rep;
}

// --- combined coverage / equivalence study ---------------------------------

namespace {

struct StudyRepOut {
  CoverageStudyRep rep;
  std::vector<double> exceed_by_fold;
};

StudyRepOut study_one_rep(const CoverageStudyConfig& cfg, const Rng& rep_rng_in) {
  Rng rep_rng = rep_rng_in;
  const Eigen::Index n = cfg.n;
  const TrainingSetd train = draw_training_set(cfg.dgp, n, n, rep_rng);
  const FoldPartition partition = cfg.rule.make(n);
  const IntervalEngine engine(cfg.spec, train, partition);
  const FoldFits& fits = engine.fits();
  const Eigen::Index k = partition.k();
  const bool uniform = partition.equal_sizes();

  const StepCdfd R = fold_values_ecdf(partition, fits.residuals);
  StudyRepOut out;
  CoverageStudyRep& res = out.rep;
  res.iqr = quantile(R, 0.75) - quantile(R, 0.25);
  const double d_shrink = cfg.shrink_factor * res.iqr;
  const double d_equiv = cfg.equiv_factor * res.iqr;
  const double kappa = cfg.kappa;
  const double cv_dist = kappa + d_equiv;

  std::vector<double> us(fits.residuals.data(), fits.residuals.data() + n);
  std::sort(us.begin(), us.end());

  // rank histograms for the equivalence event, slots 0..n
  std::vector<Eigen::Index> up_cv(static_cast<std::size_t>(n + 1), 0), lo_cv(up_cv), up_p(up_cv), lo_p(up_cv);
  std::vector<Eigen::Index> exceed(static_cast<std::size_t>(k), 0);
  Eigen::Index c_cv = 0, c_shrunk = 0, c_infl = 0, c_plus = 0;

  const IntervalMethod J = IntervalMethod::jackknife(), JP = IntervalMethod::jackknife_plus();
  Rng test_rng(test_stream_seed(rep_rng));
  Eigen::VectorXd y, full;
  Eigen::MatrixXd folds;
  std::vector<double> plus(static_cast<std::size_t>(n));
  for (Eigen::Index start = 0; start < cfg.mc_test; start += kChunk) {
    const Eigen::Index rows = std::min(kChunk, cfg.mc_test - start);
    const Eigen::MatrixXd xs = draw_features(cfg.dgp, n, rows, test_rng, y);
    engine.predict(xs, full, folds);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double yv = y(r), yh = full(r);
      const auto fp = folds.row(r);
      c_cv += engine.interval_at(J, yh, fp, cfg.alpha1, cfg.alpha2, 0.0).contains(yv);
      c_shrunk += engine.interval_at(J, yh, fp, cfg.alpha1, cfg.alpha2, -d_shrink).contains(yv);
      c_infl += engine.interval_at(J, yh, fp, cfg.alpha1, cfg.alpha2, d_shrink).contains(yv);
      c_plus += engine.interval_at(JP, yh, fp, cfg.alpha1, cfg.alpha2, 0.0).contains(yv);
      for (Eigen::Index j = 0; j < k; ++j) exceed[static_cast<std::size_t>(j)] += std::abs(yh - fp(j)) > d_equiv;
      if (!uniform) continue;
      // #{atom + dist < y} and #{atom - dist <= y}; the cv atoms are sorted
      auto count_sorted = [&](auto pred) {
        Eigen::Index lo = 0, hi = n;
        while (lo < hi) {
          const Eigen::Index mid = (lo + hi) / 2;
          if (pred(static_cast<std::size_t>(mid))) lo = mid + 1; else hi = mid;
        }
        return lo;
      };
      ++up_cv[static_cast<std::size_t>(count_sorted([&](std::size_t i) { return (yh + us[i]) + cv_dist < yv; }))];
      ++lo_cv[static_cast<std::size_t>(count_sorted([&](std::size_t i) { return (yh + us[i]) - cv_dist <= yv; }))];
      Eigen::Index ru = 0, rl = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double v = fp(partition.fold_of[static_cast<std::size_t>(i)]) + fits.residuals(i);
        ru += (v + kappa) < yv;
        rl += (v - kappa) <= yv;
      }
      ++up_p[static_cast<std::size_t>(ru)];
      ++lo_p[static_cast<std::size_t>(rl)];
    }
  }
  const double m = static_cast<double>(cfg.mc_test);
  res.cov_cv = static_cast<double>(c_cv) / m;
  res.cov_cv_shrunk = static_cast<double>(c_shrunk) / m;
  res.cov_cv_inflated = static_cast<double>(c_infl) / m;
  res.cov_cv_plus = static_cast<double>(c_plus) / m;
  out.exceed_by_fold.resize(static_cast<std::size_t>(k));
  double ex_sum = 0;
  for (Eigen::Index j = 0; j < k; ++j) {
    out.exceed_by_fold[static_cast<std::size_t>(j)] = static_cast<double>(exceed[static_cast<std::size_t>(j)]) / m;
    ex_sum += out.exceed_by_fold[static_cast<std::size_t>(j)];
  }
  res.exceed_mean = ex_sum / static_cast<double>(k);

  if (!uniform) {
    res.equiv_min = nan();
    return out;
  }
  // H[a] = P(rank < a), a = 0..n+1
  auto cumulative = [&](const std::vector<Eigen::Index>& hist) {
    std::vector<double> H(static_cast<std::size_t>(n + 2), 0.0);
    Eigen::Index run = 0;
    for (Eigen::Index a = 1; a <= n + 1; ++a) {
      run += hist[static_cast<std::size_t>(a - 1)];
      H[static_cast<std::size_t>(a)] = static_cast<double>(run) / m;
    }
    return H;
  };
  const auto Hup_cv = cumulative(up_cv), Hlo_cv = cumulative(lo_cv), Hup_p = cumulative(up_p), Hlo_p = cumulative(lo_p);

  // alpha1 in cell i (i/n its right end) and alpha2 in cell j (just above (j-1)/n)
  // give the smallest cv interval for that pair of plus-cells.
  double ne = static_cast<double>(n) * cfg.eps;
  if (std::abs(ne - std::round(ne)) < 1e-9) ne = std::round(ne);
  auto lower_cv_index = [&](Eigen::Index i) -> Eigen::Index {
    const double c = std::ceil(static_cast<double>(i) - ne);
    return c <= 0 ? 0 : static_cast<Eigen::Index>(c);
  };
  auto upper_cv_index = [&](Eigen::Index j) -> Eigen::Index {
    if (j > n) return n + 1;
    const double c = std::floor(static_cast<double>(j - 1) + ne) + 1;
    return c > static_cast<double>(n) ? n + 1 : static_cast<Eigen::Index>(c);
  };
  double best = std::numeric_limits<double>::infinity();
  double max_b = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j <= n + 1; ++j) {
    if (j <= n) {
      const Eigen::Index i = j;  // extend the prefix max of B to i = j
      const double B = Hlo_cv[static_cast<std::size_t>(lower_cv_index(i))] - Hlo_p[static_cast<std::size_t>(i)];
      max_b = std::max(max_b, B);
    }
    if (j == 0) continue;
    const double A = Hup_cv[static_cast<std::size_t>(upper_cv_index(j))] - Hup_p[static_cast<std::size_t>(j)];
    best = std::min(best, A - max_b);
  }
  res.equiv_min = best;
  return out;
}

}  // namespace

CoverageStudyReport run_coverage_study(const CoverageStudyConfig& cfg) {
  if (cfg.train_reps < 1 || cfg.mc_test < 1) throw InvalidParameter("reps and mc_test must be positive");
  if (!(cfg.eps > 0)) throw InvalidTolerance("eps must be positive");
  const auto R = static_cast<std::size_t>(cfg.train_reps);
  std::vector<StudyRepOut> outs(R);
  const Rng root(cfg.seed);
  parallel_for(R, [&](std::size_t r) { outs[r] = study_one_rep(cfg, root.split(r)); });

  CoverageStudyReport rep;
  rep.config = cfg;
  rep.uniform_weights = cfg.rule.make(cfg.n).equal_sizes();
  const std::size_t k = outs.front().exceed_by_fold.size();
  rep.exceed_by_fold.assign(k, 0.0);
  std::vector<double> events(R), col(R);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t r = 0; r < R; ++r) col[r] = outs[r].exceed_by_fold[j];
    rep.exceed_by_fold[j] = pairwise_mean(col);
  }
  for (std::size_t r = 0; r < R; ++r) {
    rep.reps.push_back(outs[r].rep);
    events[r] = outs[r].rep.equiv_min <= -cfg.eps ? 1.0 : 0.0;
  }
  if (rep.uniform_weights) {
    rep.equiv_event_freq = pairwise_mean(events);
    rep.equiv_event_se = std::sqrt(rep.equiv_event_freq * (1 - rep.equiv_event_freq) / static_cast<double>(R));
  } else {
    rep.equiv_event_freq = rep.equiv_event_se = nan();
  }
  rep.equiv_bound = equivalence_bound(static_cast<Eigen::Index>(k), cfg.eps, 0.0, rep.exceed_by_fold);
  return rep;
}

std::string CoverageStudyReport::to_csv() const {
  std::string out = "rep,iqr,cov_cv,cov_cv_shrunk,cov_cv_inflated,cov_cv_plus,equiv_min,exceed_mean\n";
  for (std::size_t r = 0; r < reps.size(); ++r) {
    const auto& x = reps[r];
    out += std::to_string(r) + "," + format_double(x.iqr) + "," + format_double(x.cov_cv) + "," +
           format_double(x.cov_cv_shrunk) + "," + format_double(x.cov_cv_inflated) + "," +
           format_double(x.cov_cv_plus) + "," + format_double(x.equiv_min) + "," + format_double(x.exceed_mean) + "\n";
  }
  return out;
}

GapReport jk_vs_jkplus_gap(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n, double alpha1, double alpha2,
                           Eigen::Index train_reps, Eigen::Index mc_test, RngSeed seed, double eps,
                           double equiv_factor) {
  CoverageStudyConfig cfg;
  cfg.spec = spec;
  cfg.dgp = dgp;
  cfg.n = n;
  cfg.alpha1 = alpha1;
  cfg.alpha2 = alpha2;
  cfg.train_reps = train_reps;
  cfg.mc_test = mc_test;
  cfg.eps = eps;
  cfg.equiv_factor = equiv_factor;
  cfg.seed = seed;
  const CoverageStudyReport study = run_coverage_study(cfg);
  GapReport g;
  std::vector<double> gaps;
  for (const auto& r : study.reps) {
    g.cov_j.push_back(r.cov_cv);
    g.cov_jplus.push_back(r.cov_cv_plus);
    gaps.push_back(std::abs(r.cov_cv - r.cov_cv_plus));
  }
  g.sup_gap = *std::max_element(gaps.begin(), gaps.end());
  g.q95_gap = summarize(gaps).q95;
  g.equiv_event_freq = study.equiv_event_freq;
  g.equiv_event_se = study.equiv_event_se;
  g.equiv_bound = study.equiv_bound;
  return g;
}

// --- lengths, gauge trend, probes ----------------------------------------

std::string LengthReport::to_csv() const {
  std::string out = "rep,length_j,length_jplus\n";
  for (std::size_t r = 0; r < len_j.size(); ++r)
    out += std::to_string(r) + "," + format_double(len_j[r]) + "," + format_double(len_jplus[r]) + "\n";
  return out;
}

LengthReport length_compare(const PredictorSpec& spec, const DgpSpec& dgp, Eigen::Index n, double alpha1,
                            double alpha2, Eigen::Index train_reps, RngSeed seed) {
  if (train_reps < 1) throw InvalidParameter("train_reps must be at least 1");
  const auto R = static_cast<std::size_t>(train_reps);
  LengthReport rep;
  rep.len_j.resize(R);
  rep.len_jplus.resize(R);
  const Rng root(seed);
  const FoldPartition loo = FoldPartition::leave_one_out(n);
  parallel_for(R, [&](std::size_t r) {
    Rng rng = root.split(r);
    const TrainingSetd train = draw_training_set(dgp, n, n, rng);
    const Sampled test = draw_sample(dgp, n, rng);
    const ResidualBundle b = leave_fold_out_residuals(spec, train, loo, test.x);
    rep.len_j[r] = interval(IntervalMethod::jackknife(), b, alpha1, alpha2, 0.0).length();
    rep.len_jplus[r] = interval(IntervalMethod::jackknife_plus(), b, alpha1, alpha2, 0.0).length();
  });
  double le = 0, ge = 0, lt = 0, gt = 0;
  for (std::size_t r = 0; r < R; ++r) {
    le += rep.len_jplus[r] <= rep.len_j[r];
    ge += rep.len_j[r] <= rep.len_jplus[r];
    lt += rep.len_jplus[r] < rep.len_j[r];
    gt += rep.len_j[r] < rep.len_jplus[r];
  }
  const double Rd = static_cast<double>(R);
  rep.frac_jplus_le_j = le / Rd;
  rep.frac_j_le_jplus = ge / Rd;
  rep.frac_jplus_lt_j = lt / Rd;
  rep.frac_j_lt_jplus = gt / Rd;
  return rep;
}

std::string grid_to_csv(const std::vector<GridPoint>& grid, const std::string& column) {
  std::string out = "n," + column + "," + column + "_se\n";
  for (const auto& g : grid)
    out += std::to_string(g.n) + "," + format_double(g.value.value) + "," + format_double(g.value.std_err) + "\n";
  return out;
}

std::vector<GridPoint> gauge_convergence(const PredictorSpec& spec, const DgpSpec& dgp,
                                         const std::vector<Eigen::Index>& n_grid, double delta,
                                         Eigen::Index train_reps, Eigen::Index mc_oracle, RngSeed seed) {
  if (train_reps < 1 || mc_oracle < 1) throw InvalidParameter("reps and mc_oracle must be positive");
  const Rng root(seed);
  std::vector<GridPoint> out;
  for (Eigen::Index n : n_grid) {
    const auto R = static_cast<std::size_t>(train_reps);
    std::vector<double> vals(R);
    const Rng level = root.split(static_cast<std::uint64_t>(n));
    const FoldPartition loo = FoldPartition::leave_one_out(n);
    parallel_for(R, [&](std::size_t r) {
      Rng rng = level.split(r);
      const TrainingSetd train = draw_training_set(dgp, n, n, rng);
      const FoldFits fits = fit_folds(spec, train, loo);
      Eigen::VectorXd y;
      const Eigen::MatrixXd xs = draw_features(dgp, n, mc_oracle, rng, y);
      const Eigen::VectorXd err = y - fits.full.predict_rows(xs);
      vals[r] = levy_gauge(uniform_ecdf(fits.residuals), uniform_ecdf(err), delta).value;
    });
    out.push_back({n, mc_mean(vals)});
  }
  return out;
}

std::vector<GridPoint> infinite_length_probe(const PredictorSpec& spec, const DgpSpec& dgp,
                                             const std::vector<Eigen::Index>& n_grid, double nominal,
                                             Eigen::Index train_reps, RngSeed seed) {
  if (train_reps < 1) throw InvalidParameter("train_reps must be at least 1");
  const Rng root(seed);
  const IntervalMethod sym{BaseMethod::cv, true};
  std::vector<GridPoint> out;
  for (Eigen::Index n : n_grid) {
    const auto R = static_cast<std::size_t>(train_reps);
    std::vector<double> vals(R);
    const Rng level = root.split(static_cast<std::uint64_t>(n));
    const FoldPartition loo = FoldPartition::leave_one_out(n);
    parallel_for(R, [&](std::size_t r) {
      Rng rng = level.split(r);
      const TrainingSetd train = draw_training_set(dgp, n, n, rng);
      const Sampled test = draw_sample(dgp, n, rng);
      const ResidualBundle b = leave_fold_out_residuals(spec, train, loo, test.x);
      vals[r] = interval(sym, b, 0.0, nominal, 0.0).length();
    });
    out.push_back({n, mc_mean(vals)});
  }
  return out;
}

bool isotonic_within(const std::vector<McEstimate>& values, bool increasing, double sigmas) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double slack = sigmas * std::hypot(values[i].std_err, values[i - 1].std_err);
    const double step = values[i].value - values[i - 1].value;
    if (increasing ? step < -slack : step > slack) return false;
  }
  return true;
}

}  // namespace cvpi
