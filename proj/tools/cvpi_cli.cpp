// cvpi: command-line front end. JSON on stdout (or --out), tidy CSV via --csv,
// errors as one JSON line with exit code 2 (usage), 3 (data), 4 (numeric).

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cvpi/functions.hpp"
#include "cvpi/gauge.hpp"
#include "cvpi/intervals.hpp"
#include "cvpi/json_io.hpp"
#include "cvpi/parallel.hpp"
#include "cvpi/risk.hpp"
#include "cvpi/simlab.hpp"
#include "cvpi/stability.hpp"

using namespace cvpi;

namespace {

struct Common {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
  std::string csv;
  std::string config;  // consumed before parsing, see merge_config
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--threads", c.threads, "worker cap, 0 = all cores");
  app->add_option("--out", c.out, "write the JSON report here instead of stdout");
  app->add_option("--csv", c.csv, "write the tidy CSV here");
  app->add_option("--config", c.config, "JSON file of flag values; explicit flags win");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw MalformedInput("cannot write " + path);
  f << text;
}

void emit(const Common& c, Json report, const std::string& csv = {}) {
  Json out;
  out["schema"] = "1";
  for (auto& [k, v] : report.items()) out[k] = v;
  if (c.out.empty())
    std::cout << out.dump() << "\n";
  else
    write_text(c.out, out.dump() + "\n");
  if (!c.csv.empty()) write_text(c.csv, csv);
}

// A path to a JSON file, or the JSON text itself.
Json json_arg(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    try {
      return Json::parse(arg);
    } catch (const nlohmann::json::parse_error& e) {
      throw MalformedInput(e.what());
    }
  }
  return read_json_file(arg);
}

PredictorSpec predictor_arg(const std::string& a) { return predictor_from_json(json_arg(a)); }
DgpSpec dgp_arg(const std::string& a) { return dgp_from_json(json_arg(a)); }

PartitionRule rule_for(Eigen::Index k) {
  PartitionRule r;
  r.leave_one_out = k == 0;
  r.k = k;
  return r;
}

IntervalMethod method_arg(const std::string& name, bool symmetrized) { return {parse_base_method(name), symmetrized}; }

Json mc_json(const McEstimate& m) { return Json{{"value", json_number(m.value)}, {"std_err", json_number(m.std_err)}}; }

Json summary_json(const QuantileSummary& s) {
  return Json{{"mean", json_number(s.mean)}, {"q05", json_number(s.q05)}, {"q50", json_number(s.q50)},
              {"q95", json_number(s.q95)}};
}

Json grid_json(const std::vector<GridPoint>& g) {
  Json a = Json::array();
  for (const auto& p : g) a.push_back(Json{{"n", p.n}, {"value", json_number(p.value.value)}, {"std_err", json_number(p.value.std_err)}});
  return a;
}

Json values_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(json_number(x));
  return a;
}

MonotoneFunction loss_arg(const std::string& name) {
  if (name == "squared_hinge" || name == "squared") return MonotoneFunction::squared_hinge();
  if (name == "hinge" || name == "absolute") return MonotoneFunction::hinge();
  if (name == "zero") return MonotoneFunction::zero();
  throw InvalidParameter("unknown loss '" + name + "'");
}

DataFormat format_for(const std::string& path, const std::string& format) {
  if (format == "csv") return DataFormat::csv;
  if (format == "json") return DataFormat::json;
  if (!format.empty()) throw InvalidParameter("format must be csv or json");
  return path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? DataFormat::json : DataFormat::csv;
}

// Splices the --config file into argv right after the subcommand words, skipping
// keys the command line already sets. Nested objects are ignored.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  const Json cfg = read_json_file(path);
  if (!cfg.is_object()) throw InvalidParameter("config must be a JSON object");
  std::set<std::string> given;
  for (const auto& a : args)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));
  std::size_t at = 1;
  while (at < args.size() && args[at].rfind("-", 0) != 0) ++at;
  std::vector<std::string> extra;
  for (const auto& [key, v] : cfg.items()) {
    std::string flag = "--" + key;
    for (auto& ch : flag)
      if (ch == '_') ch = '-';
    if (given.count(flag) || flag == "--config") continue;
    if (v.is_boolean()) {
      if (v.get<bool>()) extra.push_back(flag);
    } else if (v.is_array()) {
      std::string joined;
      for (const auto& e : v) joined += (joined.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
      extra.push_back(flag + "=" + joined);
    } else if (v.is_string()) {
      extra.push_back(flag + "=" + v.get<std::string>());
    } else if (v.is_object()) {
      extra.push_back(flag + "=" + v.dump());
    } else if (!v.is_null()) {
      extra.push_back(flag + "=" + v.dump());
    }
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(), extra.end());
  return args;
}

void error_line(const std::string& kind, const std::string& message) {
  Json e;
  e["schema"] = "1";
  e["error"] = Json{{"kind", kind}, {"message", message}};
  std::cout << e.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  Common c;
  CLI::App app{"Cross-validation prediction intervals, gauges, risk and stability experiments"};
  app.require_subcommand(1);

  // interval
  std::string data, format, predictor, method = "cv", dgp;
  bool symmetrized = false;
  Eigen::Index k = 0;
  double alpha1 = 0.05, alpha2 = 0.95, delta = 0.0;
  std::vector<double> xnew;
  std::optional<double> shortest;
  auto* iv = app.add_subcommand("interval", "prediction interval at one test point");
  iv->add_option("--data", data)->required();
  iv->add_option("--format", format);
  iv->add_option("--predictor", predictor, "JSON file or inline JSON")->required();
  iv->add_option("--method", method, "cv, cv_plus, fitted_values (or jackknife, jackknife_plus)");
  iv->add_flag("--symmetrized", symmetrized);
  iv->add_option("--k", k, "folds, 0 = leave-one-out");
  iv->add_option("--alpha1", alpha1);
  iv->add_option("--alpha2", alpha2);
  iv->add_option("--delta", delta);
  iv->add_option("--xnew", xnew)->delimiter(',')->required();
  iv->add_option("--shortest", shortest, "nominal level; pick the shortest quantile pair");
  add_common(iv, c);

  // risk
  std::string loss;
  double eps = 0.2;
  bool classification = false;
  auto* rk = app.add_subcommand("risk", "leave-fold-out risk estimates");
  rk->add_option("--data", data)->required();
  rk->add_option("--format", format);
  rk->add_option("--predictor", predictor)->required();
  rk->add_option("--k", k);
  rk->add_option("--loss", loss, "hinge or squared_hinge; adds plug-in bounds");
  rk->add_option("--eps", eps);
  rk->add_flag("--classification", classification, "also report the misclassification rate");
  add_common(rk, c);

  // gauge
  std::string fpath, gpath;
  auto* ga = app.add_subcommand("gauge", "Levy gauge between two step cdfs");
  ga->add_option("--f", fpath)->required();
  ga->add_option("--g", gpath)->required();
  ga->add_option("--delta", delta);
  add_common(ga, c);

  // stability
  Eigen::Index n = 200, m = 1, reps = 200, mc_test = 50000, inner = 20, mc_oracle = 2000;
  std::vector<Eigen::Index> n_grid;
  std::vector<double> eps_grid, probs, stab_trunc, stab_abs;
  bool ratio = false;
  PacInputs pac;
  auto* st = app.add_subcommand("stability", "stability estimates and bounds");
  st->require_subcommand(1);
  auto* prof = st->add_subcommand("profile", "P(|yhat - yhat^{-K}| >= eps) over an eps grid");
  prof->add_option("--predictor", predictor)->required();
  prof->add_option("--dgp", dgp)->required();
  prof->add_option("--n", n);
  prof->add_option("--k", k);
  prof->add_option("--eps-grid", eps_grid)->delimiter(',')->required();
  prof->add_option("--reps", reps);
  add_common(prof, c);
  auto* mst = st->add_subcommand("mstab", "m-stability over an n grid");
  mst->add_option("--predictor", predictor)->required();
  mst->add_option("--dgp", dgp)->required();
  mst->add_option("--n-grid", n_grid)->delimiter(',')->required();
  mst->add_option("--m", m);
  mst->add_option("--reps", reps);
  mst->add_flag("--ratio", ratio, "also report beta_m / (sqrt(m) beta_1)");
  add_common(mst, c);
  auto* pb = st->add_subcommand("pacbound", "coverage PAC lower bounds from supplied estimates");
  pb->add_option("--k", pac.k)->required();
  pb->add_option("--delta", pac.delta)->required();
  pb->add_option("--eps", pac.eps)->required();
  pb->add_option("--mu", pac.mu);
  pb->add_option("--L", pac.L);
  pb->add_option("--pred-err-tail", pac.pred_err_tail);
  pb->add_option("--pred-err-abs", pac.pred_err_abs);
  pb->add_option("--stab-trunc", stab_trunc)->delimiter(',');
  pb->add_option("--stab-abs", stab_abs)->delimiter(',');
  add_common(pb, c);
  auto* eb = st->add_subcommand("eqbound", "bound on the CV / CV+ non-equivalence probability");
  eb->add_option("--k", k)->required();
  eb->add_option("--eps", eps)->required();
  eb->add_option("--delta", delta);
  eb->add_option("--probs", probs)->delimiter(',')->required();
  add_common(eb, c);
  auto* vg = st->add_subcommand("varGap", "Var(n rows) - Var(n - 1 rows) over an n grid");
  vg->add_option("--predictor", predictor)->required();
  vg->add_option("--dgp", dgp)->required();
  vg->add_option("--n-grid", n_grid)->delimiter(',')->required();
  vg->add_option("--reps", reps);
  add_common(vg, c);
  auto* dr = st->add_subcommand("drift", "update drift over an n grid");
  dr->add_option("--predictor", predictor)->required();
  dr->add_option("--dgp", dgp)->required();
  dr->add_option("--n-grid", n_grid)->delimiter(',')->required();
  dr->add_option("--reps", reps);
  dr->add_option("--inner", inner);
  add_common(dr, c);

  // sim
  double shrink = 0.1, equiv = 0.1, kappa = 0.0, nominal = 0.9;
  auto* sim = app.add_subcommand("sim", "Monte-Carlo experiments");
  sim->require_subcommand(1);
  auto add_model = [&](CLI::App* s) {
    s->add_option("--predictor", predictor)->required();
    s->add_option("--dgp", dgp)->required();
    s->add_option("--reps", reps);
  };
  auto* cov = sim->add_subcommand("coverage", "distribution of conditional coverage");
  add_model(cov);
  cov->add_option("--n", n);
  cov->add_option("--k", k);
  cov->add_option("--method", method);
  cov->add_flag("--symmetrized", symmetrized);
  cov->add_option("--alpha1", alpha1);
  cov->add_option("--alpha2", alpha2);
  cov->add_option("--delta", delta);
  cov->add_option("--mc-test", mc_test);
  add_common(cov, c);
  auto* eq = sim->add_subcommand("equiv", "coverage of J, shrunk/inflated J and J+, plus the equivalence event");
  add_model(eq);
  eq->add_option("--n", n);
  eq->add_option("--k", k);
  eq->add_option("--alpha1", alpha1);
  eq->add_option("--alpha2", alpha2);
  eq->add_option("--mc-test", mc_test);
  eq->add_option("--shrink", shrink, "distortion as a multiple of the residual IQR");
  eq->add_option("--equiv", equiv, "equivalence distortion as a multiple of the residual IQR");
  eq->add_option("--eps", eps);
  eq->add_option("--kappa", kappa);
  add_common(eq, c);
  auto* len = sim->add_subcommand("length", "Jackknife vs Jackknife+ lengths");
  add_model(len);
  len->add_option("--n", n);
  len->add_option("--alpha1", alpha1);
  len->add_option("--alpha2", alpha2);
  add_common(len, c);
  auto* sg = sim->add_subcommand("gauge", "gauge between residual ecdf and error distribution over n");
  add_model(sg);
  sg->add_option("--n-grid", n_grid)->delimiter(',')->required();
  sg->add_option("--delta", delta);
  sg->add_option("--mc-oracle", mc_oracle);
  add_common(sg, c);
  auto* pl = sim->add_subcommand("problen", "mean symmetrized Jackknife length over n");
  add_model(pl);
  pl->add_option("--n-grid", n_grid)->delimiter(',')->required();
  pl->add_option("--nominal", nominal);
  add_common(pl, c);

  // dgp
  auto* dg = app.add_subcommand("dgp", "draw a training set as CSV");
  dg->add_option("--dgp", dgp)->required();
  dg->add_option("--n", n);
  add_common(dg, c);

  int code = 0;
  try {
    std::vector<std::string> args(argv, argv + argc);
    args = merge_config(std::move(args));
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(std::move(rev));
    set_thread_count(c.threads);
    const RngSeed seed{c.seed};

    if (*iv) {
      const TrainingSetd train = load_dataset(data, format_for(data, format));
      const PredictorSpec spec = predictor_arg(predictor);
      const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xnew.data(), static_cast<Eigen::Index>(xnew.size()));
      const IntervalMethod im = method_arg(method, symmetrized);
      const ResidualBundle b = leave_fold_out_residuals(spec, train, rule_for(k).make(train.n()), x,
                                                        im.base == BaseMethod::fitted_values);
      double a1 = alpha1, a2 = alpha2;
      PredIntervald I;
      if (shortest) {
        const ShortestInterval s = shortest_interval(im, b, *shortest, delta);
        a1 = s.alpha1;
        a2 = s.alpha2;
        I = s.interval;
      } else {
        I = interval(im, b, a1, a2, delta);
      }
      emit(c, Json{{"lo", json_number(I.lo)}, {"hi", json_number(I.hi)}, {"length", json_number(I.length())},
                   {"alpha1", json_number(a1)}, {"alpha2", json_number(a2)}, {"method", method_name(im)}});
    } else if (*rk) {
      const TrainingSetd train = load_dataset(data, format_for(data, format));
      const PredictorSpec spec = predictor_arg(predictor);
      const FoldFits fits = fit_folds(spec, train, rule_for(k).make(train.n()));
      Json r{{"mse", json_number(mse_estimate(fits.residuals))}};
      if (classification) r["misclassification"] = json_number(misclassification_estimate(fits.residuals));
      if (!loss.empty()) {
        const LossBounds lb = loss_plugin_bounds(fits.residuals, loss_arg(loss), eps);
        r["loss_bounds"] = Json{{"loss", loss}, {"eps", eps}, {"lo", json_number(lb.lo)}, {"hi", json_number(lb.hi)}};
      }
      std::string csv = "i,residual\n";
      for (Eigen::Index i = 0; i < fits.residuals.size(); ++i)
        csv += std::to_string(i) + "," + format_double(fits.residuals(i)) + "\n";
      emit(c, r, csv);
    } else if (*ga) {
      const StepCdfd F = cdf_from_json(json_arg(fpath)), G = cdf_from_json(json_arg(gpath));
      const auto g = levy_gauge(F, G, delta);
      emit(c, Json{{"value", json_number(g.value)}, {"witness_t", json_number(g.witness)},
                   {"side", g.side == GaugeSide::F_over_G ? "F_over_G" : "G_over_F"}, {"delta", delta}});
    } else if (*prof) {
      const auto p = oos_stability_profile(predictor_arg(predictor), dgp_arg(dgp), n, rule_for(k), eps_grid, reps, seed);
      std::string csv = "eps,exceed_prob,exceed_se\n";
      for (std::size_t i = 0; i < p.eps_grid.size(); ++i)
        csv += format_double(p.eps_grid[i]) + "," + format_double(p.exceed_prob[i]) + "," + format_double(p.exceed_se[i]) + "\n";
      emit(c, Json{{"eps_grid", values_json(p.eps_grid)}, {"exceed_prob", values_json(p.exceed_prob)},
                   {"exceed_se", values_json(p.exceed_se)}, {"mean_abs", mc_json({p.mean_abs, p.mean_abs_se})},
                   {"reps", reps}},
           csv);
    } else if (*mst) {
      const PredictorSpec spec = predictor_arg(predictor);
      const DgpSpec d = dgp_arg(dgp);
      Json rows = Json::array();
      std::string csv = ratio ? "n,beta_m,beta_m_se,beta_1,beta_1_se,ratio,ratio_se\n" : "n,beta_m,beta_m_se\n";
      for (Eigen::Index nn : n_grid) {
        if (ratio) {
          const auto r = m_stability_ratio(spec, d, nn, m, reps, seed);
          rows.push_back(Json{{"n", nn}, {"m", m}, {"beta_m", mc_json(r.beta_m)}, {"beta_1", mc_json(r.beta_1)},
                              {"ratio", json_number(r.ratio)}, {"ratio_se", json_number(r.ratio_se)}});
          csv += std::to_string(nn) + "," + format_double(r.beta_m.value) + "," + format_double(r.beta_m.std_err) + "," +
                 format_double(r.beta_1.value) + "," + format_double(r.beta_1.std_err) + "," + format_double(r.ratio) +
                 "," + format_double(r.ratio_se) + "\n";
        } else {
          const auto e = m_stability(spec, d, nn, m, reps, seed);
          rows.push_back(Json{{"n", nn}, {"m", m}, {"beta_m", mc_json(e)}});
          csv += std::to_string(nn) + "," + format_double(e.value) + "," + format_double(e.std_err) + "\n";
        }
      }
      emit(c, Json{{"grid", rows}}, csv);
    } else if (*pb) {
      pac.stability_trunc = stab_trunc;
      pac.stability_abs = stab_abs;
      const PacBounds b = pac_bound_cv(pac);
      emit(c, Json{{"bound_trunc", json_number(b.bound_trunc)}, {"bound_abs", json_number(b.bound_abs)}});
    } else if (*eb) {
      emit(c, Json{{"bound", json_number(equivalence_bound(k, eps, delta, probs))}});
    } else if (*vg || *dr) {
      const PredictorSpec spec = predictor_arg(predictor);
      const DgpSpec d = dgp_arg(dgp);
      std::vector<GridPoint> grid;
      for (Eigen::Index nn : n_grid)
        grid.push_back({nn, *vg ? variance_gap(spec, d, nn, reps, seed) : update_drift(spec, d, nn, reps, inner, seed)});
      const char* col = *vg ? "variance_gap" : "drift";
      emit(c, Json{{"grid", grid_json(grid)}}, grid_to_csv(grid, col));
    } else if (*cov) {
      const auto r = coverage_distribution(predictor_arg(predictor), dgp_arg(dgp), n, method_arg(method, symmetrized),
                                           alpha1, alpha2, delta, reps, mc_test, seed, rule_for(k));
      emit(c, Json{{"nominal", json_number(r.nominal)}, {"summary", summary_json(r.summary)},
                   {"conditional_coverage", values_json(r.conditional_cov)}, {"reps", r.reps},
                   {"mc_test_points", r.mc_test_points}},
           r.to_csv());
    } else if (*eq) {
      CoverageStudyConfig cfg;
      cfg.spec = predictor_arg(predictor);
      cfg.dgp = dgp_arg(dgp);
      cfg.n = n;
      cfg.alpha1 = alpha1;
      cfg.alpha2 = alpha2;
      cfg.train_reps = reps;
      cfg.mc_test = mc_test;
      cfg.shrink_factor = shrink;
      cfg.equiv_factor = equiv;
      cfg.eps = eps;
      cfg.kappa = kappa;
      cfg.rule = rule_for(k);
      cfg.seed = seed;
      const auto r = run_coverage_study(cfg);
      std::vector<double> cj, cs, ci, cp, gap;
      for (const auto& x : r.reps) {
        cj.push_back(x.cov_cv);
        cs.push_back(x.cov_cv_shrunk);
        ci.push_back(x.cov_cv_inflated);
        cp.push_back(x.cov_cv_plus);
        gap.push_back(std::abs(x.cov_cv - x.cov_cv_plus));
      }
      emit(c,
           Json{{"cov_cv", summary_json(summarize(cj))}, {"cov_cv_shrunk", summary_json(summarize(cs))},
                {"cov_cv_inflated", summary_json(summarize(ci))}, {"cov_cv_plus", summary_json(summarize(cp))},
                {"abs_gap", summary_json(summarize(gap))}, {"exceed_by_fold_mean", json_number(pairwise_mean(r.exceed_by_fold))},
                {"equiv_event_freq", json_number(r.equiv_event_freq)}, {"equiv_event_se", json_number(r.equiv_event_se)},
                {"equiv_bound", json_number(r.equiv_bound)}, {"reps", reps}, {"mc_test_points", mc_test}},
           r.to_csv());
    } else if (*len) {
      const auto r = length_compare(predictor_arg(predictor), dgp_arg(dgp), n, alpha1, alpha2, reps, seed);
      emit(c, Json{{"frac_jplus_le_j", r.frac_jplus_le_j}, {"frac_j_le_jplus", r.frac_j_le_jplus},
                   {"frac_jplus_lt_j", r.frac_jplus_lt_j}, {"frac_j_lt_jplus", r.frac_j_lt_jplus},
                   {"mean_length_j", json_number(pairwise_mean(r.len_j))},
                   {"mean_length_jplus", json_number(pairwise_mean(r.len_jplus))}, {"reps", reps}},
           r.to_csv());
    } else if (*sg) {
      const auto g = gauge_convergence(predictor_arg(predictor), dgp_arg(dgp), n_grid, delta, reps, mc_oracle, seed);
      emit(c, Json{{"grid", grid_json(g)}, {"delta", delta}}, grid_to_csv(g, "gauge"));
    } else if (*pl) {
      const auto g = infinite_length_probe(predictor_arg(predictor), dgp_arg(dgp), n_grid, nominal, reps, seed);
      emit(c, Json{{"grid", grid_json(g)}, {"nominal", nominal}}, grid_to_csv(g, "mean_length"));
    } else if (*dg) {
      Rng rng(seed);
      const TrainingSetd t = draw_training_set(dgp_arg(dgp), n, rng);
      const std::string path = c.csv.empty() ? c.out : c.csv;
      if (path.empty())
        std::cout << to_csv(t);
      else
        write_text(path, to_csv(t));
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error_line("UsageError", e.what());
    code = 2;
  } catch (const Error& e) {
    error_line(e.kind(), e.what());
    code = e.category() == ErrorCategory::usage ? 2 : e.category() == ErrorCategory::data ? 3 : 4;
  } catch (const std::exception& e) {
    error_line("InternalError", e.what());
    code = 4;
  }
  return code;
}
