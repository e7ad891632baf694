#include "cvpi/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace cvpi {

Json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return pos_inf<double>();
    if (s == "-inf") return neg_inf<double>();
  }
  throw MalformedInput("expected a number, got " + j.dump());
}

namespace {

Eigen::VectorXd vector_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw MalformedInput(std::string(what) + " must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number_from_json(j[i]);
  return v;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(json_number(v(i)));
  return a;
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw MalformedInput(std::string("bad value for '") + key + "'");
  }
}

double number_or(const Json& j, const char* key, double fallback) {
  return j.contains(key) ? number_from_json(j.at(key)) : fallback;
}

const std::pair<DgpKind, const char*> kDgpNames[] = {
    {DgpKind::gaussian_linear, "gaussian_linear"},
    {DgpKind::classification_grid, "classification_grid"},
    {DgpKind::custom_table, "custom_table"},
    {DgpKind::dirac_first_coordinate, "dirac_first_coordinate"},
    {DgpKind::rare_spike, "rare_spike"},
};

}  // namespace

Json to_json(const StepCdfd& F) {
  Json j;
  j["jumps"] = vector_to_json(F.jumps);
  j["cum"] = vector_to_json(F.cum);
  return j;
}

StepCdfd cdf_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("jumps") || !j.contains("cum"))
    throw MalformedInput("ecdf needs 'jumps' and 'cum'");
  StepCdfd F;
  F.jumps = vector_from_json(j["jumps"], "jumps");
  F.cum = vector_from_json(j["cum"], "cum");
  if (F.jumps.size() == 0 || F.jumps.size() != F.cum.size()) throw MalformedInput("jumps and cum must match and be nonempty");
  for (Eigen::Index i = 0; i < F.size(); ++i) {
    if (!std::isfinite(F.jumps(i))) throw MalformedInput("jumps must be finite");
    if (i > 0 && !(F.jumps(i) > F.jumps(i - 1))) throw MalformedInput("jumps must increase strictly");
    if (!(F.cum(i) > (i == 0 ? 0.0 : F.cum(i - 1)))) throw MalformedInput("cum must increase strictly from 0");
  }
  if (std::abs(F.cum(F.size() - 1) - 1.0) > detail::kWeightTolerance) throw WeightSumError("last cum entry must be 1");
  F.cum(F.size() - 1) = 1.0;
  return F;
}

Json to_json(const PredictorSpec& s) {
  Json j;
  j["kind"] = kind_name(s.kind);
  switch (s.kind) {
    case PredictorKind::ridge: j["lambda"] = s.lambda; break;
    case PredictorKind::knn_mean: j["neighbors"] = s.neighbors; break;
    case PredictorKind::dirac_threshold:
      j["level"] = s.level;
      j["threshold_uses_train_size"] = s.threshold_uses_train_size;
      j["threshold"] = s.threshold;
      break;
    case PredictorKind::constant:
    case PredictorKind::parity_shift: j["value"] = s.value; break;
    default: break;
  }
  return j;
}

PredictorSpec predictor_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InvalidParameter("predictor needs a string 'kind'");
  PredictorSpec s;
  s.kind = parse_kind(j["kind"].get<std::string>());
  s.lambda = number_or(j, "lambda", s.lambda);
  s.neighbors = get_or<int>(j, "neighbors", s.neighbors);
  s.level = number_or(j, "level", s.level);
  s.threshold_uses_train_size = get_or<bool>(j, "threshold_uses_train_size", s.threshold_uses_train_size);
  s.threshold = number_or(j, "threshold", s.threshold);
  if (j.contains("threshold")) s.threshold_uses_train_size = get_or<bool>(j, "threshold_uses_train_size", false);
  s.value = number_or(j, "value", number_or(j, "shift", s.value));
  s.validate();
  return s;
}

DgpSpec dgp_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidParameter("dgp must be an object");
  DgpSpec d;
  const std::string kind = get_or<std::string>(j, "kind", "gaussian_linear");
  bool known = false;
  for (const auto& [k, name] : kDgpNames)
    if (kind == name) {
      d.kind = k;
      known = true;
    }
  if (!known) throw InvalidParameter("unknown dgp kind '" + kind + "'");
  if (j.contains("beta")) {
    d.beta = vector_from_json(j["beta"], "beta");
    d.p = d.beta.size();
  }
  d.p = get_or<Eigen::Index>(j, "p", d.p);
  if (d.kind == DgpKind::gaussian_linear && !j.contains("beta")) {
    d.beta = Eigen::VectorXd::Zero(d.p);
    if (d.p > 0) d.beta(0) = 1.0;
  }
  d.sigma = number_or(j, "sigma", d.sigma);
  d.beta_bound = number_or(j, "beta_bound", d.beta_bound);
  d.class_count = get_or<int>(j, "class_count", d.class_count);
  d.scale_exponent = number_or(j, "scale_exponent", d.scale_exponent);
  d.spike_rate = number_or(j, "spike_rate", d.spike_rate);
  d.spike_amplitude = number_or(j, "spike_amplitude", d.spike_amplitude);
  if (j.contains("table")) {
    d.table = load_dataset(j["table"].get<std::string>(), DataFormat::csv);
    d.p = d.table.p();
  }
  d.validate();
  return d;
}

Json to_json(const DgpSpec& d) {
  Json j;
  for (const auto& [k, name] : kDgpNames)
    if (k == d.kind) j["kind"] = name;
  j["p"] = d.p;
  if (d.kind == DgpKind::gaussian_linear) j["beta"] = vector_to_json(d.beta);
  j["sigma"] = d.sigma;
  j["class_count"] = d.class_count;
  j["scale_exponent"] = d.scale_exponent;
  j["spike_rate"] = d.spike_rate;
  j["spike_amplitude"] = d.spike_amplitude;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput(path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace cvpi
