#include "cvpi/data.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cvpi {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

void check_finite(double v) {
  if (!std::isfinite(v)) throw MalformedInput("non-finite value in data");
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& token) {
  std::string t = trim(token);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  double v = 0.0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw MalformedInput("not a number: '" + token + "'");
  return v;
}

TrainingSetd make_training_set(Eigen::VectorXd y, Eigen::MatrixXd x) {
  if (x.rows() != y.size()) throw DimensionMismatch("x and y row counts differ");
  if (y.size() < 2) throw TooFewRows("need at least 2 rows, got " + std::to_string(y.size()));
  if (!y.allFinite() || !x.allFinite()) throw MalformedInput("non-finite value in data");
  return {std::move(y), std::move(x)};
}

TrainingSetd make_training_set(const std::vector<Sampled>& samples) {
  if (samples.size() < 2) throw TooFewRows("need at least 2 rows, got " + std::to_string(samples.size()));
  const Eigen::Index p = samples.front().x.size();
  Eigen::VectorXd y(static_cast<Eigen::Index>(samples.size()));
  Eigen::MatrixXd x(static_cast<Eigen::Index>(samples.size()), p);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].x.size() != p) throw DimensionMismatch("ragged feature vectors");
    y(static_cast<Eigen::Index>(i)) = samples[i].y;
    x.row(static_cast<Eigen::Index>(i)) = samples[i].x.transpose();
  }
  return make_training_set(std::move(y), std::move(x));
}

TrainingSetd parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw MalformedInput("empty csv");
  auto header = split_line(line);
  if (header.empty() || trim(header[0]) != "y") throw MalformedInput("csv header must start with y");
  for (std::size_t j = 1; j < header.size(); ++j)
    if (trim(header[j]) != "x" + std::to_string(j)) throw MalformedInput("bad csv header column '" + header[j] + "'");
  const std::size_t cols = header.size();

  std::vector<double> values;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty() || trim(line) == "\r") continue;
    auto fields = split_line(line);
    if (fields.size() != cols) throw MalformedInput("ragged csv row " + std::to_string(rows + 2));
    for (auto& f : fields) {
      double v = parse_double(f);
      check_finite(v);
      values.push_back(v);
    }
    ++rows;
  }
  if (rows < 2) throw TooFewRows("need at least 2 rows, got " + std::to_string(rows));
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows));
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols - 1));
  for (std::size_t i = 0; i < rows; ++i) {
    y(static_cast<Eigen::Index>(i)) = values[i * cols];
    for (std::size_t j = 1; j < cols; ++j)
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - 1)) = values[i * cols + j];
  }
  return make_training_set(std::move(y), std::move(x));
}

TrainingSetd parse_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("bad json: ") + e.what());
  }
  if (!doc.is_array()) throw MalformedInput("json dataset must be an array of {y, x}");
  std::vector<Sampled> samples;
  for (const auto& row : doc) {
    if (!row.is_object() || !row.contains("y") || !row["y"].is_number())
      throw MalformedInput("json row needs numeric y");
    Sampled s;
    s.y = row["y"].get<double>();
    check_finite(s.y);
    if (row.contains("x")) {
      const auto& xs = row["x"];
      if (!xs.is_array()) throw MalformedInput("json x must be an array");
      s.x.resize(static_cast<Eigen::Index>(xs.size()));
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if (!xs[j].is_number()) throw MalformedInput("json x entries must be numbers");
        s.x(static_cast<Eigen::Index>(j)) = xs[j].get<double>();
        check_finite(s.x(static_cast<Eigen::Index>(j)));
      }
    } else {
      s.x.resize(0);
    }
    if (!samples.empty() && samples.front().x.size() != s.x.size()) throw MalformedInput("ragged json rows");
    samples.push_back(std::move(s));
  }
  return make_training_set(samples);
}

TrainingSetd load_dataset(const std::string& path, DataFormat format) {
  const std::string text = read_file(path);
  return format == DataFormat::csv ? parse_csv(text) : parse_json(text);
}

std::string to_csv(const TrainingSetd& data) {
  std::string out = "y";
  for (Eigen::Index j = 0; j < data.p(); ++j) out += ",x" + std::to_string(j + 1);
  out += '\n';
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    out += format_double(data.y(i));
    for (Eigen::Index j = 0; j < data.p(); ++j) out += "," + format_double(data.x(i, j));
    out += '\n';
  }
  return out;
}

void save_csv(const TrainingSetd& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MalformedInput("cannot write " + path);
  out << to_csv(data);
}

// --- data-generating processes ---------------------------------------------

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

void DgpSpec::validate() const {
  if (p < 0) throw InvalidParameter("p must be nonnegative");
  switch (kind) {
    case DgpKind::gaussian_linear:
      if (beta.size() != p) throw DimensionMismatch("beta length must equal p");
      if (!(sigma > 0)) throw InvalidParameter("sigma must be positive");
      if (beta.norm() > beta_bound) throw InvalidParameter("norm of beta exceeds declared bound");
      break;
    case DgpKind::classification_grid:
      if (class_count < 2) throw InvalidParameter("class_count must be at least 2");
      if (p < 1) throw InvalidParameter("classification needs p >= 1");
      break;
    case DgpKind::custom_table:
      if (table.n() < 1) throw TooFewRows("custom table is empty");
      if (table.p() != p) throw DimensionMismatch("table width differs from p");
      break;
    case DgpKind::dirac_first_coordinate:
      if (p < 1) throw InvalidParameter("dirac design needs p >= 1");
      if (!(sigma > 0)) throw InvalidParameter("sigma must be positive");
      break;
    case DgpKind::rare_spike:
      if (!(spike_rate > 0)) throw InvalidParameter("spike_rate must be positive");
      break;
  }
}

DgpSpec gaussian_linear_dgp(Eigen::VectorXd beta, double sigma) {
  DgpSpec d;
  d.kind = DgpKind::gaussian_linear;
  d.p = beta.size();
  d.beta = std::move(beta);
  d.sigma = sigma;
  return d;
}

DgpSpec classification_dgp(Eigen::Index p, int class_count) {
  DgpSpec d;
  d.kind = DgpKind::classification_grid;
  d.p = p;
  d.class_count = class_count;
  return d;
}

void draw_into(const DgpSpec& dgp, Eigen::Index design_n, Rng& rng, double& y, Eigen::Ref<Eigen::VectorXd> x) {
  const double scale = dgp.scale_exponent == 0.0 ? 1.0 : std::pow(static_cast<double>(design_n), dgp.scale_exponent);
  switch (dgp.kind) {
    case DgpKind::gaussian_linear: {
      for (Eigen::Index j = 0; j < dgp.p; ++j) x(j) = rng.normal();
      const double signal = dgp.p > 0 ? dgp.beta.dot(x) : 0.0;
      y = scale * (signal + dgp.sigma * rng.normal());
      break;
    }
    case DgpKind::classification_grid: {
      for (Eigen::Index j = 0; j < dgp.p; ++j) x(j) = rng.normal();
      const int k = dgp.class_count;
      long cell = static_cast<long>(std::floor(k * standard_normal_cdf(x(0))));
      y = 1.0 + static_cast<double>(cell % k);
      break;
    }
    case DgpKind::custom_table: {
      std::uniform_int_distribution<Eigen::Index> pick(0, dgp.table.n() - 1);
      const Eigen::Index r = pick(rng.engine());
      y = dgp.table.y(r);
      x = dgp.table.x.row(r).transpose();
      break;
    }
    case DgpKind::dirac_first_coordinate: {
      x(0) = static_cast<double>(design_n);
      for (Eigen::Index j = 1; j < dgp.p; ++j) x(j) = rng.normal();
      y = dgp.sigma * rng.normal();
      break;
    }
    case DgpKind::rare_spike: {
      for (Eigen::Index j = 0; j < dgp.p; ++j) x(j) = rng.normal();
      const double q = std::min(1.0, dgp.spike_rate / static_cast<double>(design_n));
      y = rng.bernoulli(q) ? dgp.spike_amplitude * scale : 0.0;
      break;
    }
  }
}

Sampled draw_sample(const DgpSpec& dgp, Eigen::Index design_n, Rng& rng) {
  Sampled s;
  s.x.resize(dgp.p);
  draw_into(dgp, design_n, rng, s.y, s.x);
  return s;
}

TrainingSetd draw_training_set(const DgpSpec& dgp, Eigen::Index rows, Eigen::Index design_n, Rng& rng) {
  dgp.validate();
  TrainingSetd out;
  out.y.resize(rows);
  out.x.resize(rows, dgp.p);
  Eigen::VectorXd x(dgp.p);
  for (Eigen::Index i = 0; i < rows; ++i) {
    draw_into(dgp, design_n, rng, out.y(i), x);
    out.x.row(i) = x.transpose();
  }
  return out;
}

TrainingSetd sample_gaussian_linear(Eigen::Index n, Eigen::Index p, const Eigen::VectorXd& beta, double sigma,
                                    RngSeed seed) {
  if (beta.size() != p) throw DimensionMismatch("beta length must equal p");
  if (n < 2) throw TooFewRows("need n >= 2");
  DgpSpec dgp = gaussian_linear_dgp(beta, sigma);
  Rng rng(seed);
  return draw_training_set(dgp, n, rng);
}

TrainingSetd sample_classification(Eigen::Index n, Eigen::Index p, int class_count, RngSeed seed) {
  if (n < 2) throw TooFewRows("need n >= 2");
  DgpSpec dgp = classification_dgp(p, class_count);
  Rng rng(seed);
  return draw_training_set(dgp, n, rng);
}

}  // namespace cvpi
