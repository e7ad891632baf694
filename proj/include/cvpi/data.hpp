#ifndef CVPI_DATA_HPP_INCLUDED
#define CVPI_DATA_HPP_INCLUDED

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "cvpi/errors.hpp"
#include "cvpi/rng.hpp"

namespace cvpi {

template <typename Scalar>
struct Sample {
  Scalar y{};
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
};

// Rows are samples: y(i) is the response, x.row(i) the features.
// Plain aggregate; validation lives in make_training_set and the loaders, since
// fold code builds subsets smaller than the n >= 2 a dataset must have.
template <typename Scalar>
struct TrainingSet {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector y;
  Matrix x;

  Eigen::Index n() const { return y.size(); }
  Eigen::Index p() const { return x.cols(); }

  Sample<Scalar> sample(Eigen::Index i) const { return {y(i), x.row(i).transpose()}; }

  bool operator==(const TrainingSet& other) const {
    return y.size() == other.y.size() && x.rows() == other.x.rows() && x.cols() == other.x.cols() &&
           y == other.y && x == other.x;
  }
};

using Sampled = Sample<double>;
using TrainingSetd = TrainingSet<double>;

TrainingSetd make_training_set(Eigen::VectorXd y, Eigen::MatrixXd x);
TrainingSetd make_training_set(const std::vector<Sampled>& samples);

// Rows picked by index, in the given order.
template <typename Scalar>
TrainingSet<Scalar> subset(const TrainingSet<Scalar>& data, const std::vector<Eigen::Index>& rows) {
  TrainingSet<Scalar> out;
  out.y.resize(static_cast<Eigen::Index>(rows.size()));
  out.x.resize(static_cast<Eigen::Index>(rows.size()), data.p());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.y(static_cast<Eigen::Index>(r)) = data.y(rows[r]);
    out.x.row(static_cast<Eigen::Index>(r)) = data.x.row(rows[r]);
  }
  return out;
}

template <typename Scalar>
TrainingSet<Scalar> head(const TrainingSet<Scalar>& data, Eigen::Index rows) {
  return {data.y.head(rows), data.x.topRows(rows)};
}

enum class DataFormat { csv, json };

TrainingSetd load_dataset(const std::string& path, DataFormat format);
TrainingSetd parse_csv(const std::string& text);
TrainingSetd parse_json(const std::string& text);
std::string to_csv(const TrainingSetd& data);
void save_csv(const TrainingSetd& data, const std::string& path);

// Shortest decimal that reads back to the same double.
std::string format_double(double v);
double parse_double(const std::string& token);

enum class DgpKind {
  gaussian_linear,
  classification_grid,
  custom_table,
  // x1 sits at the design size n, the other features are N(0,1), y ~ N(0, sigma^2)
  dirac_first_coordinate,
  // y = amplitude * n^scale_exponent * Bernoulli(spike_rate / n), x ~ N(0, I)
  rare_spike,
};

// `design_n` passed to the draw functions is the n of the triangular array; it
// can differ from the number of rows drawn (m-stability draws n+m-1 rows from
// the size-n design).
struct DgpSpec {
  DgpKind kind = DgpKind::gaussian_linear;
  Eigen::Index p = 1;
  Eigen::VectorXd beta;
  double sigma = 1.0;
  double beta_bound = std::numeric_limits<double>::infinity();
  int class_count = 2;
  // y is multiplied by n^scale_exponent (gaussian_linear, rare_spike)
  double scale_exponent = 0.0;
  double spike_rate = 0.5;
  double spike_amplitude = 1.0;
  TrainingSetd table;

  void validate() const;
};

DgpSpec gaussian_linear_dgp(Eigen::VectorXd beta, double sigma);
DgpSpec classification_dgp(Eigen::Index p, int class_count);

Sampled draw_sample(const DgpSpec& dgp, Eigen::Index design_n, Rng& rng);
void draw_into(const DgpSpec& dgp, Eigen::Index design_n, Rng& rng, double& y, Eigen::Ref<Eigen::VectorXd> x);
TrainingSetd draw_training_set(const DgpSpec& dgp, Eigen::Index rows, Eigen::Index design_n, Rng& rng);
inline TrainingSetd draw_training_set(const DgpSpec& dgp, Eigen::Index rows, Rng& rng) {
  return draw_training_set(dgp, rows, rows, rng);
}

TrainingSetd sample_gaussian_linear(Eigen::Index n, Eigen::Index p, const Eigen::VectorXd& beta, double sigma,
                                    RngSeed seed);
TrainingSetd sample_classification(Eigen::Index n, Eigen::Index p, int class_count, RngSeed seed);

double standard_normal_cdf(double x);

}  // namespace cvpi

#endif  // CVPI_DATA_HPP_INCLUDED
