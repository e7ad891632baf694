#ifndef CVPI_JSON_IO_HPP_INCLUDED
#define CVPI_JSON_IO_HPP_INCLUDED

#include <json.hpp>

#include <string>

#include "cvpi/data.hpp"
#include "cvpi/ecdf.hpp"
#include "cvpi/predictors.hpp"

namespace cvpi {

using Json = nlohmann::ordered_json;

// JSON has no infinities or NaN; they travel as the strings "inf", "-inf", "nan".
Json json_number(double v);
double number_from_json(const Json& j);

Json to_json(const StepCdfd& F);
// {jumps, cum}; checks the shape of a step cdf, MalformedInput otherwise
StepCdfd cdf_from_json(const Json& j);

Json to_json(const PredictorSpec& spec);
PredictorSpec predictor_from_json(const Json& j);

// {"kind": "gaussian_linear", "p": 2, "beta": [...], "sigma": 1, ...}
DgpSpec dgp_from_json(const Json& j);
Json to_json(const DgpSpec& dgp);

Json read_json_file(const std::string& path);
std::string dump(const Json& j);

}  // namespace cvpi

#endif  // CVPI_JSON_IO_HPP_INCLUDED
