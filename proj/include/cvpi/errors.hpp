#ifndef CVPI_ERRORS_HPP_INCLUDED
#define CVPI_ERRORS_HPP_INCLUDED

#include <stdexcept>
#include <string>

namespace cvpi {

// Coarse classification used by the CLI to pick an exit code.
enum class ErrorCategory { usage, data, numeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string kind, const std::string& message)
      : std::runtime_error(message), category_(category), kind_(std::move(kind)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorCategory category_;
  std::string kind_;
};

#define CVPI_DEFINE_ERROR(Name, Category)                  \
  class Name : public Error {                              \
   public:                                                 \
    explicit Name(const std::string& message)              \
        : Error(ErrorCategory::Category, #Name, message) {} \
  };

CVPI_DEFINE_ERROR(MalformedInput, data)
CVPI_DEFINE_ERROR(TooFewRows, data)
CVPI_DEFINE_ERROR(DimensionMismatch, data)
CVPI_DEFINE_ERROR(LengthMismatch, data)
CVPI_DEFINE_ERROR(EmptyFold, data)
CVPI_DEFINE_ERROR(FoldLeavesNothing, data)
CVPI_DEFINE_ERROR(MissingFittedValues, data)
CVPI_DEFINE_ERROR(InvalidBundle, data)
CVPI_DEFINE_ERROR(InvalidParameter, usage)
CVPI_DEFINE_ERROR(WeightSumError, numeric)
CVPI_DEFINE_ERROR(DegenerateFit, numeric)
CVPI_DEFINE_ERROR(NonMonotoneLoss, numeric)
CVPI_DEFINE_ERROR(NonIntegerResiduals, numeric)
CVPI_DEFINE_ERROR(UnboundedLoss, numeric)
CVPI_DEFINE_ERROR(InvalidTolerance, numeric)
CVPI_DEFINE_ERROR(InnerTooSmall, numeric)

#undef CVPI_DEFINE_ERROR

}  // namespace cvpi

#endif  // CVPI_ERRORS_HPP_INCLUDED
