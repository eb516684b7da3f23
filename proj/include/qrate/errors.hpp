#pragma once

#include <stdexcept>
#include <string>

namespace qrate {

// Error categories map onto CLI exit codes: parse=1, numeric=2,
// infeasible=3, resource=4.
enum class ErrorCategory { Parse, Numeric, Infeasible, Resource, Usage };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory cat, const std::string& msg)
      : std::runtime_error(msg), category_(cat) {}
  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

#define QRATE_DEFINE_ERROR(Name, Cat)                       \
  class Name : public Error {                               \
   public:                                                  \
    explicit Name(const std::string& msg)                   \
        : Error(ErrorCategory::Cat, std::string(#Name ": ") + msg) {} \
  }

QRATE_DEFINE_ERROR(DimensionMismatch, Usage);
QRATE_DEFINE_ERROR(NonHermitianInput, Usage);
QRATE_DEFINE_ERROR(NotCPTP, Parse);
QRATE_DEFINE_ERROR(NotDensityMatrix, Parse);
QRATE_DEFINE_ERROR(InvalidParameter, Usage);
QRATE_DEFINE_ERROR(IndexOutOfRange, Usage);
QRATE_DEFINE_ERROR(BlockTooLarge, Resource);
QRATE_DEFINE_ERROR(DimensionTooLarge, Resource);
QRATE_DEFINE_ERROR(RateOutOfRange, Usage);
QRATE_DEFINE_ERROR(SolverDiverged, Numeric);
QRATE_DEFINE_ERROR(InvalidDistortion, Usage);
QRATE_DEFINE_ERROR(SourceTypeMismatch, Usage);
QRATE_DEFINE_ERROR(MissingDistortion, Usage);
QRATE_DEFINE_ERROR(InfeasiblePlan, Infeasible);
QRATE_DEFINE_ERROR(DegenerateCapacity, Numeric);
QRATE_DEFINE_ERROR(ParseError, Parse);

#undef QRATE_DEFINE_ERROR

}  // namespace qrate
