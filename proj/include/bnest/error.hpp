#ifndef BNEST_ERROR_HPP
#define BNEST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bnest {

enum class ErrorKind {
  // coefficient arithmetic
  DivByInfinity,
  PoleAtPoint,
  UndefinedAtPoint,
  NegativeValue,
  ParameterMissing,
  // expectations
  UnknownVariable,
  ValueOutOfDomain,
  MassNotOne,
  IncompleteState,
  ParameterizedComparison,
  TableTooLarge,
  // programs and loop rules
  UnsupportedLoop,
  NotFIID,
  BodyMayDiverge,
  VaryingIterationTime,
  // networks
  SyntaxError,
  MissingCptRow,
  RowMassNotOne,
  CycleDetected,
  UndeclaredParameter,
  IncompleteAssignment,
  InconsistentQuery,
  ArityMismatch,
  InvalidNetwork,
  InvalidObservation,
  // simulation
  AllTrialsTruncated,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bnest

#endif
