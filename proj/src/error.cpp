#include "bnest/error.hpp"

namespace bnest {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivByInfinity: return "DivByInfinity";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::UndefinedAtPoint: return "UndefinedAtPoint";
    case ErrorKind::NegativeValue: return "NegativeValue";
    case ErrorKind::ParameterMissing: return "ParameterMissing";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::ValueOutOfDomain: return "ValueOutOfDomain";
    case ErrorKind::MassNotOne: return "MassNotOne";
    case ErrorKind::IncompleteState: return "IncompleteState";
    case ErrorKind::ParameterizedComparison: return "ParameterizedComparison";
    case ErrorKind::TableTooLarge: return "TableTooLarge";
    case ErrorKind::UnsupportedLoop: return "UnsupportedLoop";
    case ErrorKind::NotFIID: return "NotFIID";
    case ErrorKind::BodyMayDiverge: return "BodyMayDiverge";
    case ErrorKind::VaryingIterationTime: return "VaryingIterationTime";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::MissingCptRow: return "MissingCptRow";
    case ErrorKind::RowMassNotOne: return "RowMassNotOne";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::UndeclaredParameter: return "UndeclaredParameter";
    case ErrorKind::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorKind::InconsistentQuery: return "InconsistentQuery";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::InvalidNetwork: return "InvalidNetwork";
    case ErrorKind::InvalidObservation: return "InvalidObservation";
    case ErrorKind::AllTrialsTruncated: return "AllTrialsTruncated";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace bnest
