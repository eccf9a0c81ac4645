#include "minorank/errors.hpp"

namespace minorank {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DependentInput: return "DependentInput";
    case ErrorKind::EmptyAxis: return "EmptyAxis";
    case ErrorKind::NotSubset: return "NotSubset";
    case ErrorKind::BadPoint: return "BadPoint";
    case ErrorKind::AxisMismatch: return "AxisMismatch";
    case ErrorKind::BadAxisSet: return "BadAxisSet";
    case ErrorKind::AlreadyTensorRank: return "AlreadyTensorRank";
    case ErrorKind::ScaleExceeded: return "ScaleExceeded";
    case ErrorKind::RankTooLow: return "RankTooLow";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::SliceBoundViolated: return "SliceBoundViolated";
    case ErrorKind::HypothesisUnverifiable: return "HypothesisUnverifiable";
    case ErrorKind::Obstructed: return "Obstructed";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::UnknownBudget: return "UnknownBudget";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::UnknownKind: return "UnknownKind";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace minorank
