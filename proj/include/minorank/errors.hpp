#pragma once

#include <stdexcept>
#include <string>

namespace minorank {

enum class ErrorKind {
  InvalidInput,
  DependentInput,
  EmptyAxis,
  NotSubset,
  BadPoint,
  AxisMismatch,
  BadAxisSet,
  AlreadyTensorRank,
  ScaleExceeded,
  RankTooLow,
  Infeasible,
  SliceBoundViolated,
  HypothesisUnverifiable,
  Obstructed,
  VerificationFailed,
  UnknownBudget,
  ParameterOutOfRange,
  UnknownKind,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace minorank
