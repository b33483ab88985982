// kerrml - error types shared by all modules

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kerrml {

enum class ErrorKind {
  RingSingular,
  HorizonSingular,
  PoleSingular,
  DegenerateFactorization,
  ZeroCovector,
  NoRealRoot,
  StepFailure,
  EmptyTrajectory,
  NotNearSigma2,
  ConormalDegenerate,
  SampleOnConormal,
  DegenerateFibre,
  UnclassifiableSample,
  ConormalEncounter,
  QuadratureBudgetExceeded,
  InconclusiveDecay,
  InvalidArgument,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

// Raised for evaluations outside the domain of a formula or for violated
// preconditions. The kind is stable and mapped to CLI exit codes.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kerrml
