#pragma once

#include <stdexcept>
#include <string>

namespace fockconv {

enum class ErrorKind {
  InvalidArgument,
  Truncation,
  DimensionMismatch,
  InfeasibleTarget,
  EmptySearchRange,
  NonpositiveSigma,
  SampleRateTooLow,
  AmplitudeCapExceeded,
  StepTooLarge,
  ZeroProbability,
  InvalidR,
  UnderdeterminedGrid,
  SingularDesign,
  FitDiverged,
  TooFewResamples,
  OddCutoff,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

// All library failures surface as this type; `kind()` is what callers branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by solve_drive_parameters; carries the first photon number whose
// coherent amplitude vanishes while the target needs it.
class InfeasibleTargetError : public Error {
 public:
  InfeasibleTargetError(int photon_number, const std::string& what)
      : Error(ErrorKind::InfeasibleTarget, what), photon_number_(photon_number) {}

  int photon_number() const noexcept { return photon_number_; }

 private:
  int photon_number_;
};

}  // namespace fockconv
