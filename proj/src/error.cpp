#include "fockconv/error.hpp"

namespace fockconv {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Truncation: return "TruncationError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InfeasibleTarget: return "InfeasibleTarget";
    case ErrorKind::EmptySearchRange: return "EmptySearchRange";
    case ErrorKind::NonpositiveSigma: return "NonpositiveSigma";
    case ErrorKind::SampleRateTooLow: return "SampleRateTooLow";
    case ErrorKind::AmplitudeCapExceeded: return "AmplitudeCapExceeded";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::ZeroProbability: return "ZeroProbability";
    case ErrorKind::InvalidR: return "InvalidR";
    case ErrorKind::UnderdeterminedGrid: return "UnderdeterminedGrid";
    case ErrorKind::SingularDesign: return "SingularDesign";
    case ErrorKind::FitDiverged: return "FitDiverged";
    case ErrorKind::TooFewResamples: return "TooFewResamples";
    case ErrorKind::OddCutoff: return "OddCutoff";
    case ErrorKind::Io: return "IoError";
  }
  return "Unknown";
}

}  // namespace fockconv
