#include "gevrey_bbm/error.h"

namespace gevrey_bbm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
      return "InvalidInput";
    case ErrorKind::kSymmetryViolation:
      return "SymmetryViolation";
    case ErrorKind::kOverflowRisk:
      return "OverflowRisk";
    case ErrorKind::kBlowupDetected:
      return "BlowupDetected";
    case ErrorKind::kNoConvergence:
      return "NoConvergence";
    case ErrorKind::kSeriesDivergence:
      return "SeriesDivergence";
    case ErrorKind::kIdentityViolation:
      return "IdentityViolation";
    case ErrorKind::kCrossCheckFailure:
      return "CrossCheckFailure";
    case ErrorKind::kInsufficientData:
      return "InsufficientData";
    case ErrorKind::kSpectrumTooThin:
      return "SpectrumTooThin";
    case ErrorKind::kNoFit:
      return "NoFit";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

void throw_invalid_input(const std::string& message) {
  throw Error(ErrorKind::kInvalidInput, message);
}

}  // namespace gevrey_bbm
