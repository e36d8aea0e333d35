#ifndef GEVREY_BBM_ERROR_H_
#define GEVREY_BBM_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gevrey_bbm {

enum class ErrorKind {
  kInvalidInput,
  kSymmetryViolation,
  kOverflowRisk,
  kBlowupDetected,
  kNoConvergence,
  kSeriesDivergence,
  kIdentityViolation,
  kCrossCheckFailure,
  kInsufficientData,
  kSpectrumTooThin,
  kNoFit,
};

std::string_view to_string(ErrorKind kind);

// Base of every error raised by the library. Modules that need to attach a
// payload (counterexample, diagnostics, offending time) derive from it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void throw_invalid_input(const std::string& message);

}  // namespace gevrey_bbm

#endif  // GEVREY_BBM_ERROR_H_
