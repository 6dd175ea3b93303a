#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isoforge {

enum class ErrorCode {
  InvalidInput,
  IoError,
  NonRegularCurve,
  VanishingCurvature,
  NonPositiveCurvature,
  DegenerateProjection,
  VanishingHalfCurvature,
  KossowskiViolation,
  OrientationError,
  AdmissibilityViolation,
  PointwiseAdmissibilityViolation,
  AngleRecoveryFailure,
  JetSolveFailure,
  ReparametrizationFailure,
  NormalFormFailure,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. Validation failures (bad input, violated
/// preconditions) and numerical failures (singular solves, divergent
/// normalizations) share one type and are told apart by `code()`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  bool numerical() const noexcept;

 private:
  ErrorCode code_;
};

}  // namespace isoforge
