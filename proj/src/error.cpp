#include "isoforge/error.hpp"

namespace isoforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NonRegularCurve: return "NonRegularCurve";
    case ErrorCode::VanishingCurvature: return "VanishingCurvature";
    case ErrorCode::NonPositiveCurvature: return "NonPositiveCurvature";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::VanishingHalfCurvature: return "VanishingHalfCurvature";
    case ErrorCode::KossowskiViolation: return "KossowskiViolation";
    case ErrorCode::OrientationError: return "OrientationError";
    case ErrorCode::AdmissibilityViolation: return "AdmissibilityViolation";
    case ErrorCode::PointwiseAdmissibilityViolation: return "PointwiseAdmissibilityViolation";
    case ErrorCode::AngleRecoveryFailure: return "AngleRecoveryFailure";
    case ErrorCode::JetSolveFailure: return "JetSolveFailure";
    case ErrorCode::ReparametrizationFailure: return "ReparametrizationFailure";
    case ErrorCode::NormalFormFailure: return "NormalFormFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

bool Error::numerical() const noexcept {
  switch (code_) {
    case ErrorCode::AngleRecoveryFailure:
    case ErrorCode::JetSolveFailure:
    case ErrorCode::ReparametrizationFailure:
    case ErrorCode::NormalFormFailure:
      return true;
    default:
      return false;
  }
}

}  // namespace isoforge
