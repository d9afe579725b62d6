#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curveflow {

enum class ErrorKind {
  InvalidCurve,
  DegenerateTangent,
  TangentialCrossing,
  InvalidSplit,
  AllFlat,
  InvalidConfig,
  StepRejected,
  SingularityReached,
  MaxStepsExceeded,
  AreaNotDecreasing,
  NotBalanced,
  SolveFailed,
  OutOfDomain,
  Extinct,
  PreconditionFailed,
  GeneratorFailed,
  ExtinctionUnresolved,
  OscBelowPi,
  IoError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidCurve: return "InvalidCurve";
    case ErrorKind::DegenerateTangent: return "DegenerateTangent";
    case ErrorKind::TangentialCrossing: return "TangentialCrossing";
    case ErrorKind::InvalidSplit: return "InvalidSplit";
    case ErrorKind::AllFlat: return "AllFlat";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::StepRejected: return "StepRejected";
    case ErrorKind::SingularityReached: return "SingularityReached";
    case ErrorKind::MaxStepsExceeded: return "MaxStepsExceeded";
    case ErrorKind::AreaNotDecreasing: return "AreaNotDecreasing";
    case ErrorKind::NotBalanced: return "NotBalanced";
    case ErrorKind::SolveFailed: return "SolveFailed";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::Extinct: return "Extinct";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::GeneratorFailed: return "GeneratorFailed";
    case ErrorKind::ExtinctionUnresolved: return "ExtinctionUnresolved";
    case ErrorKind::OscBelowPi: return "OscBelowPi";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// what() without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace curveflow
