#pragma once

#include <stdexcept>
#include <string>

namespace bpst {

enum class ErrorKind {
  Parse,
  Usage,
  MonochromaticInstance,
  DegenerateLambda,
  DegenerateSpec,
  InstanceTooLarge,
  Infeasible,
  InvariantViolation,
  AttachFailure,
  SweepExhausted,
  CaseInvariantViolation,
  ForestRemains,
  Io,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so the CLI can map it to
/// an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix, for re-wrapping.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Usage: return "UsageError";
    case ErrorKind::MonochromaticInstance: return "MonochromaticInstance";
    case ErrorKind::DegenerateLambda: return "DegenerateLambda";
    case ErrorKind::DegenerateSpec: return "DegenerateSpec";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::AttachFailure: return "AttachFailure";
    case ErrorKind::SweepExhausted: return "SweepExhausted";
    case ErrorKind::CaseInvariantViolation: return "CaseInvariantViolation";
    case ErrorKind::ForestRemains: return "ForestRemains";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

}  // namespace bpst
