#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace levelraiser {

enum class ErrorKind {
  InvalidInput,
  SingularCurve,
  BadReduction,
  InvalidDegree,
  ZeroNorm,
  DimensionMismatch,
  LevelMismatch,
  NotFound,
  PreconditionFailed,
  CertificateFailure,
  NotInFamily,
  SingularMember,
  NetworkUnavailable,
  Mismatch,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::InvalidDegree: return "InvalidDegree";
    case ErrorKind::ZeroNorm: return "ZeroNorm";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::CertificateFailure: return "CertificateFailure";
    case ErrorKind::NotInFamily: return "NotInFamily";
    case ErrorKind::SingularMember: return "SingularMember";
    case ErrorKind::NetworkUnavailable: return "NetworkUnavailable";
    case ErrorKind::Mismatch: return "Mismatch";
  }
  return "Unknown";
}

/// Domain error carrying a stable, machine-readable kind. The CLI reports
/// error_name(kind()) in its JSON output.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace levelraiser
