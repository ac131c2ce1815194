// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace thurston {

enum class ErrorCode {
  InvalidPoint,
  InvalidChart,
  NotOnUnitSurface,
  DegenerateTriangle,
  ZeroVector,
  IsometryDomainError,
  DegenerateVertex,
  DegenerateProjection,
  DegenerateSegment,
  NumericDomain,
  EmptyDomain,
  EmptyMesh,
  InvalidConfig,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::InvalidChart: return "InvalidChart";
    case ErrorCode::NotOnUnitSurface: return "NotOnUnitSurface";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::IsometryDomainError: return "IsometryDomainError";
    case ErrorCode::DegenerateVertex: return "DegenerateVertex";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::NumericDomain: return "NumericDomain";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::EmptyMesh: return "EmptyMesh";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace thurston
