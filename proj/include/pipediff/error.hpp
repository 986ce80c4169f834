#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pipediff {

enum class ErrorCode {
  InvalidArgument,
  InfeasibleConstraint,
  InvalidGeometry,
  OutOfBounds,
  NoFit,
  InvalidScenario,
  Io,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InfeasibleConstraint: return "infeasible-constraint";
    case ErrorCode::InvalidGeometry: return "invalid-geometry";
    case ErrorCode::OutOfBounds: return "out-of-bounds";
    case ErrorCode::NoFit: return "no-fit";
    case ErrorCode::InvalidScenario: return "invalid-scenario";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

inline bool is_finite(double x) noexcept { return std::isfinite(x); }

}  // namespace pipediff
