#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sphrk {

enum class ErrorCode {
  ZeroVector,
  AntipodalPoints,
  StepTooLarge,
  ZeroQuaternion,
  LogBranchUndefined,
  NoConvergence,
  HemisphereViolation,
  NearPole,
  DegenerateFront,
  NonPositiveError,
  ReferenceUnavailable,
  NotTangent,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. Carries a
/// machine-readable code next to the human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

/// A stepper failure lifted out of a multi-step driver, annotated with the
/// step (and, for ray tracing, the ray) at which it happened.
class StepError : public Error {
 public:
  StepError(const Error& cause, std::size_t step, long ray = -1)
      : Error(cause.code(), annotate(cause.message(), step, ray)), step_(step), ray_(ray) {}

  std::size_t step() const noexcept { return step_; }
  long ray() const noexcept { return ray_; }

 private:
  static std::string annotate(const std::string& message, std::size_t step, long ray) {
    std::string out = message + " (at step " + std::to_string(step);
    if (ray >= 0) out += ", ray " + std::to_string(ray);
    return out + ")";
  }

  std::size_t step_;
  long ray_;
};

}  // namespace sphrk
