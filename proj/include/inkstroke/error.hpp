#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace inkstroke {

enum class ErrorCode {
  InvalidRegion,
  RegionTooThin,
  DisconnectedAxis,
  SectionDegenerate,
  OutsideRegion,
  SelfIntersecting,
  IncompatibleJoint,
  EmptyTrajectory,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; the code distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Errors that come from bad user input rather than from the shape or run.
  bool is_config_error() const noexcept {
    return code_ == ErrorCode::InvalidConfig || code_ == ErrorCode::Io;
  }

 private:
  ErrorCode code_;
};

}  // namespace inkstroke
