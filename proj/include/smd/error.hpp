#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smd {

enum class ErrorCode {
  MalformedInput,
  NonFiniteValue,
  UnsupportedLayout,
  InvalidSequence,
  InvalidConfig,
  DegenerateLandmarks,
  BadWindow,
  BadOptions,
  EmptyInput,
  IoError,
  MissingMotion,
  UnknownFixture,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::UnsupportedLayout: return "UnsupportedLayout";
    case ErrorCode::InvalidSequence: return "InvalidSequence";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::DegenerateLandmarks: return "DegenerateLandmarks";
    case ErrorCode::BadWindow: return "BadWindow";
    case ErrorCode::BadOptions: return "BadOptions";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MissingMotion: return "MissingMotion";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
  }
  return "Unknown";
}

// Every failure in the library is reported as an Error carrying a code, so
// callers can branch on the category without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace smd
