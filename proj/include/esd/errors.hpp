#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace esd {

enum class ErrorCode {
  NotHermitian,
  TraceNotOne,
  NotPositive,
  UnknownPreset,
  WernerParamOutOfRange,
  NegativeTime,
  NegativeRate,
  InternalChannelError,
  EigFailure,
  NotInSubspaceI,
  AllRatesZero,
  StepUnderflow,
  BadStateFile,
  WriteError,
  EmptyGrid,
  BadGrid,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace esd
