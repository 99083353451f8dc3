#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fanolab {

enum class ErrorCode {
  InvalidArgument,
  InvalidDistribution,
  MismatchedSupport,
  NonPositiveSigma,
  NonPositive,
  DegenerateQ,
  DegenerateQBar,
  OutOfRange,
  BadWeights,
  DegenerateLoss,
  ZeroWeight,
  BadN,
  BadDimension,
  BadC,
  BadEpsilon,
  BadRange,
  BadTrials,
  TooLarge,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::MismatchedSupport: return "MismatchedSupport";
    case ErrorCode::NonPositiveSigma: return "NonPositiveSigma";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::DegenerateQ: return "DegenerateQ";
    case ErrorCode::DegenerateQBar: return "DegenerateQBar";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::DegenerateLoss: return "DegenerateLoss";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::BadN: return "BadN";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::BadC: return "BadC";
    case ErrorCode::BadEpsilon: return "BadEpsilon";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::BadTrials: return "BadTrials";
    case ErrorCode::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

/// Every precondition failure in the library surfaces as this type; `code()`
/// identifies which contract was violated.
class Error : public std::invalid_argument {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::invalid_argument(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fanolab
