#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nodalvec {

enum class ErrorCode {
  InvalidParam,
  NonConvergence,
  PoorFit,
  SingularBeta,
  RegimeMismatch,
  BoxTooSmall,
  ResolutionTooCoarse,
  TooClose,
  NoInteriorMin,
  GridMismatch,
  DidNotConverge,
  LinearSolveStall,
  UnsupportedSymmetry,
  ConfigInvalid,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the Python layer) can branch on it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParam: return "InvalidParam";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::PoorFit: return "PoorFit";
    case ErrorCode::SingularBeta: return "SingularBeta";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::BoxTooSmall: return "BoxTooSmall";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::TooClose: return "TooClose";
    case ErrorCode::NoInteriorMin: return "NoInteriorMin";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::DidNotConverge: return "DidNotConverge";
    case ErrorCode::LinearSolveStall: return "LinearSolveStall";
    case ErrorCode::UnsupportedSymmetry: return "UnsupportedSymmetry";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace nodalvec
