#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conic {

enum class ErrorCode {
  OutOfRange,
  NotAFiberGraph,
  NegativeRank,
  InvalidForest,
  InconsistentProximity,
  NegativeEdge,
  NotSquareZero,
  WrongAnticanonicalDegree,
  NotNefAgainstInventory,
  NotAConicFiber,
  InvalidConfiguration,
  BaseLocusNotContained,
  UnknownCurve,
  Schema,
  Io,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotAFiberGraph: return "NotAFiberGraph";
    case ErrorCode::NegativeRank: return "NegativeRank";
    case ErrorCode::InvalidForest: return "InvalidForest";
    case ErrorCode::InconsistentProximity: return "InconsistentProximity";
    case ErrorCode::NegativeEdge: return "NegativeEdge";
    case ErrorCode::NotSquareZero: return "NotSquareZero";
    case ErrorCode::WrongAnticanonicalDegree: return "WrongAnticanonicalDegree";
    case ErrorCode::NotNefAgainstInventory: return "NotNefAgainstInventory";
    case ErrorCode::NotAConicFiber: return "NotAConicFiber";
    case ErrorCode::InvalidConfiguration: return "InvalidConfiguration";
    case ErrorCode::BaseLocusNotContained: return "BaseLocusNotContained";
    case ErrorCode::UnknownCurve: return "UnknownCurve";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Input problems (unreadable files, malformed JSON, dangling references)
/// as opposed to mathematical failures of otherwise well-formed data.
inline bool is_input_error(ErrorCode code) {
  return code == ErrorCode::Schema || code == ErrorCode::Io ||
         code == ErrorCode::UnknownCurve;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace conic
