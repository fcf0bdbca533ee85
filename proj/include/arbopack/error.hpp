#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arbopack {

enum class ErrorCode {
  LoopEdge,
  DuplicateId,
  EmptySide,
  FullSide,
  UnknownVertex,
  UnknownEdge,
  ZeroK,
  SchemaError,
  DisconnectedProbe,
  LoopTemplate,
  NoStabilization,
  UnknownRoot,
  InvalidLevelPacking,
  NotReachable,
  PreconditionFailed,
  SameEndpoints,
  InvalidWalk,
  TooLarge,
  UnknownExample,
  BadParams,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::FullSide: return "FullSide";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::ZeroK: return "ZeroK";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DisconnectedProbe: return "DisconnectedProbe";
    case ErrorCode::LoopTemplate: return "LoopTemplate";
    case ErrorCode::NoStabilization: return "NoStabilization";
    case ErrorCode::UnknownRoot: return "UnknownRoot";
    case ErrorCode::InvalidLevelPacking: return "InvalidLevelPacking";
    case ErrorCode::NotReachable: return "NotReachable";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::SameEndpoints: return "SameEndpoints";
    case ErrorCode::InvalidWalk: return "InvalidWalk";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::BadParams: return "BadParams";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace arbopack
