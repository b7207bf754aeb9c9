#pragma once

#include <stdexcept>
#include <string>

namespace saddlepairs {

// Machine-readable failure causes. Each code belongs to one exit category
// used by the CLI: config (bad flags/parameters), surface (invalid surface
// data), radius (enumeration radius insufficient for the requested quantity),
// internal (invariant violation inside the library).
enum class ErrorCode {
  // config
  ZeroVector,
  NonPositiveTolerance,
  InvalidFiber,
  RadiusNonPositive,
  NotInSL2Z,
  NotCoprime,
  EmptyCusps,
  NonDescendingLengths,
  InsufficientRadii,
  NonPositiveParams,
  OverlappingCells,
  BadConfig,
  // surface
  NotAPermutation,
  NotTransitive,
  BadSurfaceFile,
  // radius
  RadiusExceedsEnumeration,
  EnumerationRadiusTooSmall,
  SupportNotCovered,
  // internal
  InternalInvariant,
};

enum class ErrorCategory { config = 2, surface = 3, radius = 4, internal = 5 };

constexpr ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAPermutation:
    case ErrorCode::NotTransitive:
    case ErrorCode::BadSurfaceFile:
      return ErrorCategory::surface;
    case ErrorCode::RadiusExceedsEnumeration:
    case ErrorCode::EnumerationRadiusTooSmall:
    case ErrorCode::SupportNotCovered:
      return ErrorCategory::radius;
    case ErrorCode::InternalInvariant:
      return ErrorCategory::internal;
    default:
      return ErrorCategory::config;
  }
}

constexpr const char* name_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NonPositiveTolerance: return "NonPositiveTolerance";
    case ErrorCode::InvalidFiber: return "InvalidFiber";
    case ErrorCode::RadiusNonPositive: return "RadiusNonPositive";
    case ErrorCode::NotInSL2Z: return "NotInSL2Z";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::EmptyCusps: return "EmptyCusps";
    case ErrorCode::NonDescendingLengths: return "NonDescendingLengths";
    case ErrorCode::InsufficientRadii: return "InsufficientRadii";
    case ErrorCode::NonPositiveParams: return "NonPositiveParams";
    case ErrorCode::OverlappingCells: return "OverlappingCells";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::NotTransitive: return "NotTransitive";
    case ErrorCode::BadSurfaceFile: return "BadSurfaceFile";
    case ErrorCode::RadiusExceedsEnumeration: return "RadiusExceedsEnumeration";
    case ErrorCode::EnumerationRadiusTooSmall: return "EnumerationRadiusTooSmall";
    case ErrorCode::SupportNotCovered: return "SupportNotCovered";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(name_of(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }
  ErrorCategory category() const { return category_of(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace saddlepairs
