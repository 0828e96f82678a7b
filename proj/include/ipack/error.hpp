#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ipack {

enum class ErrorCode {
  NonSimplicial,
  EdgeInTooManyFaces,
  Disconnected,
  NonManifoldVertex,
  AlreadyClosed,
  InvalidInversive,
  MissingInversive,
  DimensionMismatch,
  NonPositiveRadius,
  InvalidSubset,
  InvalidPartition,
  DegenerateTriangle,
  InversiveOutOfRange,
  DomainError,
  NotAPackingMetric,
  NotConcaveRegion,
  InfeasibleTarget,
  MaxIterations,
  Parse,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; `code()` tells callers
// (notably the CLI's exit-code mapping) which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ipack
