#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace freechoice {

enum class ErrorCode {
  // prob_core
  DuplicateVariable,
  InvalidVariable,
  OutOfAlphabet,
  NotNormalized,
  NegativeProbability,
  InvalidProbability,
  MixedMode,
  DuplicateEntry,
  UnknownVariable,
  EmptyKeepSet,
  ZeroProbabilityEvent,
  OverlappingSets,
  NameCollision,
  // causal_order
  UnknownLabel,
  DuplicateLabel,
  SameLabel,
  // spacetime
  DimensionMismatch,
  NonFiniteCoordinate,
  SuperluminalBoost,
  BadAxis,
  // freedom
  LabelMismatch,
  WrongOrderShape,
  // scenarios
  BadResponseMap,
  ScenarioMismatch,
  MissingDistribution,
  // sampling_stats
  SpecMismatch,
  DegenerateTable,
  BadSampleFile,
  // cli
  MissingSpacetimeBlock,
  UnknownDemo,
};

std::string_view to_string(ErrorCode code);

/// Raised by every library operation on a violated precondition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace freechoice
