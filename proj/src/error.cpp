#include "freechoice/error.hpp"

namespace freechoice {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateVariable: return "DuplicateVariable";
    case ErrorCode::InvalidVariable: return "InvalidVariable";
    case ErrorCode::OutOfAlphabet: return "OutOfAlphabet";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NegativeProbability: return "NegativeProbability";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::MixedMode: return "MixedMode";
    case ErrorCode::DuplicateEntry: return "DuplicateEntry";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::EmptyKeepSet: return "EmptyKeepSet";
    case ErrorCode::ZeroProbabilityEvent: return "ZeroProbabilityEvent";
    case ErrorCode::OverlappingSets: return "OverlappingSets";
    case ErrorCode::NameCollision: return "NameCollision";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::SameLabel: return "SameLabel";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteCoordinate: return "NonFiniteCoordinate";
    case ErrorCode::SuperluminalBoost: return "SuperluminalBoost";
    case ErrorCode::BadAxis: return "BadAxis";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::WrongOrderShape: return "WrongOrderShape";
    case ErrorCode::BadResponseMap: return "BadResponseMap";
    case ErrorCode::ScenarioMismatch: return "ScenarioMismatch";
    case ErrorCode::MissingDistribution: return "MissingDistribution";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::DegenerateTable: return "DegenerateTable";
    case ErrorCode::BadSampleFile: return "BadSampleFile";
    case ErrorCode::MissingSpacetimeBlock: return "MissingSpacetimeBlock";
    case ErrorCode::UnknownDemo: return "UnknownDemo";
  }
  return "Unknown";
}

}  // namespace freechoice
