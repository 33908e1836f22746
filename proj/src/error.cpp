#include "maneuver/error.hpp"

#include <fmt/format.h>

namespace maneuver {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadHeader: return "BadHeader";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::NonMonotonicTime: return "NonMonotonicTime";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::CorpusError: return "CorpusError";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::NonFiniteFeature: return "NonFiniteFeature";
    case ErrorCode::DegenerateSplit: return "DegenerateSplit";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::LabelDomainError: return "LabelDomainError";
    case ErrorCode::SingleClassTrain: return "SingleClassTrain";
    case ErrorCode::DivergenceDetected: return "DivergenceDetected";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::DegenerateClassMeans: return "DegenerateClassMeans";
    case ErrorCode::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::UnknownAlgorithmTag: return "UnknownAlgorithmTag";
    case ErrorCode::ModelFormatError: return "ModelFormatError";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ZeroSupport: return "ZeroSupport";
    case ErrorCode::SingleClassTruth: return "SingleClassTruth";
    case ErrorCode::EmptyCurveSet: return "EmptyCurveSet";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::MissingModel: return "MissingModel";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(fmt::format("line {}: {}", line, message)),
      code_(code),
      line_(line) {}

Error Error::with_context(std::string_view prefix) const {
  Error copy(code_, fmt::format("{}: {}", prefix, what()));
  copy.line_ = line_;
  return copy;
}

}  // namespace maneuver
