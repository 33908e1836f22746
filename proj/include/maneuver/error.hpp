#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace maneuver {

// Every failure raised by the library carries one of these codes. The CLI maps
// them onto exit statuses and prints `ERROR <code>: <message>`.
enum class ErrorCode {
  // trajectory_io
  BadHeader,
  MalformedRow,
  RangeViolation,
  NonMonotonicTime,
  TooShort,
  CorpusError,
  // features
  SeriesTooShort,
  EmptyInput,
  // dataset
  EmptyCorpus,
  NonFiniteFeature,
  DegenerateSplit,
  SchemaError,
  LabelDomainError,
  // classifiers
  SingleClassTrain,
  DivergenceDetected,
  DimensionMismatch,
  BadK,
  DegenerateClassMeans,
  SchemaVersionMismatch,
  UnknownAlgorithmTag,
  ModelFormatError,
  // metrics
  LengthMismatch,
  ZeroSupport,
  SingleClassTruth,
  EmptyCurveSet,
  // cli / shared
  InvalidConfig,
  MissingModel,
  IoError,
  Usage,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::size_t line);

  ErrorCode code() const noexcept { return code_; }
  // 1-based line number for parse errors (the header is line 1).
  std::optional<std::size_t> line() const noexcept { return line_; }

  // Same error with `prefix: ` prepended to the message (file names, feature names).
  Error with_context(std::string_view prefix) const;

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace maneuver
