#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace modelset {

enum class ErrorCode {
  SingularBasis,
  InjectivityViolation,
  RegionTooLarge,
  RegionTooSmall,
  UnsupportedShape,
  UnsupportedDimension,
  Undefined,
  EpsilonOutOfRange,
  NotInL,
  NotSchemeBacked,
  ChainFailure,
  ConfigError,
  ParseError,
  DuplicatePoint,
  IoError,
  ArithmeticOverflow,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

/// Base class for every error raised by the library. The code is stable and
/// is what the CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A nonzero integer vector whose physical image vanishes.
class InjectivityViolation : public Error {
 public:
  InjectivityViolation(std::vector<std::int64_t> witness, const std::string& what)
      : Error(ErrorCode::InjectivityViolation, what), witness_(std::move(witness)) {}

  const std::vector<std::int64_t>& witness() const noexcept { return witness_; }

 private:
  std::vector<std::int64_t> witness_;
};

class ChainFailure : public Error {
 public:
  ChainFailure(std::size_t step, const std::string& what)
      : Error(ErrorCode::ChainFailure, what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace modelset
