#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edd {

enum class ErrorCode {
  Syntax,
  DuplicateSection,
  IndexOutOfRange,
  NonPositiveLength,
  Overflow,
  MissingSection,
  AssignmentCapExceeded,
  NotConsecutive,
  CoincidentCut,
  SumMismatch,
  OracleCapExceeded,
  InfeasibleParams,
  MalformedSolution,
  CapExceeded,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Input-format error; line is 1-based, 0 when the problem is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace edd
