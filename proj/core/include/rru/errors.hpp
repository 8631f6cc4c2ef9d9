#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rru {

enum class ErrorKind {
  // arithmetic / builtins
  UnboundVariable,
  UnknownOperator,
  InstantiationError,
  UnknownBuiltin,
  BodyFailed,
  // program validation
  MultipleRecursiveRules,
  NonLinearRecursion,
  HeadNotVariables,
  InvalidProgram,
  // parsing
  Syntax,
  // execution
  NoRuleApplicable,
  StepLimitExceeded,
  UnfoldCapExceeded,
  // unfolding schemes
  TemplateMismatch,
  MatchFailure,
  // engine facade
  DuplicateRegistration,
  BadGoal,
  // benchmarking
  VerificationMismatch,
};

const char* error_kind_name(ErrorKind kind);

class EngineError : public std::runtime_error {
 public:
  EngineError(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public EngineError {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : EngineError(ErrorKind::Syntax, message + " at line " +
                                           std::to_string(line) + ", column " +
                                           std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace rru
