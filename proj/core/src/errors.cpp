#include "rru/errors.hpp"

namespace rru {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::UnknownOperator: return "UnknownOperator";
    case ErrorKind::InstantiationError: return "InstantiationError";
    case ErrorKind::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorKind::BodyFailed: return "BodyFailed";
    case ErrorKind::MultipleRecursiveRules: return "MultipleRecursiveRules";
    case ErrorKind::NonLinearRecursion: return "NonLinearRecursion";
    case ErrorKind::HeadNotVariables: return "HeadNotVariables";
    case ErrorKind::InvalidProgram: return "InvalidProgram";
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::NoRuleApplicable: return "NoRuleApplicable";
    case ErrorKind::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorKind::UnfoldCapExceeded: return "UnfoldCapExceeded";
    case ErrorKind::TemplateMismatch: return "TemplateMismatch";
    case ErrorKind::MatchFailure: return "MatchFailure";
    case ErrorKind::DuplicateRegistration: return "DuplicateRegistration";
    case ErrorKind::BadGoal: return "BadGoal";
    case ErrorKind::VerificationMismatch: return "VerificationMismatch";
  }
  return "EngineError";
}

}  // namespace rru
