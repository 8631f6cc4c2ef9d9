#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rru/term.hpp"

namespace rru {

/// A single-headed committed-choice rule with a three-part body: builtins
/// before the recursive call, the optional recursive call, builtins after.
/// Base-case rules have no recursive call.
struct Rule {
  std::optional<std::string> name;
  Term head;
  std::vector<Term> guard;
  std::vector<Term> body_pre;
  std::optional<Term> body_rec;
  std::vector<Term> body_post;

  bool recursive() const { return body_rec.has_value(); }
};

/// The rules defining one predicate: the recursive rule first, followed by
/// the base-case rule(s).
struct Program {
  Symbol predicate;
  std::size_t arity = 0;
  std::vector<Rule> rules;

  const Rule& recursive_rule() const { return rules.front(); }
};

/// Execution counters. `builtin_work` accumulates term-size units of the
/// work done by builtin evaluation; `applied_rule_indices` records, for
/// meta-interpreter runs, the ladder index of each applied recursive rule
/// (index i covers 2^i original steps).
struct StepStats {
  std::uint64_t rule_applications = 0;
  std::uint64_t rules_generated = 0;
  std::uint64_t guard_checks = 0;
  std::uint64_t builtin_work = 0;
  std::vector<std::size_t> applied_rule_indices;
  bool cache_extended = false;
};

/// Final state of a computation: the goal's variables resolved to ground
/// terms, plus the counters.
struct Answer {
  std::vector<std::pair<VarId, Term>> bindings;
  StepStats stats;
};

/// Checks all Rule/Program invariants; throws EngineError with kind
/// MultipleRecursiveRules, HeadNotVariables, UnknownBuiltin or
/// InvalidProgram on violation.
void validate_program(const Program& p);

/// Non-throwing variant; stores the diagnostic on failure.
bool try_validate_program(const Program& p, std::string* diagnostic);

/// One consistent renaming of every part of the rule.
Rule rename_rule(const Rule& r, VarGen& gen);

/// Alpha-equivalence of whole rules (one variable mapping across all parts).
bool alpha_equal(const Rule& a, const Rule& b);

}  // namespace rru
