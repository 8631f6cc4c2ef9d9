#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rru/rule.hpp"
#include "rru/term.hpp"

namespace rru {

/// A parsed goal plus the named variables it contains, in order of first
/// occurrence (anonymous `_` variables are fresh and unlisted).
struct ParsedGoal {
  Term term;
  std::vector<std::pair<std::string, VarId>> vars;
};

/// Parses a program in the rule grammar:
///
///   rule  := [name '@'] head '<=>' guard '|' body '.'
///
/// Guard and body are comma-separated goals, lists use `[a,b|T]` sugar and
/// `%` starts a comment. The result is validated; the predicate is taken
/// from the first rule. Variables are scoped per rule.
Program parse_program(std::string_view text, VarGen& gen);

/// Parses a single rule (without validation against a program).
Rule parse_rule(std::string_view text, VarGen& gen);

/// Parses a goal such as "sum(100,S)". Capitalized identifiers become fresh
/// variables.
ParsedGoal parse_goal(std::string_view text, VarGen& gen);

}  // namespace rru
