#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rru/unfold.hpp"

namespace rru::schemes {

/// Summation: s(A,C) <=> A>V | B is A-V, s(B,D), C is V*A-W+D
/// with integer parameters (V,W); one step maps (V,W) to (2V, 2W+V^2).
Rule step_summation(const Rule& r, VarGen& gen);

/// Naive list reversal: r(A,B) <=> A=E | true, r(C,D), append(D,F,B) where E
/// is an open list of m element variables ending in C and F lists those
/// variables reversed; one step doubles the open list.
Rule step_reversal(const Rule& r, VarGen& gen);

/// Insertion sort in merge form: s(L,S) <=> L=AL | Mergings, s(L1,S1),
/// m(S0,S1,S); one step chains two renamed copies and joins their merge
/// trees, doubling the open list.
Rule step_sorting(const Rule& r, VarGen& gen);

/// The nonterminating inequality chain: p(N) <=> N=\=1,...,N=\=m | B is N-m,
/// p(B); one step doubles the chain. Every unfolded rule stays applicable to
/// p(0), so only the unfold cap stops the unfolder.
Rule step_inequality_chain(const Rule& r, VarGen& gen);

UnfoldingScheme summation_scheme();
UnfoldingScheme reversal_scheme();
UnfoldingScheme sorting_scheme();
UnfoldingScheme inequality_chain_scheme();

/// A built-in example: program text in the rule grammar, its unfolding
/// scheme, and accepted goal-predicate aliases (e.g. sum(N,S) for the s/2
/// rules, mirroring the outer constraint name).
struct Example {
  std::string name;
  const char* program_text;
  UnfoldingScheme scheme;
  std::vector<std::string> goal_aliases;
};

const std::vector<Example>& examples();
const Example* find_example(std::string_view name);

/// Picks the scheme whose rule template matches the program's recursive
/// rule, or nullopt when none does.
std::optional<UnfoldingScheme> detect_scheme(const Program& p);

}  // namespace rru::schemes
