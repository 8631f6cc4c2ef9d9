#pragma once

#include <functional>
#include <string>

#include "rru/rule.hpp"
#include "rru/term.hpp"

namespace rru {

/// Per-recursion function from a rule to its simplified self-unfolding.
/// `step` must preserve the Rule invariants and strengthen the guard on the
/// scheme's size argument (doubled threshold / doubled open-list length).
struct UnfoldingScheme {
  Symbol predicate;
  std::size_t arity = 0;
  std::function<Rule(const Rule&, VarGen&)> step;
  std::string template_doc;
};

/// Ordered rule list produced by the runtime unfolder: most-unfolded rule
/// first, the base-case rule(s) last. The recursive rule at position p covers
/// 2^(recursive_count-1-p) steps of the original recursion.
struct RuleLadder {
  std::vector<Rule> rules;
  std::size_t recursive_count = 0;

  std::size_t index_of(std::size_t pos) const {
    return recursive_count - 1 - pos;
  }
  const Rule& front() const { return rules.front(); }
  bool empty() const { return rules.empty(); }
  std::size_t size() const { return rules.size(); }
};

/// Checks whether the rule applies to the goal: renames head and guard apart,
/// unifies the head copy with the goal in a scratch region and runs the guard.
/// All scratch bindings are rolled back regardless of the outcome, so the
/// goal is never mutated.
bool applicable(const Rule& r, const Term& goal, BindingStore& store,
                VarGen& gen, StepStats* stats = nullptr);

/// Runtime repeated unfolding: starting from [recursive rule, base rules],
/// repeatedly prepends the scheme's unfolding of the head rule while that
/// head rule is applicable to the goal; the first inapplicable rule is
/// discarded. `stats.rules_generated` counts the unfolded rules retained in
/// the returned ladder. Throws UnfoldCapExceeded when more than `cap` rules
/// are generated.
RuleLadder unfold_runtime(const Term& goal, const Program& p,
                          const UnfoldingScheme& scheme, std::uint64_t cap,
                          BindingStore& store, VarGen& gen, StepStats& stats);

/// Restricted syntactic self-unfold: unfolds a linear direct recursive rule
/// with a renamed copy of itself, emitting the unsimplified rule with the
/// explicit connecting equality. Used as a testing oracle; no simplification
/// is performed and the entailment side conditions are not decided.
Rule syntactic_unfold(const Rule& r, VarGen& gen);

}  // namespace rru
