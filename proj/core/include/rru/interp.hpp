#pragma once

#include <functional>

#include "rru/rule.hpp"
#include "rru/term.hpp"

namespace rru {

struct RunLimits {
  std::uint64_t max_steps = 10'000'000;
};

/// Fired after each committed rule application (before the computation
/// continues), so tests can probe mid-run state.
struct StepEvent {
  const Rule& rule;
  std::size_t rule_index;  // textual index in the program
  const BindingStore& store;
  const StepStats& stats;
};
using StepHook = std::function<void(const StepEvent&)>;

/// Reference execution of the original program: deterministic top-down
/// committed-choice rule selection, iterative with an explicit continuation
/// stack so recursion depth is bounded by memory, not the host stack.
Answer run_original(const Term& goal, const Program& p, const RunLimits& limits,
                    BindingStore& store, VarGen& gen,
                    const StepHook& hook = {});

/// Number of recursive-rule applications in the (deterministic) computation.
std::uint64_t recursion_depth(const Term& goal, const Program& p,
                              const RunLimits& limits, BindingStore& store,
                              VarGen& gen);

/// Builds an Answer by resolving the goal's free variables.
Answer make_answer(const Term& goal, const BindingStore& store,
                   StepStats stats);

}  // namespace rru
