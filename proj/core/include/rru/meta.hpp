#pragma once

#include <span>

#include "rru/interp.hpp"
#include "rru/rule.hpp"
#include "rru/unfold.hpp"

namespace rru {

/// Optimal rule application strategy: walk the ladder once, most-unfolded
/// rule first, trying and applying each rule at most once. A rule whose
/// guard fails is consumed (skipped, never retried); a base-case rule ends
/// the descent. Applied recursive-rule ladder indices are recorded strictly
/// decreasing.
Answer run_unfolded(const Term& goal, const RuleLadder& ladder,
                    const RunLimits& limits, BindingStore& store, VarGen& gen);

/// Variant that accumulates into existing counters (used by the facade to
/// combine unfolder and interpreter stats).
Answer run_unfolded(const Term& goal, const RuleLadder& ladder,
                    const RunLimits& limits, BindingStore& store, VarGen& gen,
                    StepStats stats);

/// The ladder indices of the recursive rules applied, most-unfolded first.
std::vector<std::size_t> count_applications(const Answer& answer);

}  // namespace rru
