#include "rru/engine.hpp"

#include "rru/errors.hpp"
#include "rru/printer.hpp"

namespace rru {

Registration& Engine::register_recursion(Program program,
                                         UnfoldingScheme scheme,
                                         EngineCaps caps) {
  validate_program(program);
  if (scheme.predicate != program.predicate || scheme.arity != program.arity)
    throw EngineError(ErrorKind::InvalidProgram,
                      "scheme is for " + scheme.predicate.str() + "/" +
                          std::to_string(scheme.arity) + ", program defines " +
                          program.predicate.str() + "/" +
                          std::to_string(program.arity));
  auto key = std::make_pair(program.predicate.id(), program.arity);
  if (regs_.contains(key))
    throw EngineError(ErrorKind::DuplicateRegistration,
                      program.predicate.str() + "/" +
                          std::to_string(program.arity));
  Registration reg;
  reg.cache.rules = program.rules;
  for (const Rule& r : reg.cache.rules)
    if (r.recursive()) ++reg.cache.recursive_count;
  reg.program = std::move(program);
  reg.scheme = std::move(scheme);
  reg.caps = caps;
  return regs_.emplace(key, std::move(reg)).first->second;
}

const Registration* Engine::find(Symbol predicate, std::size_t arity) const {
  auto it = regs_.find({predicate.id(), arity});
  return it == regs_.end() ? nullptr : &it->second;
}

Registration& Engine::require(const Term& goal) {
  if (!goal.is_compound())
    throw EngineError(ErrorKind::BadGoal, "goal must be a compound term");
  auto it = regs_.find({goal.functor().id(), goal.arity()});
  if (it == regs_.end())
    throw EngineError(ErrorKind::BadGoal,
                      "no registration for " + goal.functor().str() + "/" +
                          std::to_string(goal.arity()));
  return it->second;
}

RuleLadder Engine::prepare(const Term& goal, const CallOptions& opts,
                           StepStats& stats) {
  Registration& reg = require(goal);
  std::uint64_t cap = opts.unfold_cap.value_or(reg.caps.unfold_cap);
  BindingStore store;  // scratch only: applicability checks roll back

  if (!opts.use_cache)
    return unfold_runtime(goal, reg.program, reg.scheme, cap, store, gen_,
                          stats);

  // Extend the cached ladder while its most-unfolded rule still accepts the
  // goal; the overshoot rule (first inapplicable) is not retained.
  RuleLadder& cache = reg.cache;
  std::uint64_t generated = 0;
  while (cache.front().recursive() &&
         applicable(cache.front(), goal, store, gen_, &stats)) {
    if (generated >= cap)
      throw EngineError(ErrorKind::UnfoldCapExceeded,
                        "more than " + std::to_string(cap) +
                            " rules generated for " + to_string(goal));
    cache.rules.insert(cache.rules.begin(),
                       reg.scheme.step(cache.front(), gen_));
    ++cache.recursive_count;
    ++generated;
  }
  if (generated > 0) {
    cache.rules.erase(cache.rules.begin());
    --cache.recursive_count;
    --generated;
  }
  stats.rules_generated += generated;
  stats.cache_extended = generated > 0;

  // The applicable suffix: start at the first rule whose guard accepts the
  // goal (linear scan from the most-unfolded rule, like the interpreter's
  // own trying order).
  std::size_t start = 0;
  while (start < cache.rules.size() &&
         !applicable(cache.rules[start], goal, store, gen_, &stats))
    ++start;
  RuleLadder suffix;
  suffix.rules.assign(cache.rules.begin() + static_cast<std::ptrdiff_t>(start),
                      cache.rules.end());
  suffix.recursive_count =
      cache.recursive_count > start ? cache.recursive_count - start : 0;
  return suffix;
}

Answer Engine::call(const Term& goal, const CallOptions& opts) {
  Registration& reg = require(goal);
  RunLimits limits{opts.max_steps.value_or(reg.caps.max_steps)};
  StepStats stats;
  RuleLadder ladder = prepare(goal, opts, stats);
  BindingStore store;
  return run_unfolded(goal, ladder, limits, store, gen_, std::move(stats));
}

Answer Engine::call_original(const Term& goal, const CallOptions& opts) {
  Registration& reg = require(goal);
  RunLimits limits{opts.max_steps.value_or(reg.caps.max_steps)};
  BindingStore store;
  return run_original(goal, reg.program, limits, store, gen_);
}

}  // namespace rru
