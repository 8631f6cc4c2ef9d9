#include "rru/interp.hpp"

#include "rru/builtins.hpp"
#include "rru/errors.hpp"
#include "rru/printer.hpp"

namespace rru {

namespace {

void exec_body_goals(const std::vector<Term>& goals, BindingStore& store,
                     StepStats& stats) {
  for (const Term& g : goals) {
    if (!builtins::exec_builtin(g, store, &stats))
      throw EngineError(ErrorKind::BodyFailed,
                        "body builtin failed: " + to_string(g));
  }
}

}  // namespace

Answer make_answer(const Term& goal, const BindingStore& store,
                   StepStats stats) {
  Answer answer;
  answer.stats = std::move(stats);
  for (VarId v : free_vars(goal))
    answer.bindings.emplace_back(v, resolve(Term::var(v), store));
  return answer;
}

Answer run_original(const Term& goal, const Program& p, const RunLimits& limits,
                    BindingStore& store, VarGen& gen, const StepHook& hook) {
  StepStats stats;
  std::vector<std::vector<Term>> pending;  // continuation stack of post goals
  Term call = goal;
  for (;;) {
    if (stats.rule_applications >= limits.max_steps)
      throw EngineError(ErrorKind::StepLimitExceeded,
                        "after " + std::to_string(stats.rule_applications) +
                            " rule applications");
    Rule instance;
    std::size_t applied_index = p.rules.size();
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
      ScopedMark mark(store);
      Rule candidate = rename_rule(p.rules[i], gen);
      ++stats.guard_checks;
      if (unify(candidate.head, call, store, &stats.builtin_work) &&
          builtins::check_guard(candidate.guard, store, &stats)) {
        mark.keep();  // commit
        instance = std::move(candidate);
        applied_index = i;
        break;
      }
    }
    if (applied_index == p.rules.size())
      throw EngineError(ErrorKind::NoRuleApplicable,
                        "no rule applies to " + to_string(resolve(call, store)));
    ++stats.rule_applications;
    exec_body_goals(instance.body_pre, store, stats);
    if (hook) hook({p.rules[applied_index], applied_index, store, stats});
    if (instance.body_rec) {
      pending.push_back(std::move(instance.body_post));
      call = *instance.body_rec;
    } else {
      exec_body_goals(instance.body_post, store, stats);
      break;
    }
  }
  while (!pending.empty()) {
    exec_body_goals(pending.back(), store, stats);
    pending.pop_back();
  }
  return make_answer(goal, store, std::move(stats));
}

std::uint64_t recursion_depth(const Term& goal, const Program& p,
                              const RunLimits& limits, BindingStore& store,
                              VarGen& gen) {
  std::uint64_t depth = 0;
  run_original(goal, p, limits, store, gen, [&depth](const StepEvent& ev) {
    if (ev.rule.recursive()) ++depth;
  });
  return depth;
}

}  // namespace rru
