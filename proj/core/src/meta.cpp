#include "rru/meta.hpp"

#include "rru/builtins.hpp"
#include "rru/errors.hpp"
#include "rru/printer.hpp"

namespace rru {

namespace {

struct MipContext {
  const RuleLadder& ladder;
  const RunLimits& limits;
  BindingStore& store;
  VarGen& gen;
  StepStats& stats;
};

void exec_body_goals(const std::vector<Term>& goals, MipContext& ctx) {
  for (const Term& g : goals) {
    if (!builtins::exec_builtin(g, ctx.store, &ctx.stats))
      throw EngineError(ErrorKind::BodyFailed,
                        "body builtin failed: " + to_string(g));
  }
}

// Descent depth is logarithmic in the recursion depth (one level per ladder
// rule), so host-stack recursion is fine here.
void mip(const Term& call, std::size_t from, MipContext& ctx) {
  for (std::size_t i = from; i < ctx.ladder.rules.size(); ++i) {
    const Rule& r = ctx.ladder.rules[i];
    ScopedMark mark(ctx.store);
    Rule instance = rename_rule(r, ctx.gen);
    ++ctx.stats.guard_checks;
    if (!unify(instance.head, call, ctx.store, &ctx.stats.builtin_work) ||
        !builtins::check_guard(instance.guard, ctx.store, &ctx.stats)) {
      mark.rollback();
      continue;  // rule consumed, never retried
    }
    mark.keep();
    if (ctx.stats.rule_applications >= ctx.limits.max_steps)
      throw EngineError(ErrorKind::StepLimitExceeded,
                        "after " + std::to_string(ctx.stats.rule_applications) +
                            " rule applications");
    ++ctx.stats.rule_applications;
    exec_body_goals(instance.body_pre, ctx);
    if (instance.body_rec) {
      if (i < ctx.ladder.recursive_count)
        ctx.stats.applied_rule_indices.push_back(ctx.ladder.index_of(i));
      mip(*instance.body_rec, i + 1, ctx);
    }
    exec_body_goals(instance.body_post, ctx);
    return;
  }
  throw EngineError(ErrorKind::NoRuleApplicable,
                    "ladder exhausted at " +
                        to_string(resolve(call, ctx.store)));
}

}  // namespace

Answer run_unfolded(const Term& goal, const RuleLadder& ladder,
                    const RunLimits& limits, BindingStore& store, VarGen& gen,
                    StepStats stats) {
  MipContext ctx{ladder, limits, store, gen, stats};
  mip(goal, 0, ctx);
  return make_answer(goal, store, std::move(stats));
}

Answer run_unfolded(const Term& goal, const RuleLadder& ladder,
                    const RunLimits& limits, BindingStore& store,
                    VarGen& gen) {
  return run_unfolded(goal, ladder, limits, store, gen, StepStats{});
}

std::vector<std::size_t> count_applications(const Answer& answer) {
  return answer.stats.applied_rule_indices;
}

}  // namespace rru
