#include "rru/unfold.hpp"

#include <deque>

#include "rru/builtins.hpp"
#include "rru/errors.hpp"

namespace rru {

bool applicable(const Rule& r, const Term& goal, BindingStore& store,
                VarGen& gen, StepStats* stats) {
  ScopedMark scratch(store);
  std::unordered_map<VarId, VarId> mapping;
  Term head = rename_apart(r.head, gen, mapping);
  if (stats != nullptr) ++stats->guard_checks;
  if (!unify(head, goal, store, stats ? &stats->builtin_work : nullptr))
    return false;
  std::vector<Term> guard;
  guard.reserve(r.guard.size());
  for (const Term& g : r.guard) guard.push_back(rename_apart(g, gen, mapping));
  return builtins::check_guard(guard, store, stats);
  // scratch rolls everything back on scope exit
}

RuleLadder unfold_runtime(const Term& goal, const Program& p,
                          const UnfoldingScheme& scheme, std::uint64_t cap,
                          BindingStore& store, VarGen& gen, StepStats& stats) {
  std::deque<Rule> rules(p.rules.begin(), p.rules.end());
  std::uint64_t generated = 0;
  while (applicable(rules.front(), goal, store, gen, &stats)) {
    if (generated >= cap)
      throw EngineError(ErrorKind::UnfoldCapExceeded,
                        "more than " + std::to_string(cap) +
                            " rules generated for " + scheme.predicate.str() +
                            "/" + std::to_string(scheme.arity));
    rules.push_front(scheme.step(rules.front(), gen));
    ++generated;
  }
  rules.pop_front();  // the first inapplicable rule is discarded
  stats.rules_generated += generated > 0 ? generated - 1 : 0;

  RuleLadder ladder;
  ladder.rules.assign(rules.begin(), rules.end());
  for (const Rule& r : ladder.rules)
    if (r.recursive()) ++ladder.recursive_count;
  return ladder;
}

Rule syntactic_unfold(const Rule& r, VarGen& gen) {
  if (!r.body_rec)
    throw EngineError(ErrorKind::MatchFailure, "rule has no recursive call");
  Rule copy = rename_rule(r, gen);

  // Match the copy's head syntactically against the recursive call; the head
  // arguments of a recursive rule are distinct variables, so the match is a
  // substitution of those variables.
  const Term& call = *r.body_rec;
  if (!copy.head.is_compound() || copy.head.functor() != call.functor() ||
      copy.head.arity() != call.arity())
    throw EngineError(ErrorKind::MatchFailure,
                      "recursive call does not match the copy's head");
  std::unordered_map<VarId, Term> theta;
  for (std::size_t i = 0; i < copy.head.arity(); ++i) {
    const Term& hv = copy.head.arg(i);
    if (!hv.is_var())
      throw EngineError(ErrorKind::MatchFailure,
                        "copy head argument is not a variable");
    auto [it, inserted] = theta.try_emplace(hv.var_id(), call.arg(i));
    if (!inserted && !it->second.equals(call.arg(i)))
      throw EngineError(ErrorKind::MatchFailure,
                        "conflicting match for a repeated head variable");
  }

  Rule out;
  out.head = r.head;
  out.guard = r.guard;
  for (const Term& g : copy.guard) out.guard.push_back(substitute(g, theta));
  out.body_pre = r.body_pre;
  out.body_pre.push_back(
      Term::compound(sym::eq(), {call, substitute(copy.head, theta)}));
  for (const Term& g : copy.body_pre)
    out.body_pre.push_back(substitute(g, theta));
  out.body_rec = substitute(*copy.body_rec, theta);
  for (const Term& g : copy.body_post)
    out.body_post.push_back(substitute(g, theta));
  for (const Term& g : r.body_post) out.body_post.push_back(g);
  return out;
}

}  // namespace rru
