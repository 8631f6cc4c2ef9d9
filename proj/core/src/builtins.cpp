#include "rru/builtins.hpp"

#include <utility>

#include "rru/errors.hpp"

namespace rru::builtins {

namespace {

std::uint64_t int_words(const BigInt& v) {
  if (v == 0) return 1;
  BigInt mag = boost::multiprecision::abs(v);
  return 1 + boost::multiprecision::msb(mag) / 64;
}

void add_work(StepStats* stats, std::uint64_t units) {
  if (stats != nullptr) stats->builtin_work += units;
}

[[noreturn]] void instantiation(const std::string& what) {
  throw EngineError(ErrorKind::InstantiationError, what);
}

/// Proper-list walk for a builtin argument. Returns the (dereferenced)
/// elements; throws InstantiationError when the list ends in an unbound
/// variable, returns nullopt when it ends in any other non-[] term.
std::optional<std::vector<Term>> proper_list(const Term& t,
                                             const BindingStore& store,
                                             const char* who) {
  ListView view = list_view(t, store);
  if (view.tail.is_nil()) {
    for (Term& e : view.elems) e = store.deref(std::move(e));
    return std::move(view.elems);
  }
  if (view.tail.is_var())
    instantiation(std::string(who) + ": open-ended list argument");
  return std::nullopt;
}

const BigInt& require_int(const Term& t, const char* who) {
  if (!t.is_int())
    instantiation(std::string(who) + ": integer expected");
  return t.int_value();
}

}  // namespace

bool is_registered(Symbol functor, std::size_t arity) {
  if (arity == 0) return functor == sym::truth();
  if (arity == 2) {
    return functor == sym::eq() || functor == sym::is() ||
           functor == sym::lt() || functor == sym::gt() ||
           functor == sym::ge() || functor == sym::le() ||
           functor == sym::neq();
  }
  if (arity == 3) {
    return functor == sym::append_sym() || functor == sym::merge_sym();
  }
  return false;
}

BigInt eval_arith(const Term& expr, const BindingStore& store) {
  Term t = store.deref(expr);
  switch (t.tag()) {
    case Term::Tag::Int:
      return t.int_value();
    case Term::Tag::Var:
      throw EngineError(ErrorKind::UnboundVariable,
                        "unbound variable in arithmetic expression");
    case Term::Tag::Compound: {
      Symbol f = t.functor();
      if (t.arity() == 2) {
        if (f == sym::plus())
          return eval_arith(t.arg(0), store) + eval_arith(t.arg(1), store);
        if (f == sym::minus())
          return eval_arith(t.arg(0), store) - eval_arith(t.arg(1), store);
        if (f == sym::times())
          return eval_arith(t.arg(0), store) * eval_arith(t.arg(1), store);
      }
      if (t.arity() == 1 && f == sym::minus())
        return -eval_arith(t.arg(0), store);
      break;
    }
    default:
      break;
  }
  throw EngineError(ErrorKind::UnknownOperator,
                    "not an arithmetic expression");
}

namespace {

BigInt eval_operand(const Term& t, const BindingStore& store) {
  try {
    return eval_arith(t, store);
  } catch (const EngineError& e) {
    if (e.kind() == ErrorKind::UnboundVariable)
      instantiation("comparison argument not ground");
    throw;
  }
}

bool exec_comparison(Symbol f, const Term& goal, BindingStore& store,
                     StepStats* stats) {
  BigInt lhs = eval_operand(goal.arg(0), store);
  BigInt rhs = eval_operand(goal.arg(1), store);
  add_work(stats, std::max(int_words(lhs), int_words(rhs)));
  if (f == sym::lt()) return lhs < rhs;
  if (f == sym::gt()) return lhs > rhs;
  if (f == sym::ge()) return lhs >= rhs;
  if (f == sym::le()) return lhs <= rhs;
  return lhs != rhs;  // =\=
}

bool exec_append(const Term& goal, BindingStore& store, StepStats* stats) {
  auto prefix = proper_list(goal.arg(0), store, "append/3");
  if (!prefix) return false;
  add_work(stats, prefix->size() + 1);
  // The tail is shared, not copied: cost is linear in the first list only.
  Term result = Term::list(*prefix, goal.arg(1));
  return unify(goal.arg(2), result, store,
               stats ? &stats->builtin_work : nullptr);
}

bool exec_merge(const Term& goal, BindingStore& store, StepStats* stats) {
  auto xs = proper_list(goal.arg(0), store, "m/3");
  auto ys = proper_list(goal.arg(1), store, "m/3");
  if (!xs || !ys) return false;
  add_work(stats, xs->size() + ys->size() + 1);
  std::vector<Term> merged;
  merged.reserve(xs->size() + ys->size());
  std::size_t i = 0;
  std::size_t j = 0;
  // Stable: ties take from the first list.
  while (i < xs->size() && j < ys->size()) {
    const BigInt& a = require_int((*xs)[i], "m/3");
    const BigInt& b = require_int((*ys)[j], "m/3");
    if (a <= b) {
      merged.push_back((*xs)[i++]);
    } else {
      merged.push_back((*ys)[j++]);
    }
  }
  for (; i < xs->size(); ++i) merged.push_back((*xs)[i]);
  for (; j < ys->size(); ++j) merged.push_back((*ys)[j]);
  Term result = Term::list(merged, Term::nil());
  return unify(goal.arg(2), result, store,
               stats ? &stats->builtin_work : nullptr);
}

}  // namespace

bool exec_builtin(const Term& g, BindingStore& store, StepStats* stats) {
  Term goal = store.deref(g);
  if (goal.is_var()) instantiation("unbound variable as a goal");
  if (goal.is_int())
    throw EngineError(ErrorKind::UnknownBuiltin, "integer is not a goal");
  Symbol f = goal.functor();
  std::size_t arity = goal.arity();
  if (goal.is_atom() && f == sym::truth()) {
    add_work(stats, 1);
    return true;
  }
  if (arity == 2) {
    if (f == sym::eq())
      return unify(goal.arg(0), goal.arg(1), store,
                   stats ? &stats->builtin_work : nullptr);
    if (f == sym::is()) {
      BigInt value;
      try {
        value = eval_arith(goal.arg(1), store);
      } catch (const EngineError& e) {
        if (e.kind() == ErrorKind::UnboundVariable)
          instantiation("is/2: expression not ground");
        throw;
      }
      add_work(stats, int_words(value));
      return unify(goal.arg(0), Term::integer(std::move(value)), store,
                   stats ? &stats->builtin_work : nullptr);
    }
    if (f == sym::lt() || f == sym::gt() || f == sym::ge() || f == sym::le() ||
        f == sym::neq())
      return exec_comparison(f, goal, store, stats);
  }
  if (arity == 3) {
    if (f == sym::append_sym()) return exec_append(goal, store, stats);
    if (f == sym::merge_sym()) return exec_merge(goal, store, stats);
  }
  throw EngineError(ErrorKind::UnknownBuiltin,
                    f.str() + "/" + std::to_string(arity));
}

bool check_guard(std::span<const Term> goals, BindingStore& store,
                 StepStats* stats) {
  ScopedMark guard(store);
  for (const Term& g : goals) {
    if (!exec_builtin(g, store, stats)) return false;  // guard rolls back
  }
  guard.keep();
  return true;
}

}  // namespace rru::builtins
