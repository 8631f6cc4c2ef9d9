#pragma once

#include <span>

#include "rru/rule.hpp"
#include "rru/term.hpp"

namespace rru::builtins {

/// True for the registered builtin constraint functors: =/2, is/2, >/2, </2,
/// >=/2, =</2, =\=/2, append/3, m/3, true/0.
bool is_registered(Symbol functor, std::size_t arity);

/// Evaluates a ground arithmetic expression over +, -, * and integer leaves.
/// Throws UnboundVariable if the expression is not ground and UnknownOperator
/// for anything that is not arithmetic.
BigInt eval_arith(const Term& expr, const BindingStore& store);

/// Executes one builtin goal. Failure is a normal outcome (returns false, the
/// store rolled back to the entry mark). Throws InstantiationError when a
/// required argument is insufficiently instantiated.
bool exec_builtin(const Term& goal, BindingStore& store,
                  StepStats* stats = nullptr);

/// Executes goals left to right; on any failure rolls the whole sequence back
/// and returns false. Propagates InstantiationError.
bool check_guard(std::span<const Term> goals, BindingStore& store,
                 StepStats* stats = nullptr);

}  // namespace rru::builtins
