#pragma once

#include <map>
#include <optional>

#include "rru/interp.hpp"
#include "rru/meta.hpp"
#include "rru/rule.hpp"
#include "rru/unfold.hpp"

namespace rru {

struct EngineCaps {
  std::uint64_t unfold_cap = 4096;
  std::uint64_t max_steps = 10'000'000;
};

struct CallOptions {
  bool use_cache = true;
  std::optional<std::uint64_t> max_steps;
  std::optional<std::uint64_t> unfold_cap;
};

/// A registered recursion: its program, unfolding scheme, caps and the
/// longest rule ladder built so far. Extending the cache only prepends
/// more-unfolded rules; unfolded rules are generic, so any later call can
/// reuse them.
struct Registration {
  Program program;
  UnfoldingScheme scheme;
  EngineCaps caps;
  RuleLadder cache;
};

/// Entry point for runtime-unfolded execution: answers a call by unfolding
/// (or reusing/extending the cached ladder) and then meta-interpreting the
/// applicable suffix. Single-threaded; use one engine per thread.
class Engine {
 public:
  VarGen& gen() { return gen_; }

  Registration& register_recursion(Program program, UnfoldingScheme scheme,
                                   EngineCaps caps = {});

  Answer call(const Term& goal, const CallOptions& opts = {});

  /// Unfolding phase only: builds (or extends and reuses) the ladder and
  /// returns the suffix applicable to the goal. `call` is prepare followed
  /// by run_unfolded; benchmarks time the two phases separately.
  RuleLadder prepare(const Term& goal, const CallOptions& opts,
                     StepStats& stats);

  /// Baseline execution of a registered program (no unfolding).
  Answer call_original(const Term& goal, const CallOptions& opts = {});

  const Registration* find(Symbol predicate, std::size_t arity) const;

 private:
  Registration& require(const Term& goal);

  VarGen gen_;
  std::map<std::pair<std::uint32_t, std::size_t>, Registration> regs_;
};

}  // namespace rru
