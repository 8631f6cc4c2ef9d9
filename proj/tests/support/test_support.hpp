#pragma once

#include <random>
#include <vector>

#include "rru/builtins.hpp"
#include "rru/engine.hpp"
#include "rru/errors.hpp"
#include "rru/interp.hpp"
#include "rru/meta.hpp"
#include "rru/parser.hpp"
#include "rru/printer.hpp"
#include "rru/rule.hpp"
#include "rru/schemes.hpp"
#include "rru/term.hpp"
#include "rru/unfold.hpp"

namespace testsupport {

struct Fixture {
  rru::VarGen gen;
  rru::Program program;
  rru::UnfoldingScheme scheme;
};

inline Fixture make_fixture(const char* example_name) {
  const rru::schemes::Example* ex = rru::schemes::find_example(example_name);
  REQUIRE(ex != nullptr);
  Fixture f;
  f.program = rru::parse_program(ex->program_text, f.gen);
  f.scheme = ex->scheme;
  return f;
}

inline rru::Term int_list(const std::vector<long long>& values) {
  std::vector<rru::Term> elems;
  elems.reserve(values.size());
  for (long long v : values) elems.push_back(rru::Term::integer(v));
  return rru::Term::list(elems, rru::Term::nil());
}

inline rru::Term iota_list(std::size_t n) {
  std::vector<rru::Term> elems;
  elems.reserve(n);
  for (std::size_t i = 1; i <= n; ++i)
    elems.push_back(rru::Term::integer(rru::BigInt(i)));
  return rru::Term::list(elems, rru::Term::nil());
}

inline rru::Term shuffled_list(std::size_t n, std::mt19937_64& rng) {
  std::vector<rru::Term> elems;
  elems.reserve(n);
  for (std::size_t i = 1; i <= n; ++i)
    elems.push_back(rru::Term::integer(rru::BigInt(i)));
  std::shuffle(elems.begin(), elems.end(), rng);
  return rru::Term::list(elems, rru::Term::nil());
}

/// Goal f(input, Out) with a fresh output variable; returns the goal and the
/// output variable id.
inline std::pair<rru::Term, rru::VarId> make_goal(const Fixture& f,
                                                  rru::Term input,
                                                  rru::VarGen& gen) {
  rru::VarId out = gen.fresh_id();
  return {rru::Term::compound(f.program.predicate,
                              {std::move(input), rru::Term::var(out)}),
          out};
}

inline rru::Term answer_value(const rru::Answer& answer, rru::VarId var) {
  for (const auto& [v, t] : answer.bindings)
    if (v == var) return t;
  REQUIRE(false);
  return rru::Term();
}

/// Applies one rule to a call in the given store: rename, unify the head,
/// check the guard, execute the pre-call builtins. Returns the instantiated
/// recursive call (if any) and the pending post goals; nullopt when the rule
/// does not apply.
struct OneApplication {
  std::optional<rru::Term> rec;
  std::vector<rru::Term> post;
};

inline std::optional<OneApplication> apply_rule_once(const rru::Rule& r,
                                                     const rru::Term& call,
                                                     rru::BindingStore& store,
                                                     rru::VarGen& gen) {
  rru::ScopedMark mark(store);
  rru::Rule instance = rru::rename_rule(r, gen);
  if (!rru::unify(instance.head, call, store) ||
      !rru::builtins::check_guard(instance.guard, store))
    return std::nullopt;
  mark.keep();
  for (const rru::Term& g : instance.body_pre)
    REQUIRE(rru::builtins::exec_builtin(g, store));
  OneApplication out;
  out.rec = instance.body_rec;
  out.post = instance.body_post;
  return out;
}

/// Finishes a partially applied computation with the original program: runs
/// the pending recursive call under run_original in the same store, then the
/// pending post goals innermost-first.
inline void finish_with_original(
    const std::vector<std::vector<rru::Term>>& pending_posts,
    const std::optional<rru::Term>& rec, const rru::Program& p,
    rru::BindingStore& store, rru::VarGen& gen) {
  if (rec) {
    rru::RunLimits limits;
    rru::run_original(*rec, p, limits, store, gen);
  }
  for (auto it = pending_posts.rbegin(); it != pending_posts.rend(); ++it)
    for (const rru::Term& g : *it) REQUIRE(rru::builtins::exec_builtin(g, store));
}

// ---------------------------------------------------------------------------
// Independent oracles (never routed through the engine implementation)

inline std::vector<long long> ref_merge(std::vector<long long> a,
                                        std::vector<long long> b) {
  std::vector<long long> out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline rru::BigInt closed_form_sum(const rru::BigInt& n) {
  return n * (n + 1) / 2;
}

/// Node-count oracle for term_size: plain recursion, counting an integer as
/// 1 + floor(log2 |v|)/64 extra words.
inline std::uint64_t ref_term_size(const rru::Term& t) {
  switch (t.tag()) {
    case rru::Term::Tag::Int: {
      const rru::BigInt& v = t.int_value();
      if (v == 0) return 1;
      rru::BigInt mag = boost::multiprecision::abs(v);
      return 1 + boost::multiprecision::msb(mag) / 64;
    }
    case rru::Term::Tag::Cons:
      return 1 + ref_term_size(t.head()) + ref_term_size(t.tail());
    case rru::Term::Tag::Compound: {
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < t.arity(); ++i)
        total += ref_term_size(t.arg(i));
      return total;
    }
    default:
      return 1;
  }
}

/// Random term generator for property tests: bounded depth, a small pool of
/// variables so repeated variables occur.
class TermGen {
 public:
  TermGen(std::uint64_t seed, rru::VarGen& gen) : rng_(seed), gen_(gen) {
    for (int i = 0; i < 6; ++i) pool_.push_back(gen_.fresh());
  }

  rru::Term operator()(int depth = 3) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 2);
    switch (pick(rng_)) {
      case 0:
        return pool_[std::uniform_int_distribution<std::size_t>(
            0, pool_.size() - 1)(rng_)];
      case 1:
        return rru::Term::integer(
            std::uniform_int_distribution<long long>(-99, 99)(rng_));
      case 2: {
        static const char* atoms[] = {"a", "b", "c", "[]"};
        return rru::Term::atom(
            atoms[std::uniform_int_distribution<int>(0, 3)(rng_)]);
      }
      case 3:
        return rru::Term::cons((*this)(depth - 1), (*this)(depth - 1));
      default: {
        static const char* functors[] = {"f", "g", "h"};
        std::size_t arity = std::uniform_int_distribution<std::size_t>(1, 3)(rng_);
        std::vector<rru::Term> args;
        for (std::size_t i = 0; i < arity; ++i) args.push_back((*this)(depth - 1));
        return rru::Term::compound(
            functors[std::uniform_int_distribution<int>(0, 2)(rng_)],
            std::move(args));
      }
    }
  }

 private:
  std::mt19937_64 rng_;
  rru::VarGen& gen_;
  std::vector<rru::Term> pool_;
};

}  // namespace testsupport
