#include "doctest.h"
#include "support/test_support.hpp"

using namespace rru;
using rru::builtins::check_guard;
using rru::builtins::eval_arith;
using rru::builtins::exec_builtin;

namespace {

Term parse(const char* text, VarGen& gen) {
  return parse_goal(text, gen).term;
}

}  // namespace

TEST_CASE("eval_arith evaluates +, -, * over integers") {
  VarGen gen;
  BindingStore store;
  CHECK(eval_arith(parse("2*10-1+5", gen), store) == 24);
  CHECK(eval_arith(parse("-3", gen), store) == -3);
  CHECK(eval_arith(parse("-(2+3)", gen), store) == -5);
}

TEST_CASE("eval_arith matches the two-application oracle for the deep rule") {
  // Applying the 64-step summation rule to s(100,S) computes
  // C is 64*A-2016+D at A=100 with D = sum of 1..36; both routes give 5050.
  VarGen gen;
  BindingStore store;
  BigInt d = testsupport::closed_form_sum(36);
  Term expr = parse("64*100-2016+D", gen);
  Term dvar = Term::var(parse_goal("D", gen).term.var_id());
  // rebuild with a bound variable
  Term a = gen.fresh();
  store.bind(a.var_id(), Term::integer(d));
  Term e = Term::compound(
      "+", {Term::compound("-", {parse("64*100", gen), Term::integer(2016)}), a});
  CHECK(eval_arith(e, store) == 4384 + d);
  CHECK(eval_arith(e, store) == testsupport::closed_form_sum(100));
  (void)expr;
  (void)dvar;
}

TEST_CASE("eval_arith rejects unbound variables and unknown operators") {
  VarGen gen;
  BindingStore store;
  Term x = gen.fresh();
  Term e = Term::compound("+", {x, Term::integer(1)});
  CHECK_THROWS_WITH_AS(eval_arith(e, store), doctest::Contains("Unbound"),
                       EngineError);
  CHECK_THROWS_AS(eval_arith(Term::atom("foo"), store), EngineError);
  try {
    eval_arith(Term::compound("mod", {Term::integer(5), Term::integer(2)}),
               store);
    CHECK(false);
  } catch (const EngineError& e2) {
    CHECK(e2.kind() == ErrorKind::UnknownOperator);
  }
}

TEST_CASE("=/2 unifies and is/2 evaluates then unifies") {
  VarGen gen;
  BindingStore store;
  Term x = gen.fresh();
  CHECK(exec_builtin(Term::compound("=", {x, Term::integer(3)}), store));
  CHECK(resolve(x, store).int_value() == 3);
  Term y = gen.fresh();
  CHECK(exec_builtin(
      Term::compound("is", {y, Term::compound("*", {x, Term::integer(4)})}),
      store));
  CHECK(resolve(y, store).int_value() == 12);
  // is/2 with a bound first argument acts as a check
  CHECK(exec_builtin(Term::compound("is", {y, parse("10+2", gen)}), store));
  CHECK_FALSE(exec_builtin(Term::compound("is", {y, parse("10+3", gen)}), store));
}

TEST_CASE("comparisons require ground integers") {
  VarGen gen;
  BindingStore store;
  CHECK(exec_builtin(parse("3 > 2", gen), store));
  CHECK_FALSE(exec_builtin(parse("100 > 128", gen), store));
  CHECK(exec_builtin(parse("2 =< 2", gen), store));
  CHECK(exec_builtin(parse("0 =\\= 1", gen), store));
  CHECK_FALSE(exec_builtin(parse("1 =\\= 1", gen), store));
  Term x = gen.fresh();
  try {
    exec_builtin(Term::compound(">", {x, Term::integer(1)}), store);
    CHECK(false);
  } catch (const EngineError& e) {
    CHECK(e.kind() == ErrorKind::InstantiationError);
  }
}

TEST_CASE("append concatenates with the first list proper") {
  VarGen gen;
  BindingStore store;
  Term d = gen.fresh();
  Term e = gen.fresh();
  Term f = gen.fresh();
  store.bind(d.var_id(), Term::integer(1));
  store.bind(e.var_id(), Term::integer(2));
  Term goal = Term::compound(
      "append", {Term::list({d}), Term::list({e}), f});
  REQUIRE(exec_builtin(goal, store));
  CHECK(resolve(f, store).equals(testsupport::int_list({1, 2})));

  // only the first argument must be proper: the tail may stay open
  Term open_tail = gen.fresh();
  Term g = gen.fresh();
  REQUIRE(exec_builtin(
      Term::compound("append",
                     {testsupport::int_list({9}), open_tail, g}),
      store));
  Term resolved = resolve(g, store);
  CHECK(resolved.is_cons());
  CHECK(resolved.head().int_value() == 9);
  CHECK(resolved.tail().is_var());

  // an open first argument is an instantiation error
  Term h = gen.fresh();
  CHECK_THROWS_AS(
      exec_builtin(Term::compound("append", {Term::cons(Term::integer(1),
                                                        gen.fresh()),
                                             Term::nil(), h}),
                   store),
      EngineError);
}

TEST_CASE("m/3 merges sorted lists, stable on ties") {
  VarGen gen;
  BindingStore store;
  Term z = gen.fresh();
  REQUIRE(exec_builtin(Term::compound("m", {testsupport::int_list({1, 4}),
                                            testsupport::int_list({2, 3}), z}),
                       store));
  CHECK(resolve(z, store).equals(testsupport::int_list({1, 2, 3, 4})));
}

TEST_CASE("m/3 agrees with the reference merge on random sorted inputs") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 100; ++round) {
    std::vector<long long> a;
    std::vector<long long> b;
    std::uniform_int_distribution<int> len(0, 12);
    std::uniform_int_distribution<long long> val(-50, 50);
    for (int i = len(rng); i > 0; --i) a.push_back(val(rng));
    for (int i = len(rng); i > 0; --i) b.push_back(val(rng));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<long long> expected = testsupport::ref_merge(a, b);

    VarGen gen;
    BindingStore store;
    Term z = gen.fresh();
    REQUIRE(exec_builtin(Term::compound("m", {testsupport::int_list(a),
                                              testsupport::int_list(b), z}),
                         store));
    CHECK(resolve(z, store).equals(testsupport::int_list(expected)));
    CHECK(expected.size() == a.size() + b.size());
  }
}

TEST_CASE("append associativity") {
  // append(X,Y,T), append(T,Z,R) gives the same R as
  // append(Y,Z,T2), append(X,T2,R)
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(0, 8);
  std::uniform_int_distribution<long long> val(0, 9);
  for (int round = 0; round < 100; ++round) {
    std::vector<long long> xs;
    std::vector<long long> ys;
    std::vector<long long> zs;
    for (int i = len(rng); i > 0; --i) xs.push_back(val(rng));
    for (int i = len(rng); i > 0; --i) ys.push_back(val(rng));
    for (int i = len(rng); i > 0; --i) zs.push_back(val(rng));

    VarGen gen;
    BindingStore store;
    Term t = gen.fresh();
    Term r1 = gen.fresh();
    REQUIRE(exec_builtin(Term::compound("append", {testsupport::int_list(xs),
                                                   testsupport::int_list(ys), t}),
                         store));
    REQUIRE(exec_builtin(
        Term::compound("append", {t, testsupport::int_list(zs), r1}), store));

    Term t2 = gen.fresh();
    Term r2 = gen.fresh();
    REQUIRE(exec_builtin(Term::compound("append", {testsupport::int_list(ys),
                                                   testsupport::int_list(zs),
                                                   t2}),
                         store));
    REQUIRE(exec_builtin(
        Term::compound("append", {testsupport::int_list(xs), t2, r2}), store));
    CHECK(resolve(r1, store).equals(resolve(r2, store)));
  }
}

TEST_CASE("check_guard executes left-to-right with all-or-nothing rollback") {
  VarGen gen;
  BindingStore store;
  Term a = gen.fresh();
  store.bind(a.var_id(), Term::integer(3));

  std::vector<Term> ok = {Term::compound(">", {a, Term::integer(1)})};
  CHECK(check_guard(ok, store));

  // [A=[C,B|D]] with A bound to [5] fails leaving the store unchanged
  BindingStore store2;
  Term a2 = gen.fresh();
  store2.bind(a2.var_id(), testsupport::int_list({5}));
  Term c = gen.fresh();
  Term b = gen.fresh();
  Term d = gen.fresh();
  std::vector<Term> guard = {
      Term::compound("=", {a2, Term::cons(c, Term::cons(b, d))})};
  auto mark = store2.mark();
  CHECK_FALSE(check_guard(guard, store2));
  CHECK(store2.mark() == mark);

  // [A>2, A>4] with A=3: the first goal binds nothing, but a failure in the
  // middle must leave no residual bindings either
  Term x = gen.fresh();
  std::vector<Term> guard2 = {Term::compound("=", {x, Term::integer(1)}),
                              Term::compound(">", {a, Term::integer(4)})};
  auto mark2 = store.mark();
  CHECK_FALSE(check_guard(guard2, store));
  CHECK(store.mark() == mark2);
  CHECK_FALSE(store.bound(x.var_id()));
}

TEST_CASE("guard purity on random pairs") {
  VarGen gen;
  testsupport::TermGen make(31337, gen);
  for (int i = 0; i < 200; ++i) {
    BindingStore store;
    Term t0 = make();
    Term t1 = make();
    unify(t0, t1, store);
    std::vector<std::pair<VarId, Term>> snapshot;
    for (VarId v = 0; v < gen.issued(); ++v)
      snapshot.emplace_back(v, resolve(Term::var(v), store));
    std::vector<Term> guard = {Term::compound("=", {make(), make()}),
                               Term::atom("true"),
                               Term::compound("=", {Term::integer(1),
                                                    Term::integer(2)})};
    CHECK_FALSE(check_guard(guard, store));  // last goal always fails
    for (const auto& [v, t] : snapshot)
      CHECK(resolve(Term::var(v), store).equals(t));
  }
}
