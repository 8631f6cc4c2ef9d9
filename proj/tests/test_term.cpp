#include "doctest.h"
#include "support/test_support.hpp"

using namespace rru;
using testsupport::TermGen;

namespace {

Term skeleton_var(VarGen& gen) { return gen.fresh(); }

/// Structural-walk oracle: same shape, every variable position in `a` holds
/// a variable in `b`, consistently and freshly renamed.
bool same_skeleton(const Term& a, const Term& b,
                   std::unordered_map<VarId, VarId>& seen) {
  if (a.is_var()) {
    if (!b.is_var()) return false;
    auto [it, inserted] = seen.try_emplace(a.var_id(), b.var_id());
    return it->second == b.var_id();
  }
  if (a.tag() != b.tag()) return false;
  switch (a.tag()) {
    case Term::Tag::Int: return a.int_value() == b.int_value();
    case Term::Tag::Atom: return a.atom_name() == b.atom_name();
    case Term::Tag::Cons:
      return same_skeleton(a.head(), b.head(), seen) &&
             same_skeleton(a.tail(), b.tail(), seen);
    case Term::Tag::Compound: {
      if (a.functor() != b.functor() || a.arity() != b.arity()) return false;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (!same_skeleton(a.arg(i), b.arg(i), seen)) return false;
      return true;
    }
    default: return false;
  }
}

}  // namespace

TEST_CASE("rename_apart on a ground term is the term itself") {
  VarGen gen;
  Term t = Term::integer(7);
  CHECK(rename_apart(t, gen).equals(t));
  CHECK(gen.issued() == 0);
}

TEST_CASE("rename_apart renames consistently with fresh variables") {
  VarGen gen;
  Term n = gen.fresh();
  Term s = gen.fresh();
  Term t = Term::compound("sum", {n, s});
  VarId before = gen.issued();
  Term renamed = rename_apart(t, gen);
  REQUIRE(renamed.is_compound());
  CHECK(renamed.arg(0).is_var());
  CHECK(renamed.arg(1).is_var());
  CHECK(renamed.arg(0).var_id() != n.var_id());
  CHECK(renamed.arg(1).var_id() != s.var_id());
  CHECK(renamed.arg(0).var_id() != renamed.arg(1).var_id());
  CHECK(renamed.arg(0).var_id() >= before);
}

TEST_CASE("rename_apart of an open list keeps the skeleton") {
  VarGen gen;
  Term c = skeleton_var(gen);
  Term a = skeleton_var(gen);
  Term open = Term::cons(c, a);  // [C|A]
  Term renamed = rename_apart(open, gen);
  std::unordered_map<VarId, VarId> seen;
  CHECK(same_skeleton(open, renamed, seen));
  CHECK(renamed.head().var_id() != c.var_id());
  CHECK(renamed.tail().var_id() != a.var_id());
  CHECK(renamed.head().var_id() != renamed.tail().var_id());
}

TEST_CASE("rename_apart keeps repeated variables identified") {
  VarGen gen;
  Term x = gen.fresh();
  Term t = Term::compound("f", {x, x, gen.fresh()});
  Term renamed = rename_apart(t, gen);
  CHECK(renamed.arg(0).var_id() == renamed.arg(1).var_id());
  CHECK(renamed.arg(0).var_id() != renamed.arg(2).var_id());
}

TEST_CASE("unify binds variables to terms") {
  VarGen gen;
  BindingStore store;
  Term n = gen.fresh();
  Term s = gen.fresh();
  Term r = gen.fresh();
  Term a = Term::compound("sum", {n, s});
  Term b = Term::compound("sum", {Term::integer(10), r});
  REQUIRE(unify(a, b, store));
  CHECK(resolve(n, store).int_value() == 10);
  // S and R are aliased either way around.
  CHECK(resolve(s, store).equals(resolve(r, store)));
}

TEST_CASE("unify decomposes list cells") {
  // unify([C,B|D], [3,1,2]): C=3, B=1, D=[2]
  VarGen gen;
  BindingStore store;
  Term c = gen.fresh();
  Term b = gen.fresh();
  Term d = gen.fresh();
  Term pattern = Term::cons(c, Term::cons(b, d));
  Term value = testsupport::int_list({3, 1, 2});
  REQUIRE(unify(pattern, value, store));
  CHECK(resolve(c, store).int_value() == 3);
  CHECK(resolve(b, store).int_value() == 1);
  CHECK(resolve(d, store).equals(testsupport::int_list({2})));
}

TEST_CASE("unify fails on functor clash and restores the store") {
  VarGen gen;
  BindingStore store;
  Term x = gen.fresh();
  Term f = Term::compound("f", {x});
  Term g = Term::compound("g", {x});
  auto mark = store.mark();
  CHECK_FALSE(unify(f, g, store));
  CHECK(store.mark() == mark);
  CHECK(store.size() == 0);
}

TEST_CASE("unify occurs-check rejects cyclic bindings") {
  VarGen gen;
  BindingStore store;
  Term x = gen.fresh();
  Term fx = Term::compound("f", {x});
  CHECK_FALSE(unify(x, fx, store));
  CHECK(store.size() == 0);
}

TEST_CASE("unification symmetry: success flag and resolutions agree") {
  VarGen gen;
  TermGen make(20260810, gen);
  for (int i = 0; i < 300; ++i) {
    Term a = make();
    Term b = make();
    BindingStore ab;
    BindingStore ba;
    bool f1 = unify(a, b, ab);
    bool f2 = unify(b, a, ba);
    CHECK(f1 == f2);
    if (f1) {
      CHECK(resolve(a, ab).equals(resolve(b, ab)));
      CHECK(resolve(a, ba).equals(resolve(b, ba)));
      CHECK(alpha_equal(resolve(a, ab), resolve(a, ba)));
    }
  }
}

TEST_CASE("rollback soundness: mark/unify/rollback leaves resolutions intact") {
  VarGen gen;
  TermGen make(424242, gen);
  for (int i = 0; i < 200; ++i) {
    BindingStore store;
    // some pre-existing bindings
    Term t0 = make();
    Term t1 = make();
    unify(t0, t1, store);
    std::vector<std::pair<VarId, Term>> snapshot;
    for (VarId v = 0; v < gen.issued(); ++v)
      snapshot.emplace_back(v, resolve(Term::var(v), store));
    auto mark = store.mark();
    unify(make(), make(), store);
    store.undo_to(mark);
    for (const auto& [v, t] : snapshot)
      CHECK(resolve(Term::var(v), store).equals(t));
  }
}

TEST_CASE("rename_apart then unify succeeds and binds only fresh variables") {
  VarGen gen;
  TermGen make(777, gen);
  for (int i = 0; i < 200; ++i) {
    Term t = make();
    VarId fresh_floor = gen.issued();
    Term renamed = rename_apart(t, gen);
    BindingStore store;
    REQUIRE(unify(t, renamed, store));
    for (VarId v = 0; v < fresh_floor; ++v) CHECK_FALSE(store.bound(v));
  }
}

TEST_CASE("resolve dereferences chains and is idempotent") {
  VarGen gen;
  BindingStore store;
  Term x = gen.fresh();
  Term y = gen.fresh();
  store.bind(x.var_id(), y);
  store.bind(y.var_id(), Term::integer(5));
  CHECK(resolve(x, store).int_value() == 5);

  Term t = gen.fresh();
  Term xs = Term::cons(gen.fresh(), t);
  store.bind(xs.head().var_id(), Term::integer(1));
  store.bind(t.var_id(), Term::nil());
  Term resolved = resolve(xs, store);
  CHECK(resolved.equals(testsupport::int_list({1})));
  CHECK(resolve(resolved, store).equals(resolved));

  Term z = gen.fresh();
  CHECK(resolve(z, store).equals(z));
}

TEST_CASE("term_size counts nodes with word-sized integer magnitudes") {
  CHECK(term_size(Term::nil()) == 1);
  // [1,2]: two cells, two small ints, nil
  CHECK(term_size(testsupport::int_list({1, 2})) == 5);
  CHECK(term_size(Term::integer(BigInt(1) << 128)) == 3);
  CHECK(term_size(Term::integer(0)) == 1);
  CHECK(term_size(Term::integer(-(BigInt(1) << 64))) == 2);

  VarGen gen;
  TermGen make(99, gen);
  for (int i = 0; i < 100; ++i) {
    Term t = make(4);
    CHECK(term_size(t) == testsupport::ref_term_size(t));
  }
}

TEST_CASE("deep lists do not overflow the host stack") {
  constexpr std::size_t n = 1 << 19;
  Term deep = testsupport::iota_list(n);
  CHECK(term_size(deep) == 2 * n + 1);
  VarGen gen;
  Term renamed = rename_apart(deep, gen);  // ground: shared
  CHECK(renamed.id() == deep.id());
  BindingStore store;
  Term v = gen.fresh();
  REQUIRE(unify(v, deep, store));
  CHECK(resolve(v, store).equals(deep));
}

TEST_CASE("alpha_equal distinguishes structure, ignores naming") {
  VarGen gen;
  Term a = Term::compound("f", {gen.fresh(), gen.fresh()});
  Term b = Term::compound("f", {gen.fresh(), gen.fresh()});
  CHECK(alpha_equal(a, b));
  Term x = gen.fresh();
  Term repeated = Term::compound("f", {x, x});
  CHECK_FALSE(alpha_equal(a, repeated));
  CHECK(alpha_equal(repeated, repeated));
}
