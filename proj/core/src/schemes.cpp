#include "rru/schemes.hpp"

#include <unordered_set>

#include "rru/errors.hpp"
#include "rru/parser.hpp"

namespace rru::schemes {

namespace {

[[noreturn]] void mismatch(const char* scheme, const std::string& what) {
  throw EngineError(ErrorKind::TemplateMismatch,
                    std::string(scheme) + ": " + what);
}

bool same_var(const Term& t, const Term& v) {
  return t.is_var() && v.is_var() && t.var_id() == v.var_id();
}

bool is_bin(const Term& t, Symbol f) {
  return t.is_compound() && t.arity() == 2 && t.functor() == f;
}

/// Open list of at least one element variable ending in a variable; all
/// variables distinct.
struct OpenList {
  std::vector<Term> elems;
  Term tail;
};

std::optional<OpenList> match_open_var_list(const Term& t) {
  ListView view = list_view(t);
  if (view.elems.empty() || !view.tail.is_var()) return std::nullopt;
  std::unordered_set<VarId> seen{view.tail.var_id()};
  for (const Term& e : view.elems) {
    if (!e.is_var() || !seen.insert(e.var_id()).second) return std::nullopt;
  }
  return OpenList{std::move(view.elems), view.tail};
}

// -- summation ---------------------------------------------------------------

struct SummationParts {
  Term in, out;  // head variables A, C
  BigInt v, w;
};

SummationParts match_summation(const Rule& r) {
  const char* who = "summation scheme";
  if (!r.head.is_compound() || r.head.arity() != 2 || !r.head.arg(0).is_var() ||
      !r.head.arg(1).is_var() ||
      r.head.arg(0).var_id() == r.head.arg(1).var_id())
    mismatch(who, "head is not f(A,C) with distinct variables");
  SummationParts parts;
  parts.in = r.head.arg(0);
  parts.out = r.head.arg(1);

  if (r.guard.size() != 1 || !is_bin(r.guard[0], sym::gt()) ||
      !same_var(r.guard[0].arg(0), parts.in) || !r.guard[0].arg(1).is_int())
    mismatch(who, "guard is not A>V with integer V");
  parts.v = r.guard[0].arg(1).int_value();

  if (r.body_pre.size() != 1 || !is_bin(r.body_pre[0], sym::is()))
    mismatch(who, "body does not start with B is A-V");
  const Term& sub = r.body_pre[0].arg(1);
  if (!r.body_pre[0].arg(0).is_var() || !is_bin(sub, sym::minus()) ||
      !same_var(sub.arg(0), parts.in) || !sub.arg(1).is_int() ||
      sub.arg(1).int_value() != parts.v)
    mismatch(who, "body does not start with B is A-V");
  const Term& next_in = r.body_pre[0].arg(0);

  if (!r.body_rec || r.body_rec->arity() != 2 ||
      !same_var(r.body_rec->arg(0), next_in) || !r.body_rec->arg(1).is_var())
    mismatch(who, "recursive call is not f(B,D)");
  const Term& next_out = r.body_rec->arg(1);

  // C is V*A-W+D
  if (r.body_post.size() != 1 || !is_bin(r.body_post[0], sym::is()) ||
      !same_var(r.body_post[0].arg(0), parts.out))
    mismatch(who, "body does not end with C is V*A-W+D");
  const Term& expr = r.body_post[0].arg(1);
  if (!is_bin(expr, sym::plus()) || !same_var(expr.arg(1), next_out))
    mismatch(who, "body does not end with C is V*A-W+D");
  const Term& diff = expr.arg(0);
  if (!is_bin(diff, sym::minus()) || !diff.arg(1).is_int())
    mismatch(who, "body does not end with C is V*A-W+D");
  parts.w = diff.arg(1).int_value();
  const Term& prod = diff.arg(0);
  if (!is_bin(prod, sym::times()) || !prod.arg(0).is_int() ||
      prod.arg(0).int_value() != parts.v || !same_var(prod.arg(1), parts.in))
    mismatch(who, "body does not end with C is V*A-W+D");
  return parts;
}

// -- reversal -----------------------------------------------------------------

struct ReversalParts {
  OpenList open;             // guard open list, tail is the recursive input
  std::vector<Term> rev;     // element variables reversed (append's list)
};

ReversalParts match_reversal(const Rule& r) {
  const char* who = "reversal scheme";
  if (!r.head.is_compound() || r.head.arity() != 2 || !r.head.arg(0).is_var() ||
      !r.head.arg(1).is_var() ||
      r.head.arg(0).var_id() == r.head.arg(1).var_id())
    mismatch(who, "head is not f(A,B) with distinct variables");

  if (r.guard.size() != 1 || !is_bin(r.guard[0], sym::eq()) ||
      !same_var(r.guard[0].arg(0), r.head.arg(0)))
    mismatch(who, "guard is not A=E");
  auto open = match_open_var_list(r.guard[0].arg(1));
  if (!open) mismatch(who, "guard list is not an open list of variables");

  if (!r.body_pre.empty()) mismatch(who, "no builtins expected before the call");
  if (!r.body_rec || r.body_rec->arity() != 2 ||
      !same_var(r.body_rec->arg(0), open->tail) || !r.body_rec->arg(1).is_var())
    mismatch(who, "recursive call is not f(C,D) on the open list's tail");

  if (r.body_post.size() != 1 || !r.body_post[0].is_compound() ||
      r.body_post[0].functor() != sym::append_sym() ||
      r.body_post[0].arity() != 3 ||
      !same_var(r.body_post[0].arg(0), r.body_rec->arg(1)) ||
      !same_var(r.body_post[0].arg(2), r.head.arg(1)))
    mismatch(who, "body does not end with append(D,F,B)");
  ListView rev = list_view(r.body_post[0].arg(1));
  if (!rev.proper() || rev.elems.size() != open->elems.size())
    mismatch(who, "append's list does not mirror the open list");
  for (std::size_t i = 0; i < rev.elems.size(); ++i) {
    if (!same_var(rev.elems[i], open->elems[open->elems.size() - 1 - i]))
      mismatch(who, "append's list is not the element variables reversed");
  }
  return ReversalParts{std::move(*open), std::move(rev.elems)};
}

// -- sorting ------------------------------------------------------------------

struct SortingParts {
  OpenList open;    // guard open list, tail is the recursive input
  Term rec_out;     // S1
  Term pre_root;    // S0, first argument of the closing merge
};

SortingParts match_sorting(const Rule& r) {
  const char* who = "sorting scheme";
  if (!r.head.is_compound() || r.head.arity() != 2 || !r.head.arg(0).is_var() ||
      !r.head.arg(1).is_var() ||
      r.head.arg(0).var_id() == r.head.arg(1).var_id())
    mismatch(who, "head is not f(L,S) with distinct variables");

  if (r.guard.size() != 1 || !is_bin(r.guard[0], sym::eq()) ||
      !same_var(r.guard[0].arg(0), r.head.arg(0)))
    mismatch(who, "guard is not L=AL");
  auto open = match_open_var_list(r.guard[0].arg(1));
  if (!open) mismatch(who, "guard list is not an open list of variables");

  for (const Term& g : r.body_pre) {
    if (!g.is_compound() || g.functor() != sym::merge_sym() || g.arity() != 3)
      mismatch(who, "pre-call body contains a non-merge goal");
  }
  if (!r.body_rec || r.body_rec->arity() != 2 ||
      !same_var(r.body_rec->arg(0), open->tail) || !r.body_rec->arg(1).is_var())
    mismatch(who, "recursive call is not f(L1,S1) on the open list's tail");

  if (r.body_post.size() != 1 || !r.body_post[0].is_compound() ||
      r.body_post[0].functor() != sym::merge_sym() ||
      r.body_post[0].arity() != 3 ||
      !same_var(r.body_post[0].arg(1), r.body_rec->arg(1)) ||
      !same_var(r.body_post[0].arg(2), r.head.arg(1)))
    mismatch(who, "body does not end with m(S0,S1,S)");
  return SortingParts{std::move(*open), r.body_rec->arg(1),
                      r.body_post[0].arg(0)};
}

// -- inequality chain ---------------------------------------------------------

struct ChainParts {
  std::size_t length = 0;  // m: guard is N=\=1,...,N=\=m and the call f(N-m)
};

ChainParts match_chain(const Rule& r) {
  const char* who = "inequality-chain scheme";
  if (!r.head.is_compound() || r.head.arity() != 1 || !r.head.arg(0).is_var())
    mismatch(who, "head is not f(N)");
  const Term& n = r.head.arg(0);
  if (r.guard.empty()) mismatch(who, "guard is empty");
  for (std::size_t i = 0; i < r.guard.size(); ++i) {
    const Term& g = r.guard[i];
    if (!is_bin(g, sym::neq()) || !same_var(g.arg(0), n) ||
        !g.arg(1).is_int() || g.arg(1).int_value() != BigInt(i + 1))
      mismatch(who, "guard is not the chain N=\\=1,...,N=\\=m");
  }
  BigInt m(r.guard.size());
  if (r.body_pre.size() != 1 || !is_bin(r.body_pre[0], sym::is()) ||
      !r.body_pre[0].arg(0).is_var())
    mismatch(who, "body does not start with B is N-m");
  const Term& sub = r.body_pre[0].arg(1);
  if (!is_bin(sub, sym::minus()) || !same_var(sub.arg(0), n) ||
      !sub.arg(1).is_int() || sub.arg(1).int_value() != m)
    mismatch(who, "body does not start with B is N-m");
  if (!r.body_rec || r.body_rec->arity() != 1 ||
      !same_var(r.body_rec->arg(0), r.body_pre[0].arg(0)))
    mismatch(who, "recursive call is not f(B)");
  if (!r.body_post.empty()) mismatch(who, "no builtins expected after the call");
  return ChainParts{r.guard.size()};
}

}  // namespace

// ----------------------------------------------------------------------------
// Scheme steps

Rule step_summation(const Rule& r, VarGen& gen) {
  SummationParts parts = match_summation(r);
  BigInt v2 = 2 * parts.v;
  BigInt w2 = 2 * parts.w + parts.v * parts.v;
  Symbol f = r.head.functor();
  Term a = gen.fresh();
  Term b = gen.fresh();
  Term c = gen.fresh();
  Term d = gen.fresh();
  Rule out;
  out.head = Term::compound(f, {a, c});
  out.guard = {Term::compound(sym::gt(), {a, Term::integer(v2)})};
  out.body_pre = {Term::compound(
      sym::is(), {b, Term::compound(sym::minus(), {a, Term::integer(v2)})})};
  out.body_rec = Term::compound(f, {b, d});
  Term prod = Term::compound(sym::times(), {Term::integer(v2), a});
  Term diff = Term::compound(sym::minus(), {prod, Term::integer(w2)});
  out.body_post = {Term::compound(
      sym::is(), {c, Term::compound(sym::plus(), {diff, d})})};
  return out;
}

Rule step_reversal(const Rule& r, VarGen& gen) {
  ReversalParts parts = match_reversal(r);
  Symbol f = r.head.functor();

  // Two fresh copies of (element variables, tail); the first copy's open
  // list is extended by the second copy's, and the reversed lists are
  // concatenated the other way around.
  std::unordered_map<VarId, VarId> map1;
  std::unordered_map<VarId, VarId> map2;
  std::vector<Term> elems;
  elems.reserve(parts.open.elems.size() * 2);
  for (const Term& e : parts.open.elems)
    elems.push_back(rename_apart(e, gen, map1));
  for (const Term& e : parts.open.elems)
    elems.push_back(rename_apart(e, gen, map2));
  Term tail = rename_apart(parts.open.tail, gen, map2);

  std::vector<Term> rev;
  rev.reserve(elems.size());
  for (const Term& e : parts.rev) rev.push_back(rename_apart(e, gen, map2));
  for (const Term& e : parts.rev) rev.push_back(rename_apart(e, gen, map1));

  Term a = gen.fresh();
  Term b = gen.fresh();
  Term d = gen.fresh();
  Rule out;
  out.head = Term::compound(f, {a, b});
  out.guard = {Term::compound(sym::eq(), {a, Term::list(elems, tail)})};
  out.body_rec = Term::compound(f, {tail, d});
  out.body_post = {Term::compound(
      sym::append_sym(), {d, Term::list(rev, Term::nil()), b})};
  return out;
}

Rule step_sorting(const Rule& r, VarGen& gen) {
  match_sorting(r);  // validate the template before copying
  Rule c1 = rename_rule(r, gen);
  Rule c2 = rename_rule(r, gen);
  SortingParts p1 = match_sorting(c1);
  SortingParts p2 = match_sorting(c2);
  Symbol f = r.head.functor();

  // Chain the second copy onto the first copy's recursive call: the open
  // list doubles, both merge trees run before the call and their roots are
  // joined; the new closing merge feeds the first copy's output.
  std::vector<Term> elems = p1.open.elems;
  elems.insert(elems.end(), p2.open.elems.begin(), p2.open.elems.end());

  Term joined = gen.fresh();
  Rule out;
  out.head = c1.head;
  out.guard = {Term::compound(
      sym::eq(), {c1.head.arg(0), Term::list(elems, p2.open.tail)})};
  out.body_pre = c1.body_pre;
  out.body_pre.insert(out.body_pre.end(), c2.body_pre.begin(),
                      c2.body_pre.end());
  out.body_pre.push_back(
      Term::compound(sym::merge_sym(), {p2.pre_root, p1.pre_root, joined}));
  out.body_rec = Term::compound(f, {p2.open.tail, p2.rec_out});
  out.body_post = {Term::compound(sym::merge_sym(),
                                  {joined, p2.rec_out, c1.head.arg(1)})};
  return out;
}

Rule step_inequality_chain(const Rule& r, VarGen& gen) {
  ChainParts parts = match_chain(r);
  Symbol f = r.head.functor();
  Term n = gen.fresh();
  Term b = gen.fresh();
  Rule out;
  out.head = Term::compound(f, {n});
  out.guard.reserve(parts.length * 2);
  for (std::size_t c = 1; c <= parts.length * 2; ++c)
    out.guard.push_back(
        Term::compound(sym::neq(), {n, Term::integer(BigInt(c))}));
  out.body_pre = {Term::compound(
      sym::is(),
      {b, Term::compound(sym::minus(),
                         {n, Term::integer(BigInt(parts.length * 2))})})};
  out.body_rec = Term::compound(f, {b});
  return out;
}

// ----------------------------------------------------------------------------
// Scheme and example registry

UnfoldingScheme summation_scheme() {
  return {Symbol::intern("s"), 2, step_summation,
          "s(A,C) <=> A>V | B is A-V, s(B,D), C is V*A-W+D with (V,W) -> "
          "(2V, 2W+V*V)"};
}

UnfoldingScheme reversal_scheme() {
  return {Symbol::intern("r"), 2, step_reversal,
          "r(A,B) <=> A=E | true, r(C,D), append(D,F,B) with the open list E "
          "doubled"};
}

UnfoldingScheme sorting_scheme() {
  return {Symbol::intern("s"), 2, step_sorting,
          "s(L,S) <=> L=AL | Mergings, s(L1,S1), m(S0,S1,S) with two copies "
          "chained and their merge trees joined"};
}

UnfoldingScheme inequality_chain_scheme() {
  return {Symbol::intern("p"), 1, step_inequality_chain,
          "p(N) <=> N=\\=1,...,N=\\=m | B is N-m, p(B) with the chain doubled"};
}

namespace {

constexpr const char* kSummationText =
    "% summation: s(N,S) holds if S = 1+2+...+N\n"
    "r @ s(A,C) <=> A>1 | B is A-1, s(B,D), C is 1*A-0+D.\n"
    "b @ s(A,C) <=> A=1 | C=1, true, true.\n";

constexpr const char* kReversalText =
    "% naive list reversal: r(A,B) holds if B is A reversed\n"
    "r(A,E) <=> A=[D|B] | true, r(B,C), append(C,[D],E).\n"
    "r(A,B) <=> A=[] | B=[], true, true.\n";

constexpr const char* kSortingText =
    "% insertion sort in merge form: s(L,S) holds if S is L sorted ascending\n"
    "s(A,E) <=> A=[C|B] | true, s(B,D), m([C],D,E).\n"
    "s([],A) <=> true | A=[], true, true.\n";

constexpr const char* kNontermText =
    "% diverges for p(0): every unfolded guard still admits 0\n"
    "p(N) <=> N=\\=1 | B is N-1, p(B), true.\n";

}  // namespace

const std::vector<Example>& examples() {
  static const std::vector<Example> all = {
      {"summation", kSummationText, summation_scheme(), {"sum"}},
      {"reversal", kReversalText, reversal_scheme(), {"rev"}},
      {"sorting", kSortingText, sorting_scheme(), {"sort"}},
      {"nonterm", kNontermText, inequality_chain_scheme(), {}},
  };
  return all;
}

const Example* find_example(std::string_view name) {
  for (const Example& e : examples())
    if (e.name == name) return &e;
  return nullptr;
}

std::optional<UnfoldingScheme> detect_scheme(const Program& p) {
  if (p.rules.empty() || !p.rules.front().recursive()) return std::nullopt;
  for (const Example& e : examples()) {
    if (p.arity != e.scheme.arity) continue;
    try {
      VarGen scratch;
      e.scheme.step(p.rules.front(), scratch);
      UnfoldingScheme scheme = e.scheme;
      scheme.predicate = p.predicate;
      return scheme;
    } catch (const EngineError&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace rru::schemes
