#include "doctest.h"
#include "support/test_support.hpp"

using namespace rru;

TEST_CASE("parses the original summation recursive rule") {
  VarGen gen;
  Rule r = parse_rule("s(A,C) <=> A>1 | B is A-1, s(B,D), C is 1*A-0+D.", gen);
  CHECK_FALSE(r.name.has_value());
  CHECK(r.head.functor().str() == "s");
  CHECK(r.head.arity() == 2);
  REQUIRE(r.guard.size() == 1);
  CHECK(r.guard[0].functor().str() == ">");
  REQUIRE(r.body_pre.size() == 1);
  CHECK(r.body_pre[0].functor().str() == "is");
  REQUIRE(r.body_rec.has_value());
  CHECK(r.body_rec->functor().str() == "s");
  REQUIRE(r.body_post.size() == 1);
  // C is 1*A-0+D parses as is(C, ((1*A)-0)+D)
  const Term& expr = r.body_post[0].arg(1);
  CHECK(expr.functor().str() == "+");
  CHECK(expr.arg(0).functor().str() == "-");
  CHECK(expr.arg(0).arg(0).functor().str() == "*");
}

TEST_CASE("true padding is normalized away and re-emitted by printing") {
  VarGen gen;
  Rule base = parse_rule("s(A,C) <=> A=1 | C=1, true, true.", gen);
  CHECK(base.guard.size() == 1);
  CHECK(base.body_pre.size() == 1);
  CHECK_FALSE(base.body_rec.has_value());
  CHECK(base.body_post.empty());
  CHECK(to_string(base) == "s(A,B) <=> A=1 | B=1, true, true.");

  Rule rec = parse_rule(
      "r(A,E) <=> A=[D|B] | true, r(B,C), append(C,[D],E).", gen);
  CHECK(rec.body_pre.empty());
  REQUIRE(rec.body_rec.has_value());
  CHECK(to_string(rec) == "r(A,B) <=> A=[C|D] | true, r(D,E), append(E,[C],B).");
}

TEST_CASE("rule names, comments and list sugar") {
  VarGen gen;
  Rule r = parse_rule("b @ s(A,C) <=> A=1 | C=1. % base case", gen);
  REQUIRE(r.name.has_value());
  CHECK(*r.name == "b");

  ParsedGoal g = parse_goal("r([1,2,3],Out)", gen);
  CHECK(g.term.arity() == 2);
  CHECK(g.term.arg(0).equals(testsupport::int_list({1, 2, 3})));
  REQUIRE(g.vars.size() == 1);
  CHECK(g.vars[0].first == "Out");

  ParsedGoal open = parse_goal("f([A,B|T])", gen);
  ListView view = list_view(open.term.arg(0));
  CHECK(view.elems.size() == 2);
  CHECK(view.tail.is_var());
}

TEST_CASE("parse_goal turns capitalized identifiers into fresh variables") {
  VarGen gen;
  ParsedGoal g = parse_goal("sum(100,S)", gen);
  CHECK(g.term.functor().str() == "sum");
  CHECK(g.term.arg(0).int_value() == 100);
  CHECK(g.term.arg(1).is_var());
  REQUIRE(g.vars.size() == 1);
  CHECK(g.vars[0].first == "S");
}

TEST_CASE("syntax errors carry positions") {
  VarGen gen;
  CHECK_THROWS_AS(parse_rule("s(A,C) <= A>1 | true.", gen), SyntaxError);
  CHECK_THROWS_AS(parse_goal("sum(100", gen), SyntaxError);
  try {
    parse_program("s(A,C) <=>\n A>1 | | true.\n", gen);
    CHECK(false);
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("program validation accepts the shipped examples") {
  for (const char* name : {"summation", "reversal", "sorting", "nonterm"}) {
    VarGen gen;
    const auto* ex = rru::schemes::find_example(name);
    REQUIRE(ex != nullptr);
    CHECK_NOTHROW(parse_program(ex->program_text, gen));
  }
}

TEST_CASE("validation rejects single-invariant mutations") {
  VarGen gen;

  SUBCASE("two recursive calls in one body") {
    try {
      parse_program("s(A,C) <=> A>1 | B is A-1, s(B,D), s(B,E), C=1.\n"
                    "s(A,C) <=> A=1 | C=1.\n",
                    gen);
      CHECK(false);
    } catch (const EngineError& e) {
      CHECK(e.kind() == ErrorKind::NonLinearRecursion);
    }
  }

  SUBCASE("two recursive rules") {
    try {
      parse_program("s(A,C) <=> A>1 | B is A-1, s(B,D), C is A+D.\n"
                    "s(A,C) <=> A>2 | B is A-2, s(B,D), C is A+D.\n"
                    "s(A,C) <=> A=1 | C=1.\n",
                    gen);
      CHECK(false);
    } catch (const EngineError& e) {
      CHECK(e.kind() == ErrorKind::MultipleRecursiveRules);
    }
  }

  SUBCASE("non-variable head argument on the recursive rule") {
    try {
      parse_program("s(1,C) <=> C>0 | B is C-1, s(1,B), true.\n"
                    "s(A,C) <=> A=1 | C=1.\n",
                    gen);
      CHECK(false);
    } catch (const EngineError& e) {
      CHECK(e.kind() == ErrorKind::HeadNotVariables);
    }
  }

  SUBCASE("repeated head variable on the recursive rule") {
    try {
      parse_program("s(A,A) <=> A>1 | B is A-1, s(B,B), true.\n"
                    "s(A,C) <=> A=1 | C=1.\n",
                    gen);
      CHECK(false);
    } catch (const EngineError& e) {
      CHECK(e.kind() == ErrorKind::HeadNotVariables);
    }
  }

  SUBCASE("base rule first") {
    try {
      parse_program("s(A,C) <=> A=1 | C=1.\n"
                    "s(A,C) <=> A>1 | B is A-1, s(B,D), C is 1*A-0+D.\n",
                    gen);
      CHECK(false);
    } catch (const EngineError& e) {
      CHECK(e.kind() == ErrorKind::InvalidProgram);
    }
  }

  SUBCASE("unregistered builtin in a body") {
    try {
      parse_program("s(A,C) <=> A>1 | B is A-1, s(B,D), q(C,D).\n"
                    "s(A,C) <=> A=1 | C=1.\n",
                    gen);
      CHECK(false);
    } catch (const EngineError& e) {
      CHECK(e.kind() == ErrorKind::UnknownBuiltin);
    }
  }

  SUBCASE("base-case rules may use head patterns") {
    CHECK_NOTHROW(
        parse_program("s(A,E) <=> A=[C|B] | true, s(B,D), m([C],D,E).\n"
                      "s([],A) <=> true | A=[].\n",
                      gen));
  }
}

TEST_CASE("parse-print-parse is stable on the rule grammar") {
  for (const char* name : {"summation", "reversal", "sorting", "nonterm"}) {
    VarGen gen;
    const auto* ex = rru::schemes::find_example(name);
    Program p1 = parse_program(ex->program_text, gen);
    std::string printed;
    for (const Rule& r : p1.rules) printed += to_string(r) + "\n";
    Program p2 = parse_program(printed, gen);
    std::string printed2;
    for (const Rule& r : p2.rules) printed2 += to_string(r) + "\n";
    CHECK(printed == printed2);
    REQUIRE(p1.rules.size() == p2.rules.size());
    for (std::size_t i = 0; i < p1.rules.size(); ++i)
      CHECK(alpha_equal(p1.rules[i], p2.rules[i]));
  }
}

TEST_CASE("printer round-trips operator expressions and negatives") {
  VarGen gen;
  for (const char* text :
       {"C is 64*A-2016+D", "X is -(A+B)*C", "f((A=B))", "m([1],[-2],Z)",
        "X is 2*(A-1)"}) {
    Term t1 = parse_goal(text, gen).term;
    Term t2 = parse_goal(to_string(t1), gen).term;
    CHECK(alpha_equal(t1, t2));
  }
}

TEST_CASE("programs with no base case parse (nontermination example)") {
  VarGen gen;
  Program p = parse_program("p(N) <=> N =\\= 1 | B is N-1, p(B), true.\n", gen);
  CHECK(p.rules.size() == 1);
  CHECK(p.rules[0].recursive());
}

TEST_CASE("the unicode inequality sign is accepted") {
  VarGen gen;
  Rule a = parse_rule("p(N) <=> N =\\= 1 | B is N-1, p(B), true.", gen);
  Rule b = parse_rule("p(N) <=> N \xE2\x89\xA0 1 | B is N-1, p(B), true.", gen);
  CHECK(alpha_equal(a, b));
}
