#include "rru/parser.hpp"

#include <cctype>
#include <unordered_map>

#include "rru/errors.hpp"

namespace rru {

namespace {

enum class Tok {
  End,
  Ident,   // lowercase identifier (atom / functor)
  Var,     // uppercase or '_' identifier
  Int,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Bar,
  Dot,
  At,
  Arrow,   // <=>
  OpEq,    // =
  OpIs,    // is
  OpLt,
  OpGt,
  OpGe,
  OpLe,
  OpNeq,   // =\= (also accepts the unicode inequality sign)
  OpPlus,
  OpMinus,
  OpStar,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= src_.size()) {
      current_.kind = Tok::End;
      current_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        bump();
      set(Tok::Int, src_.substr(start, pos_ - start));
      return;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && ident_char(src_[pos_])) bump();
      std::string_view word = src_.substr(start, pos_ - start);
      set(word == "is" ? Tok::OpIs : Tok::Ident, word);
      return;
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() && ident_char(src_[pos_])) bump();
      set(Tok::Var, src_.substr(start, pos_ - start));
      return;
    }
    // the unicode inequality sign (0xE2 0x89 0xA0)
    if (static_cast<unsigned char>(c) == 0xE2 && pos_ + 2 < src_.size() &&
        static_cast<unsigned char>(src_[pos_ + 1]) == 0x89 &&
        static_cast<unsigned char>(src_[pos_ + 2]) == 0xA0) {
      bump();
      bump();
      bump();
      set(Tok::OpNeq, "=\\=");
      return;
    }
    switch (c) {
      case '(': bump(); set(Tok::LParen, "("); return;
      case ')': bump(); set(Tok::RParen, ")"); return;
      case '[': bump(); set(Tok::LBracket, "["); return;
      case ']': bump(); set(Tok::RBracket, "]"); return;
      case ',': bump(); set(Tok::Comma, ","); return;
      case '|': bump(); set(Tok::Bar, "|"); return;
      case '.': bump(); set(Tok::Dot, "."); return;
      case '@': bump(); set(Tok::At, "@"); return;
      case '+': bump(); set(Tok::OpPlus, "+"); return;
      case '*': bump(); set(Tok::OpStar, "*"); return;
      case '-': bump(); set(Tok::OpMinus, "-"); return;
      case '<':
        if (rest_starts_with("<=>")) {
          bump(); bump(); bump();
          set(Tok::Arrow, "<=>");
          return;
        }
        bump();
        set(Tok::OpLt, "<");
        return;
      case '>':
        bump();
        if (pos_ < src_.size() && src_[pos_] == '=') {
          bump();
          set(Tok::OpGe, ">=");
          return;
        }
        set(Tok::OpGt, ">");
        return;
      case '=':
        if (rest_starts_with("=\\=")) {
          bump(); bump(); bump();
          set(Tok::OpNeq, "=\\=");
          return;
        }
        bump();
        if (pos_ < src_.size() && src_[pos_] == '<') {
          bump();
          set(Tok::OpLe, "=<");
          return;
        }
        set(Tok::OpEq, "=");
        return;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'",
                          line_, column_);
    }
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  bool rest_starts_with(std::string_view s) const {
    return src_.substr(pos_, s.size()) == s;
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void set(Tok kind, std::string_view text) {
    current_.kind = kind;
    current_.text.assign(text);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Token current_;
};

constexpr std::size_t kMaxDepth = 10'000;

class Parser {
 public:
  Parser(std::string_view src, VarGen& gen) : lex_(src), gen_(gen) {}

  bool at_end() const { return lex_.peek().kind == Tok::End; }

  Rule rule() {
    scope_.clear();
    Rule r;
    // optional rule name
    if (lex_.peek().kind == Tok::Ident) {
      Lexer save = lex_;
      Token name = lex_.take();
      if (lex_.peek().kind == Tok::At) {
        lex_.take();
        r.name = name.text;
      } else {
        lex_ = save;  // it was the head functor after all
      }
    }
    r.head = primary();
    if (!r.head.is_compound())
      fail("rule head must be a compound term");
    expect(Tok::Arrow, "'<=>'");
    std::vector<Term> guard_goals = goal_seq();
    expect(Tok::Bar, "'|'");
    std::vector<Term> body_goals = goal_seq();
    expect(Tok::Dot, "'.'");

    for (Term& g : guard_goals)
      if (!is_true_atom(g)) r.guard.push_back(std::move(g));

    Symbol pred = r.head.functor();
    std::size_t arity = r.head.arity();
    bool seen_rec = false;
    for (Term& g : body_goals) {
      if (is_true_atom(g)) continue;
      bool is_rec = g.is_compound() && g.functor() == pred && g.arity() == arity;
      if (is_rec) {
        if (seen_rec)
          throw EngineError(ErrorKind::NonLinearRecursion,
                            "more than one recursive call in a rule body");
        seen_rec = true;
        r.body_rec = std::move(g);
      } else if (seen_rec) {
        r.body_post.push_back(std::move(g));
      } else {
        r.body_pre.push_back(std::move(g));
      }
    }
    return r;
  }

  Term goal() { return comparison(); }

  std::vector<std::pair<std::string, VarId>> named_vars() {
    std::vector<std::pair<std::string, VarId>> out;
    for (const auto& [name, id] : scope_order_) out.emplace_back(name, id);
    return out;
  }

  void expect_end() {
    if (!at_end()) fail("trailing input");
  }

 private:
  std::vector<Term> goal_seq() {
    std::vector<Term> goals;
    goals.push_back(goal());
    while (lex_.peek().kind == Tok::Comma) {
      lex_.take();
      goals.push_back(goal());
    }
    return goals;
  }

  Term comparison() {
    Term lhs = additive();
    Symbol op;
    switch (lex_.peek().kind) {
      case Tok::OpEq: op = sym::eq(); break;
      case Tok::OpIs: op = sym::is(); break;
      case Tok::OpLt: op = sym::lt(); break;
      case Tok::OpGt: op = sym::gt(); break;
      case Tok::OpGe: op = sym::ge(); break;
      case Tok::OpLe: op = sym::le(); break;
      case Tok::OpNeq: op = sym::neq(); break;
      default: return lhs;
    }
    lex_.take();
    Term rhs = additive();
    return Term::compound(op, {std::move(lhs), std::move(rhs)});
  }

  Term additive() {
    Term t = multiplicative();
    while (true) {
      Tok k = lex_.peek().kind;
      if (k != Tok::OpPlus && k != Tok::OpMinus) return t;
      lex_.take();
      Term rhs = multiplicative();
      t = Term::compound(k == Tok::OpPlus ? sym::plus() : sym::minus(),
                         {std::move(t), std::move(rhs)});
    }
  }

  Term multiplicative() {
    Term t = unary();
    while (lex_.peek().kind == Tok::OpStar) {
      lex_.take();
      Term rhs = unary();
      t = Term::compound(sym::times(), {std::move(t), std::move(rhs)});
    }
    return t;
  }

  Term unary() {
    if (lex_.peek().kind == Tok::OpMinus) {
      Token minus = lex_.take();
      if (lex_.peek().kind == Tok::Int) {
        Token num = lex_.take();
        return Term::integer(-BigInt(num.text));
      }
      (void)minus;
      Term operand = unary();
      return Term::compound(sym::minus(), {std::move(operand)});
    }
    return primary();
  }

  Term primary() {
    DepthGuard depth(this);
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Int:
        return Term::integer(BigInt(t.text));
      case Tok::Var:
        return variable(t.text);
      case Tok::Ident: {
        if (lex_.peek().kind == Tok::LParen) {
          lex_.take();
          std::vector<Term> args;
          args.push_back(additive());
          while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            args.push_back(additive());
          }
          expect(Tok::RParen, "')'");
          return Term::compound(Symbol::intern(t.text), std::move(args));
        }
        return Term::atom(Symbol::intern(t.text));
      }
      case Tok::LBracket:
        return list_rest();
      case Tok::LParen: {
        Term inner = comparison();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        throw SyntaxError("expected a term, found '" + t.text + "'", t.line,
                          t.column);
    }
  }

  Term list_rest() {
    if (lex_.peek().kind == Tok::RBracket) {
      lex_.take();
      return Term::nil();
    }
    std::vector<Term> elems;
    elems.push_back(additive());
    while (lex_.peek().kind == Tok::Comma) {
      lex_.take();
      elems.push_back(additive());
    }
    Term tail = Term::nil();
    if (lex_.peek().kind == Tok::Bar) {
      lex_.take();
      tail = additive();
    }
    expect(Tok::RBracket, "']'");
    return Term::list(elems, std::move(tail));
  }

  Term variable(const std::string& name) {
    if (name == "_") return gen_.fresh();
    auto it = scope_.find(name);
    if (it != scope_.end()) return Term::var(it->second);
    VarId id = gen_.fresh_id();
    scope_.emplace(name, id);
    scope_order_.emplace_back(name, id);
    return Term::var(id);
  }

  void expect(Tok kind, const char* what) {
    Token t = lex_.take();
    if (t.kind != kind)
      throw SyntaxError(std::string("expected ") + what + ", found '" +
                            (t.kind == Tok::End ? "end of input" : t.text) + "'",
                        t.line, t.column);
  }

  [[noreturn]] void fail(const std::string& msg) {
    const Token& t = lex_.peek();
    throw SyntaxError(msg, t.line, t.column);
  }

  struct DepthGuard {
    explicit DepthGuard(Parser* p) : parser(p) {
      if (++parser->depth_ > kMaxDepth) parser->fail("term nested too deeply");
    }
    ~DepthGuard() { --parser->depth_; }
    Parser* parser;
  };

  Lexer lex_;
  VarGen& gen_;
  std::unordered_map<std::string, VarId> scope_;
  std::vector<std::pair<std::string, VarId>> scope_order_;
  std::size_t depth_ = 0;

  friend struct DepthGuard;

  static bool is_true_atom(const Term& t) {
    return t.is_atom() && t.atom_name() == sym::truth();
  }
};

}  // namespace

Program parse_program(std::string_view text, VarGen& gen) {
  Parser parser(text, gen);
  Program p;
  while (!parser.at_end()) p.rules.push_back(parser.rule());
  if (p.rules.empty())
    throw EngineError(ErrorKind::InvalidProgram, "program has no rules");
  p.predicate = p.rules.front().head.functor();
  p.arity = p.rules.front().head.arity();
  validate_program(p);
  return p;
}

Rule parse_rule(std::string_view text, VarGen& gen) {
  Parser parser(text, gen);
  Rule r = parser.rule();
  parser.expect_end();
  return r;
}

ParsedGoal parse_goal(std::string_view text, VarGen& gen) {
  Parser parser(text, gen);
  ParsedGoal g;
  g.term = parser.goal();
  parser.expect_end();
  g.vars = parser.named_vars();
  return g;
}

}  // namespace rru
