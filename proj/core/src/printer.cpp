#include "rru/printer.hpp"

#include <sstream>

namespace rru {

const std::string& VarNamer::name_for(VarId v) {
  auto it = names_.find(v);
  if (it != names_.end()) return it->second;
  std::string name;
  std::size_t n = next_++;
  name += static_cast<char>('A' + n % 26);
  if (n >= 26) name += std::to_string(n / 26);
  return names_.emplace(v, std::move(name)).first->second;
}

namespace {

enum class OpKind { None, Xfx, Yfx };

struct OpInfo {
  int prec = 0;
  OpKind kind = OpKind::None;
  bool spaced = false;
};

OpInfo op_info(Symbol f, std::size_t arity) {
  if (arity == 2) {
    if (f == sym::eq() || f == sym::lt() || f == sym::gt() || f == sym::ge() ||
        f == sym::le() || f == sym::neq())
      return {700, OpKind::Xfx, false};
    if (f == sym::is()) return {700, OpKind::Xfx, true};
    if (f == sym::plus() || f == sym::minus()) return {500, OpKind::Yfx, false};
    if (f == sym::times()) return {400, OpKind::Yfx, false};
  }
  return {};
}

void print_term(std::string& out, const Term& t, VarNamer& namer, int max_prec);

void print_list(std::string& out, const Term& t, VarNamer& namer) {
  out += '[';
  Term cur = t;
  bool first = true;
  while (cur.is_cons()) {
    if (!first) out += ',';
    first = false;
    print_term(out, cur.head(), namer, 500);
    cur = cur.tail();
  }
  if (!cur.is_nil()) {
    out += '|';
    print_term(out, cur, namer, 500);
  }
  out += ']';
}

void print_term(std::string& out, const Term& t, VarNamer& namer,
                int max_prec) {
  switch (t.tag()) {
    case Term::Tag::Var:
      out += namer.name_for(t.var_id());
      return;
    case Term::Tag::Int:
      out += t.int_value().str();
      return;
    case Term::Tag::Atom:
      out += t.atom_name().str();
      return;
    case Term::Tag::Cons:
      print_list(out, t, namer);
      return;
    case Term::Tag::Compound: {
      OpInfo op = op_info(t.functor(), t.arity());
      if (op.kind != OpKind::None) {
        bool parens = op.prec > max_prec;
        if (parens) out += '(';
        int left_max = op.kind == OpKind::Yfx ? op.prec : op.prec - 1;
        print_term(out, t.arg(0), namer, left_max);
        if (op.spaced) out += ' ';
        out += t.functor().str();
        if (op.spaced) out += ' ';
        print_term(out, t.arg(1), namer, op.prec - 1);
        if (parens) out += ')';
        return;
      }
      if (t.arity() == 1 && t.functor() == sym::minus()) {
        bool parens = 200 > max_prec;
        if (parens) out += '(';
        out += '-';
        print_term(out, t.arg(0), namer, 0);
        if (parens) out += ')';
        return;
      }
      out += t.functor().str();
      out += '(';
      for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i > 0) out += ',';
        print_term(out, t.arg(i), namer, 500);
      }
      out += ')';
      return;
    }
  }
}

void print_goals(std::string& out, const std::vector<Term>& goals,
                 VarNamer& namer) {
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (i > 0) out += ", ";
    print_term(out, goals[i], namer, 999);
  }
}

}  // namespace

std::string to_string(const Term& t, VarNamer& namer) {
  std::string out;
  print_term(out, t, namer, 999);
  return out;
}

std::string to_string(const Term& t) {
  VarNamer namer;
  return to_string(t, namer);
}

std::string to_string(const Rule& r) {
  VarNamer namer;
  std::string out;
  if (r.name) {
    out += *r.name;
    out += " @ ";
  }
  print_term(out, r.head, namer, 999);
  out += " <=> ";
  if (r.guard.empty()) {
    out += "true";
  } else {
    print_goals(out, r.guard, namer);
  }
  out += " | ";
  if (r.body_pre.empty()) {
    out += "true";
  } else {
    print_goals(out, r.body_pre, namer);
  }
  if (r.body_rec) {
    out += ", ";
    print_term(out, *r.body_rec, namer, 999);
    out += ", ";
    if (r.body_post.empty()) {
      out += "true";
    } else {
      print_goals(out, r.body_post, namer);
    }
  } else {
    out += ", true, true";
  }
  out += '.';
  return out;
}

}  // namespace rru
