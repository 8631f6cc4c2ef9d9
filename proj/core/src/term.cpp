#include "rru/term.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <mutex>
#include <shared_mutex>

namespace rru {

// ---------------------------------------------------------------------------
// Symbol interning

namespace {

struct SymbolTable {
  std::shared_mutex mu;
  std::deque<std::string> names{""};  // deque: stable references
  std::unordered_map<std::string, std::uint32_t> index{{"", 0}};
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

}  // namespace

Symbol Symbol::intern(std::string_view name) {
  SymbolTable& t = table();
  std::string key(name);
  {
    std::shared_lock lock(t.mu);
    auto it = t.index.find(key);
    if (it != t.index.end()) return Symbol(it->second);
  }
  std::unique_lock lock(t.mu);
  auto [it, inserted] = t.index.try_emplace(key, static_cast<std::uint32_t>(t.names.size()));
  if (inserted) t.names.push_back(std::move(key));
  return Symbol(it->second);
}

const std::string& Symbol::str() const {
  SymbolTable& t = table();
  std::shared_lock lock(t.mu);
  return t.names[id_];
}

namespace sym {
Symbol nil() { static Symbol s = Symbol::intern("[]"); return s; }
Symbol dot() { static Symbol s = Symbol::intern("."); return s; }
Symbol truth() { static Symbol s = Symbol::intern("true"); return s; }
Symbol eq() { static Symbol s = Symbol::intern("="); return s; }
Symbol is() { static Symbol s = Symbol::intern("is"); return s; }
Symbol lt() { static Symbol s = Symbol::intern("<"); return s; }
Symbol gt() { static Symbol s = Symbol::intern(">"); return s; }
Symbol ge() { static Symbol s = Symbol::intern(">="); return s; }
Symbol le() { static Symbol s = Symbol::intern("=<"); return s; }
Symbol neq() { static Symbol s = Symbol::intern("=\\="); return s; }
Symbol plus() { static Symbol s = Symbol::intern("+"); return s; }
Symbol minus() { static Symbol s = Symbol::intern("-"); return s; }
Symbol times() { static Symbol s = Symbol::intern("*"); return s; }
Symbol append_sym() { static Symbol s = Symbol::intern("append"); return s; }
Symbol merge_sym() { static Symbol s = Symbol::intern("m"); return s; }
}  // namespace sym

// ---------------------------------------------------------------------------
// Term construction

Term::Node::~Node() {
  auto* cons = std::get_if<ConsData>(&data);
  if (cons == nullptr) return;
  std::shared_ptr<const Node> cur = std::move(cons->tail.node_);
  while (cur != nullptr && cur.use_count() == 1) {
    auto* next_cons =
        std::get_if<ConsData>(&const_cast<Node*>(cur.get())->data);
    if (next_cons == nullptr) break;
    std::shared_ptr<const Node> next = std::move(next_cons->tail.node_);
    cur = std::move(next);  // the detached cell dies with a null tail
  }
}

Term Term::var(VarId id) {
  return Term(std::make_shared<const Node>(false, Node::Data(id)));
}

Term Term::integer(BigInt value) {
  return Term(std::make_shared<const Node>(true, Node::Data(std::move(value))));
}

Term Term::atom(Symbol name) {
  return Term(std::make_shared<const Node>(true, Node::Data(name)));
}

Term Term::nil() {
  static Term t = atom(sym::nil());
  return t;
}

Term Term::truth() {
  static Term t = atom(sym::truth());
  return t;
}

Term Term::cons(Term head, Term tail) {
  bool ground = head.ground() && tail.ground();
  return Term(std::make_shared<const Node>(
      ground, Node::Data(ConsData{std::move(head), std::move(tail)})));
}

Term Term::compound(Symbol functor, std::vector<Term> args) {
  assert(!args.empty());
  if (functor == sym::dot() && args.size() == 2) {
    return cons(std::move(args[0]), std::move(args[1]));
  }
  bool ground = true;
  for (const Term& a : args) ground = ground && a.ground();
  return Term(std::make_shared<const Node>(
      ground, Node::Data(CompoundData{functor, std::move(args)})));
}

Term Term::list(std::span<const Term> elems, Term tail) {
  Term out = std::move(tail);
  for (std::size_t i = elems.size(); i-- > 0;) out = cons(elems[i], out);
  return out;
}

// ---------------------------------------------------------------------------
// Term accessors

VarId Term::var_id() const { return std::get<VarId>(node_->data); }

const BigInt& Term::int_value() const { return std::get<BigInt>(node_->data); }

Symbol Term::atom_name() const { return std::get<Symbol>(node_->data); }

Symbol Term::functor() const {
  switch (tag()) {
    case Tag::Atom: return std::get<Symbol>(node_->data);
    case Tag::Cons: return sym::dot();
    case Tag::Compound: return std::get<CompoundData>(node_->data).functor;
    default: assert(false); return Symbol();
  }
}

std::size_t Term::arity() const {
  switch (tag()) {
    case Tag::Cons: return 2;
    case Tag::Compound: return std::get<CompoundData>(node_->data).args.size();
    default: return 0;
  }
}

const Term& Term::arg(std::size_t i) const {
  if (tag() == Tag::Cons) {
    const ConsData& c = std::get<ConsData>(node_->data);
    return i == 0 ? c.head : c.tail;
  }
  return std::get<CompoundData>(node_->data).args[i];
}

const Term& Term::head() const { return std::get<ConsData>(node_->data).head; }
const Term& Term::tail() const { return std::get<ConsData>(node_->data).tail; }

bool Term::equals(const Term& other) const {
  std::vector<std::pair<const Node*, const Node*>> work;
  work.emplace_back(node_.get(), other.node_.get());
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    if (a == b) continue;
    if (a->data.index() != b->data.index()) return false;
    switch (static_cast<Tag>(a->data.index())) {
      case Tag::Var:
        if (std::get<VarId>(a->data) != std::get<VarId>(b->data)) return false;
        break;
      case Tag::Int:
        if (std::get<BigInt>(a->data) != std::get<BigInt>(b->data)) return false;
        break;
      case Tag::Atom:
        if (std::get<Symbol>(a->data) != std::get<Symbol>(b->data)) return false;
        break;
      case Tag::Cons: {
        const ConsData& ca = std::get<ConsData>(a->data);
        const ConsData& cb = std::get<ConsData>(b->data);
        work.emplace_back(ca.head.node_.get(), cb.head.node_.get());
        work.emplace_back(ca.tail.node_.get(), cb.tail.node_.get());
        break;
      }
      case Tag::Compound: {
        const CompoundData& ca = std::get<CompoundData>(a->data);
        const CompoundData& cb = std::get<CompoundData>(b->data);
        if (ca.functor != cb.functor || ca.args.size() != cb.args.size())
          return false;
        for (std::size_t i = 0; i < ca.args.size(); ++i)
          work.emplace_back(ca.args[i].node_.get(), cb.args[i].node_.get());
        break;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// BindingStore

void BindingStore::undo_to(Mark m) {
  while (trail_.size() > m) {
    map_.erase(trail_.back());
    trail_.pop_back();
  }
}

const Term* BindingStore::lookup(VarId v) const {
  auto it = map_.find(v);
  return it == map_.end() ? nullptr : &it->second;
}

void BindingStore::bind(VarId v, Term value) {
  assert(!bound(v));
  map_.emplace(v, std::move(value));
  trail_.push_back(v);
}

Term BindingStore::deref(Term t) const {
  while (t.is_var()) {
    const Term* b = lookup(t.var_id());
    if (b == nullptr) break;
    t = *b;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Renaming and substitution
//
// Tree rebuilds recurse over compound arguments and list heads but iterate
// along list spines, so deep lists do not consume host stack.

namespace {

Term rename_rec(const Term& t, VarGen& gen,
                std::unordered_map<VarId, VarId>& mapping) {
  if (t.ground()) return t;
  switch (t.tag()) {
    case Term::Tag::Var: {
      auto [it, inserted] = mapping.try_emplace(t.var_id(), 0);
      if (inserted) it->second = gen.fresh_id();
      return Term::var(it->second);
    }
    case Term::Tag::Cons: {
      std::vector<Term> heads;
      Term cur = t;
      while (cur.is_cons() && !cur.ground()) {
        heads.push_back(rename_rec(cur.head(), gen, mapping));
        cur = cur.tail();
      }
      Term out = cur.ground() ? cur : rename_rec(cur, gen, mapping);
      for (std::size_t i = heads.size(); i-- > 0;)
        out = Term::cons(std::move(heads[i]), std::move(out));
      return out;
    }
    case Term::Tag::Compound: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (std::size_t i = 0; i < t.arity(); ++i)
        args.push_back(rename_rec(t.arg(i), gen, mapping));
      return Term::compound(t.functor(), std::move(args));
    }
    default:
      return t;
  }
}

}  // namespace

Term rename_apart(const Term& t, VarGen& gen,
                  std::unordered_map<VarId, VarId>& mapping) {
  return rename_rec(t, gen, mapping);
}

Term rename_apart(const Term& t, VarGen& gen) {
  std::unordered_map<VarId, VarId> mapping;
  return rename_rec(t, gen, mapping);
}

Term substitute(const Term& t, const std::unordered_map<VarId, Term>& subst) {
  if (t.ground()) return t;
  switch (t.tag()) {
    case Term::Tag::Var: {
      auto it = subst.find(t.var_id());
      return it == subst.end() ? t : it->second;
    }
    case Term::Tag::Cons: {
      std::vector<Term> heads;
      Term cur = t;
      while (cur.is_cons() && !cur.ground()) {
        heads.push_back(substitute(cur.head(), subst));
        cur = cur.tail();
      }
      Term out = cur.ground() ? cur : substitute(cur, subst);
      for (std::size_t i = heads.size(); i-- > 0;)
        out = Term::cons(std::move(heads[i]), std::move(out));
      return out;
    }
    case Term::Tag::Compound: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (std::size_t i = 0; i < t.arity(); ++i)
        args.push_back(substitute(t.arg(i), subst));
      return Term::compound(t.functor(), std::move(args));
    }
    default:
      return t;
  }
}

// ---------------------------------------------------------------------------
// Occurs check and unification

bool occurs(VarId v, const Term& t, const BindingStore& store) {
  std::vector<Term> work{t};
  while (!work.empty()) {
    Term cur = store.deref(std::move(work.back()));
    work.pop_back();
    if (cur.ground()) continue;
    switch (cur.tag()) {
      case Term::Tag::Var:
        if (cur.var_id() == v) return true;
        break;
      case Term::Tag::Cons:
        work.push_back(cur.head());
        work.push_back(cur.tail());
        break;
      case Term::Tag::Compound:
        for (std::size_t i = 0; i < cur.arity(); ++i) work.push_back(cur.arg(i));
        break;
      default:
        break;
    }
  }
  return false;
}

namespace {

// Binds the younger variable to the older one, keeping chains acyclic and
// letting "rename then unify against the original" touch only fresh ids.
bool bind_var(const Term& var, const Term& value, BindingStore& store) {
  if (value.is_var()) {
    VarId a = var.var_id();
    VarId b = value.var_id();
    if (a == b) return true;
    if (a > b) {
      store.bind(a, value);
    } else {
      store.bind(b, var);
    }
    return true;
  }
  if (occurs(var.var_id(), value, store)) return false;
  store.bind(var.var_id(), value);
  return true;
}

}  // namespace

bool unify(const Term& a, const Term& b, BindingStore& store,
           std::uint64_t* work) {
  ScopedMark guard(store);
  std::vector<std::pair<Term, Term>> stack;
  stack.emplace_back(a, b);
  std::uint64_t visited = 0;
  bool ok = true;
  while (ok && !stack.empty()) {
    auto [x, y] = std::move(stack.back());
    stack.pop_back();
    x = store.deref(std::move(x));
    y = store.deref(std::move(y));
    ++visited;
    if (x.id() == y.id()) continue;
    if (x.is_var()) {
      ok = bind_var(x, y, store);
      continue;
    }
    if (y.is_var()) {
      ok = bind_var(y, x, store);
      continue;
    }
    if (x.tag() != y.tag()) {
      ok = false;
      continue;
    }
    switch (x.tag()) {
      case Term::Tag::Int:
        ok = x.int_value() == y.int_value();
        break;
      case Term::Tag::Atom:
        ok = x.atom_name() == y.atom_name();
        break;
      case Term::Tag::Cons:
        stack.emplace_back(x.tail(), y.tail());
        stack.emplace_back(x.head(), y.head());
        break;
      case Term::Tag::Compound: {
        if (x.functor() != y.functor() || x.arity() != y.arity()) {
          ok = false;
          break;
        }
        for (std::size_t i = x.arity(); i-- > 0;)
          stack.emplace_back(x.arg(i), y.arg(i));
        break;
      }
      default:
        ok = false;
        break;
    }
  }
  if (work != nullptr) *work += visited;
  if (ok) guard.keep();
  return ok;
}

// ---------------------------------------------------------------------------
// Resolution

Term resolve(const Term& t, const BindingStore& store) {
  Term cur = store.deref(t);
  if (cur.ground() || cur.is_var()) return cur;
  switch (cur.tag()) {
    case Term::Tag::Cons: {
      std::vector<Term> heads;
      while (true) {
        cur = store.deref(cur);
        if (!cur.is_cons() || cur.ground()) break;
        heads.push_back(resolve(cur.head(), store));
        cur = cur.tail();
      }
      Term out = cur.is_cons() ? cur : resolve(cur, store);
      for (std::size_t i = heads.size(); i-- > 0;)
        out = Term::cons(std::move(heads[i]), std::move(out));
      return out;
    }
    case Term::Tag::Compound: {
      std::vector<Term> args;
      args.reserve(cur.arity());
      for (std::size_t i = 0; i < cur.arity(); ++i)
        args.push_back(resolve(cur.arg(i), store));
      return Term::compound(cur.functor(), std::move(args));
    }
    default:
      return cur;
  }
}

bool is_ground(const Term& t, const BindingStore& store) {
  std::vector<Term> work{t};
  while (!work.empty()) {
    Term cur = store.deref(std::move(work.back()));
    work.pop_back();
    if (cur.ground()) continue;
    switch (cur.tag()) {
      case Term::Tag::Var:
        return false;
      case Term::Tag::Cons:
        work.push_back(cur.head());
        work.push_back(cur.tail());
        break;
      case Term::Tag::Compound:
        for (std::size_t i = 0; i < cur.arity(); ++i) work.push_back(cur.arg(i));
        break;
      default:
        break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Size and comparison utilities

std::uint64_t term_size(const Term& t) {
  std::uint64_t total = 0;
  std::vector<Term> work{t};
  while (!work.empty()) {
    Term cur = std::move(work.back());
    work.pop_back();
    switch (cur.tag()) {
      case Term::Tag::Int: {
        const BigInt& v = cur.int_value();
        std::uint64_t extra_words = 0;
        if (v != 0) {
          BigInt mag = boost::multiprecision::abs(v);
          extra_words = boost::multiprecision::msb(mag) / 64;
        }
        total += 1 + extra_words;
        break;
      }
      case Term::Tag::Cons:
        total += 1;
        work.push_back(cur.head());
        work.push_back(cur.tail());
        break;
      case Term::Tag::Compound:
        total += 1;
        for (std::size_t i = 0; i < cur.arity(); ++i) work.push_back(cur.arg(i));
        break;
      default:
        total += 1;
        break;
    }
  }
  return total;
}

bool alpha_equal(const Term& a, const Term& b,
                 std::unordered_map<VarId, VarId>& fwd,
                 std::unordered_map<VarId, VarId>& bwd) {
  std::vector<std::pair<Term, Term>> work;
  work.emplace_back(a, b);
  while (!work.empty()) {
    auto [x, y] = std::move(work.back());
    work.pop_back();
    if (x.tag() != y.tag()) return false;
    switch (x.tag()) {
      case Term::Tag::Var: {
        auto [itf, newf] = fwd.try_emplace(x.var_id(), y.var_id());
        auto [itb, newb] = bwd.try_emplace(y.var_id(), x.var_id());
        if (itf->second != y.var_id() || itb->second != x.var_id()) return false;
        (void)newf;
        (void)newb;
        break;
      }
      case Term::Tag::Int:
        if (x.int_value() != y.int_value()) return false;
        break;
      case Term::Tag::Atom:
        if (x.atom_name() != y.atom_name()) return false;
        break;
      case Term::Tag::Cons:
        work.emplace_back(x.tail(), y.tail());
        work.emplace_back(x.head(), y.head());
        break;
      case Term::Tag::Compound:
        if (x.functor() != y.functor() || x.arity() != y.arity()) return false;
        for (std::size_t i = x.arity(); i-- > 0;)
          work.emplace_back(x.arg(i), y.arg(i));
        break;
    }
  }
  return true;
}

bool alpha_equal(const Term& a, const Term& b) {
  std::unordered_map<VarId, VarId> fwd;
  std::unordered_map<VarId, VarId> bwd;
  return alpha_equal(a, b, fwd, bwd);
}

ListView list_view(const Term& t, const BindingStore& store) {
  ListView out;
  Term cur = store.deref(t);
  while (cur.is_cons()) {
    out.elems.push_back(cur.head());
    cur = store.deref(cur.tail());
  }
  out.tail = cur;
  return out;
}

ListView list_view(const Term& t) {
  ListView out;
  Term cur = t;
  while (cur.is_cons()) {
    out.elems.push_back(cur.head());
    cur = cur.tail();
  }
  out.tail = cur;
  return out;
}

std::vector<VarId> free_vars(const Term& t) {
  std::vector<VarId> out;
  std::unordered_map<VarId, bool> seen;
  std::vector<Term> work{t};
  while (!work.empty()) {
    Term cur = std::move(work.back());
    work.pop_back();
    if (cur.ground()) continue;
    switch (cur.tag()) {
      case Term::Tag::Var: {
        auto [it, inserted] = seen.try_emplace(cur.var_id(), true);
        (void)it;
        if (inserted) out.push_back(cur.var_id());
        break;
      }
      case Term::Tag::Cons:
        work.push_back(cur.tail());
        work.push_back(cur.head());
        break;
      case Term::Tag::Compound:
        for (std::size_t i = cur.arity(); i-- > 0;) work.push_back(cur.arg(i));
        break;
      default:
        break;
    }
  }
  return out;
}

}  // namespace rru
