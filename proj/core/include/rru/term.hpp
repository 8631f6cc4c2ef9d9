#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rru {

using VarId = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;

/// Interned name of an atom or functor. Copying and comparing are trivial;
/// the backing string lives in a process-wide table.
class Symbol {
 public:
  Symbol() = default;  // the empty symbol ""
  static Symbol intern(std::string_view name);
  const std::string& str() const;
  std::uint32_t id() const { return id_; }

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend bool operator!=(Symbol a, Symbol b) { return a.id_ != b.id_; }
  friend bool operator<(Symbol a, Symbol b) { return a.id_ < b.id_; }

 private:
  explicit Symbol(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

/// Frequently used symbols.
namespace sym {
Symbol nil();         // "[]"
Symbol dot();         // "." (list cell functor)
Symbol truth();       // "true"
Symbol eq();          // "="
Symbol is();          // "is"
Symbol lt();          // "<"
Symbol gt();          // ">"
Symbol ge();          // ">="
Symbol le();          // "=<"
Symbol neq();         // "=\\=" (arithmetic disequality)
Symbol plus();        // "+"
Symbol minus();       // "-"
Symbol times();       // "*"
Symbol append_sym();  // "append"
Symbol merge_sym();   // "m"
}  // namespace sym

/// An immutable logic term: variable, arbitrary-precision integer, atom,
/// list cell or compound. Handles are cheap shared references, so large
/// structures are shared rather than copied. List cells are stored in a
/// dedicated representation but present themselves as compounds with
/// functor "." and arity 2.
class Term {
 public:
  enum class Tag : std::uint8_t { Var = 0, Int, Atom, Cons, Compound };

  Term() = default;  // invalid handle; only useful as a container placeholder
  bool valid() const { return node_ != nullptr; }

  static Term var(VarId id);
  static Term integer(BigInt value);
  static Term integer(long long value) { return integer(BigInt(value)); }
  static Term atom(Symbol name);
  static Term atom(std::string_view name) { return atom(Symbol::intern(name)); }
  static Term nil();
  static Term truth();
  static Term cons(Term head, Term tail);
  /// Builds a compound term; "."/2 is normalized to a list cell.
  static Term compound(Symbol functor, std::vector<Term> args);
  static Term compound(std::string_view functor, std::vector<Term> args) {
    return compound(Symbol::intern(functor), std::move(args));
  }
  /// Builds a (possibly open) list ending in `tail`.
  static Term list(std::span<const Term> elems, Term tail);
  static Term list(std::initializer_list<Term> elems) {
    return list(std::span<const Term>(elems.begin(), elems.size()), nil());
  }

  Tag tag() const;
  bool is_var() const { return tag() == Tag::Var; }
  bool is_int() const { return tag() == Tag::Int; }
  bool is_atom() const { return tag() == Tag::Atom; }
  bool is_cons() const { return tag() == Tag::Cons; }
  bool is_compound() const { return tag() == Tag::Compound; }
  bool is_nil() const { return is_atom() && atom_name() == sym::nil(); }

  VarId var_id() const;
  const BigInt& int_value() const;
  Symbol atom_name() const;

  /// Functor of a compound or list cell ("." for cells), or the atom name.
  Symbol functor() const;
  std::size_t arity() const;
  const Term& arg(std::size_t i) const;
  const Term& head() const;
  const Term& tail() const;

  /// True when no variable occurs anywhere in the term.
  bool ground() const;

  /// Structural equality (no binding store involved).
  bool equals(const Term& other) const;

  /// Identity of the underlying node; usable as a fast same-object check.
  const void* id() const { return node_.get(); }

 private:
  struct ConsData;
  struct CompoundData;
  struct Node;

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::ConsData {
  Term head;
  Term tail;
};

struct Term::CompoundData {
  Symbol functor;
  std::vector<Term> args;
};

struct Term::Node {
  using Data = std::variant<VarId, BigInt, Symbol, ConsData, CompoundData>;

  bool ground;
  Data data;

  Node(bool g, Data d) : ground(g), data(std::move(d)) {}
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;
  // Unlinks uniquely-owned list spines iteratively; a plain recursive
  // destructor would overflow the host stack on long lists.
  ~Node();
};

inline Term::Tag Term::tag() const {
  return static_cast<Tag>(node_->data.index());
}

inline bool Term::ground() const { return node_->ground; }

/// Issues globally unique (per engine instance) variable identifiers.
class VarGen {
 public:
  VarId fresh_id() { return next_++; }
  Term fresh() { return Term::var(fresh_id()); }
  VarId issued() const { return next_; }

 private:
  VarId next_ = 0;
};

/// Trail-backed variable bindings. Bindings are never overwritten; rolling
/// back to a mark removes exactly the bindings recorded after it.
class BindingStore {
 public:
  using Mark = std::size_t;

  Mark mark() const { return trail_.size(); }
  void undo_to(Mark m);

  const Term* lookup(VarId v) const;
  bool bound(VarId v) const { return lookup(v) != nullptr; }
  void bind(VarId v, Term value);

  /// Follows variable bindings until an unbound variable or a non-variable.
  Term deref(Term t) const;

  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_map<VarId, Term> map_;
  std::vector<VarId> trail_;
};

/// RAII helper: rolls the store back on destruction unless dismissed.
class ScopedMark {
 public:
  explicit ScopedMark(BindingStore& store)
      : store_(store), mark_(store.mark()), active_(true) {}
  ~ScopedMark() {
    if (active_) store_.undo_to(mark_);
  }
  void keep() { active_ = false; }
  void rollback() {
    store_.undo_to(mark_);
    active_ = false;
  }
  BindingStore::Mark mark() const { return mark_; }

  ScopedMark(const ScopedMark&) = delete;
  ScopedMark& operator=(const ScopedMark&) = delete;

 private:
  BindingStore& store_;
  BindingStore::Mark mark_;
  bool active_;
};

/// Fresh variant of `t`: every distinct variable consistently replaced by a
/// fresh one. Ground subterms are shared, not copied.
Term rename_apart(const Term& t, VarGen& gen);
Term rename_apart(const Term& t, VarGen& gen,
                  std::unordered_map<VarId, VarId>& mapping);

/// Structural substitution of variables (no store involved). Variables not
/// in the mapping stay as they are.
Term substitute(const Term& t, const std::unordered_map<VarId, Term>& subst);

/// Unification with occurs-check. On failure the store is rolled back to the
/// state at entry. `work` (if given) accumulates the number of visited nodes.
bool unify(const Term& a, const Term& b, BindingStore& store,
           std::uint64_t* work = nullptr);

bool occurs(VarId v, const Term& t, const BindingStore& store);

/// Fully dereferenced copy of `t`: no variable with a binding remains.
Term resolve(const Term& t, const BindingStore& store);

bool is_ground(const Term& t, const BindingStore& store);

/// Node count where an integer counts 1 plus the number of extra machine
/// words of its magnitude, so copy/compare cost modeling treats the size of
/// an integer as logarithmic in its value.
std::uint64_t term_size(const Term& t);

/// Structural equality modulo a consistent renaming of variables.
bool alpha_equal(const Term& a, const Term& b);
bool alpha_equal(const Term& a, const Term& b,
                 std::unordered_map<VarId, VarId>& fwd,
                 std::unordered_map<VarId, VarId>& bwd);

/// Walks a (dereferenced) list. Returns the elements and the final tail;
/// the list is proper iff the tail is "[]".
struct ListView {
  std::vector<Term> elems;
  Term tail;
  bool proper() const { return tail.is_nil(); }
};
ListView list_view(const Term& t, const BindingStore& store);
ListView list_view(const Term& t);  // structural, no dereferencing

/// Free variables in order of first occurrence.
std::vector<VarId> free_vars(const Term& t);

}  // namespace rru
