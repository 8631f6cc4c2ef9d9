#include "rru/rule.hpp"

#include <unordered_set>

#include "rru/builtins.hpp"
#include "rru/errors.hpp"

namespace rru {

namespace {

void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) throw EngineError(kind, msg);
}

void check_builtin_goals(const std::vector<Term>& goals, const char* where,
                         const std::string& rule_desc) {
  for (const Term& g : goals) {
    bool ok = (g.is_atom() && builtins::is_registered(g.atom_name(), 0)) ||
              (g.is_compound() && builtins::is_registered(g.functor(), g.arity()));
    require(ok, ErrorKind::UnknownBuiltin,
            std::string(where) + " goal in " + rule_desc +
                " is not a registered builtin");
  }
}

std::string describe(const Rule& r, std::size_t index) {
  if (r.name) return "rule '" + *r.name + "'";
  return "rule #" + std::to_string(index + 1);
}

}  // namespace

void validate_program(const Program& p) {
  require(!p.rules.empty(), ErrorKind::InvalidProgram, "program has no rules");
  std::size_t recursive_seen = 0;
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    const Rule& r = p.rules[i];
    const std::string desc = describe(r, i);
    require(r.head.is_compound(), ErrorKind::InvalidProgram,
            "head of " + desc + " is not a compound term");
    require(r.head.functor() == p.predicate && r.head.arity() == p.arity,
            ErrorKind::InvalidProgram,
            "head of " + desc + " does not define " + p.predicate.str() + "/" +
                std::to_string(p.arity));
    if (r.recursive()) {
      ++recursive_seen;
      require(recursive_seen == 1, ErrorKind::MultipleRecursiveRules,
              desc + " is a second recursive rule");
      require(i == 0, ErrorKind::InvalidProgram,
              "the recursive rule must come first");
      require(r.body_rec->is_compound() &&
                  r.body_rec->functor() == r.head.functor() &&
                  r.body_rec->arity() == r.head.arity(),
              ErrorKind::NonLinearRecursion,
              "recursive call in " + desc + " does not match the head");
      // Only recursive-rule templates are transformed, so only they must
      // keep all structure in the guard.
      std::unordered_set<VarId> seen;
      for (std::size_t a = 0; a < r.head.arity(); ++a) {
        const Term& arg = r.head.arg(a);
        require(arg.is_var(), ErrorKind::HeadNotVariables,
                "head argument " + std::to_string(a + 1) + " of " + desc +
                    " is not a variable");
        require(seen.insert(arg.var_id()).second, ErrorKind::HeadNotVariables,
                "head arguments of " + desc + " are not distinct");
      }
    }
    check_builtin_goals(r.guard, "guard", desc);
    check_builtin_goals(r.body_pre, "body", desc);
    check_builtin_goals(r.body_post, "body", desc);
  }
  require(p.rules.front().recursive(), ErrorKind::InvalidProgram,
          "the first rule must be the recursive rule");
}

bool try_validate_program(const Program& p, std::string* diagnostic) {
  try {
    validate_program(p);
    return true;
  } catch (const EngineError& e) {
    if (diagnostic != nullptr) *diagnostic = e.what();
    return false;
  }
}

Rule rename_rule(const Rule& r, VarGen& gen) {
  std::unordered_map<VarId, VarId> mapping;
  Rule out;
  out.name = r.name;
  out.head = rename_apart(r.head, gen, mapping);
  out.guard.reserve(r.guard.size());
  for (const Term& g : r.guard) out.guard.push_back(rename_apart(g, gen, mapping));
  out.body_pre.reserve(r.body_pre.size());
  for (const Term& g : r.body_pre)
    out.body_pre.push_back(rename_apart(g, gen, mapping));
  if (r.body_rec) out.body_rec = rename_apart(*r.body_rec, gen, mapping);
  out.body_post.reserve(r.body_post.size());
  for (const Term& g : r.body_post)
    out.body_post.push_back(rename_apart(g, gen, mapping));
  return out;
}

bool alpha_equal(const Rule& a, const Rule& b) {
  if (a.guard.size() != b.guard.size() ||
      a.body_pre.size() != b.body_pre.size() ||
      a.body_rec.has_value() != b.body_rec.has_value() ||
      a.body_post.size() != b.body_post.size())
    return false;
  std::unordered_map<VarId, VarId> fwd;
  std::unordered_map<VarId, VarId> bwd;
  if (!alpha_equal(a.head, b.head, fwd, bwd)) return false;
  for (std::size_t i = 0; i < a.guard.size(); ++i)
    if (!alpha_equal(a.guard[i], b.guard[i], fwd, bwd)) return false;
  for (std::size_t i = 0; i < a.body_pre.size(); ++i)
    if (!alpha_equal(a.body_pre[i], b.body_pre[i], fwd, bwd)) return false;
  if (a.body_rec && !alpha_equal(*a.body_rec, *b.body_rec, fwd, bwd))
    return false;
  for (std::size_t i = 0; i < a.body_post.size(); ++i)
    if (!alpha_equal(a.body_post[i], b.body_post[i], fwd, bwd)) return false;
  return true;
}

}  // namespace rru
