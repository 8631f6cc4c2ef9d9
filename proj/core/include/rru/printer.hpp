#pragma once

#include <string>
#include <unordered_map>

#include "rru/rule.hpp"
#include "rru/term.hpp"

namespace rru {

/// Assigns display names (A, B, ..., Z, A1, B1, ...) to variables in order
/// of first appearance. One namer per printed rule or goal keeps the paper's
/// naming style.
class VarNamer {
 public:
  const std::string& name_for(VarId v);

 private:
  std::unordered_map<VarId, std::string> names_;
  std::size_t next_ = 0;
};

/// Prints a term with operator and list sugar. The output reparses to an
/// alpha-equivalent term.
std::string to_string(const Term& t);
std::string to_string(const Term& t, VarNamer& namer);

/// Prints "head <=> guard | body." with the body padded to the three
/// conjuncts (pre, recursive call, post); empty conjuncts print as `true`.
std::string to_string(const Rule& r);

}  // namespace rru
