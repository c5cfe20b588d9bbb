#ifndef REFSTATE_SUBST_HPP
#define REFSTATE_SUBST_HPP

#include <map>
#include <optional>
#include <variant>

#include "refstate/cnf.hpp"

namespace refstate {

// Maps variables to constants or literals of a base formula. Targets never
// mention substituted variables, so application is a single pass.
class Substitution {
 public:
  struct Constant {
    int value;
  };
  using Target = std::variant<Constant, Lit>;

  void set_constant(Var v, int value) { map_[v] = Target{Constant{value}}; }
  void set_literal(Var v, Lit l) { map_[v] = Target{l}; }

  std::optional<Target> get(Var v) const {
    auto it = map_.find(v);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  bool defined(Var v) const { return map_.count(v) != 0; }
  std::size_t size() const { return map_.size(); }
  const std::map<Var, Target> &entries() const { return map_; }

 private:
  std::map<Var, Target> map_;
};

// Image of a literal: a literal, or a constant 0/1.
struct SubstLit {
  bool is_const = false;
  int const_value = 0;
  Lit lit;
};

SubstLit apply_substitution(const Substitution &s, Lit l);

// Clause image; empty optional when some literal maps to constant 1.
std::optional<Clause> apply_substitution(const Substitution &s,
                                         const Clause &c);

// CNF image over `num_vars_after` variables; satisfied clauses removed,
// tautologies kept verbatim (drop them separately when wanted).
Cnf apply_substitution(const Substitution &s, const Cnf &f,
                       Var num_vars_after);

Cnf drop_tautologies(const Cnf &f);

}  // namespace refstate

#endif
