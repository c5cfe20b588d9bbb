#include "refstate/subst.hpp"

namespace refstate {

SubstLit apply_substitution(const Substitution &s, Lit l) {
  auto t = s.get(l.var);
  if (!t) return SubstLit{false, 0, l};
  if (std::holds_alternative<Substitution::Constant>(*t)) {
    int c = std::get<Substitution::Constant>(*t).value;
    // x^b under x := c evaluates to 1 iff c == b.
    return SubstLit{true, c == l.pol ? 1 : 0, Lit{}};
  }
  Lit target = std::get<Lit>(*t);
  // x^1 |-> target, x^0 |-> complement of target.
  return SubstLit{false, 0, l.pol == 1 ? target : negate(target)};
}

std::optional<Clause> apply_substitution(const Substitution &s,
                                         const Clause &c) {
  std::vector<Lit> out;
  out.reserve(c.size());
  for (const Lit &l : c.lits()) {
    SubstLit img = apply_substitution(s, l);
    if (img.is_const) {
      if (img.const_value == 1) return std::nullopt;
      continue;  // constant 0 literal disappears
    }
    out.push_back(img.lit);
  }
  return Clause(std::move(out));
}

Cnf apply_substitution(const Substitution &s, const Cnf &f,
                       Var num_vars_after) {
  Cnf out;
  out.num_vars = num_vars_after;
  for (const Clause &c : f.clauses) {
    auto img = apply_substitution(s, c);
    if (img) out.add(std::move(*img));
  }
  return out;
}

Cnf drop_tautologies(const Cnf &f) {
  Cnf out;
  out.num_vars = f.num_vars;
  for (const Clause &c : f.clauses)
    if (!is_tautological(c)) out.add(c);
  return out;
}

}  // namespace refstate
