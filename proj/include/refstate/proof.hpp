#ifndef REFSTATE_PROOF_HPP
#define REFSTATE_PROOF_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "refstate/cnf.hpp"
#include "refstate/subst.hpp"

namespace refstate {

// One derivation step with an explicit justification. Textbook derivations
// are bare clause sequences with an existential side condition; carrying
// the justification makes checking linear and reports precise.
struct ResStep {
  enum class Kind {
    input_weakening,  // clause is a superset of input clause `m`
    resolvent,        // clause is a superset of resolve(steps[v], steps[w], pivot)
    step_weakening,   // clause is a superset of steps[u]
  };

  Clause clause;
  Kind kind = Kind::input_weakening;
  std::size_t m = 0;      // input clause index, 1-based (input_weakening)
  std::size_t v = 0;      // premise step indices, 1-based (resolvent)
  std::size_t w = 0;
  Var pivot = 0;          // resolvent pivot
  std::size_t u = 0;      // source step, 1-based (step_weakening)

  static ResStep input(Clause c, std::size_t m);
  static ResStep res(Clause c, std::size_t v, std::size_t w, Var pivot);
  static ResStep weaken(Clause c, std::size_t u);
};

struct ResolutionProof {
  std::vector<ResStep> steps;

  std::size_t length() const { return steps.size(); }
  const Clause &clause(std::size_t idx1) const { return steps[idx1 - 1].clause; }
};

struct CheckResult {
  bool ok = true;
  std::size_t step = 0;  // 1-based index of the offending step
  std::string reason;

  static CheckResult good() { return {}; }
  static CheckResult bad(std::size_t step, std::string reason) {
    return {false, step, std::move(reason)};
  }
};

std::ostream &operator<<(std::ostream &os, const CheckResult &r);

// Verifies every justification against `f`; when `expect_refutation`, the
// final clause must be empty.
CheckResult check_resolution(const Cnf &f, const ResolutionProof &pi,
                             bool expect_refutation);

// Per-step heights per the longest premise-chain definition: input steps
// have height 1, a resolvent is one above its higher premise, and a
// weakening step inherits the height of its source (it is not a
// resolution-rule application).
std::vector<std::size_t> step_heights(const ResolutionProof &pi);
std::size_t height(const ResolutionProof &pi);

struct RepairFailure : std::logic_error {
  explicit RepairFailure(const std::string &what) : std::logic_error(what) {}
};

// Pi restricted by sigma, with justifications repaired so the result checks
// against restrict_cnf(f, sigma). Clauses satisfied by sigma are dropped;
// each survivor is re-justified by, in order: input weakening against the
// restricted CNF, the original resolvent if its pivot survives, or a
// weakening of a surviving premise.
ResolutionProof restrict_proof(const Cnf &f, const ResolutionProof &pi,
                               const PartialAssignment &sigma);

// Same repair machinery for substitutions mapping variables to constants or
// literals. Steps whose clause becomes tautological are removed; a step that
// used such a premise is a weakening of the other premise.
ResolutionProof substitute_proof(const Cnf &f, const ResolutionProof &pi,
                                 const Substitution &subst);

// Text format, one step per line:
//   "<idx> <lits...> 0 I <m>"
//   "<idx> <lits...> 0 R <v> <w> <pivot>"
//   "<idx> <lits...> 0 W <u>"
void emit_proof(const ResolutionProof &pi, std::ostream &os);
std::string emit_proof(const ResolutionProof &pi);
ResolutionProof parse_proof(std::istream &in);
ResolutionProof parse_proof(const std::string &text);

}  // namespace refstate

#endif
